#pragma once

#include "precut/species.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace precut {

using Coeff = std::int64_t;
/// Sparse combination of classes: class index -> coefficient.
using Combination = std::map<int, Coeff>;
/// Sparse combination of class pairs.
using TensorCombination = std::map<std::pair<int, int>, Coeff>;

struct Canonical {
    Element form;
    /// relabel(s, witness) == form.
    std::vector<int> witness;
};

/// Least relabeling of s under the Element order.
Canonical canonical_form(const Species& S, const Element& s);

struct OrbitClass {
    std::string id;
    int degree = 0;
    Element rep;
    std::string label;
    nlohmann::json repr;
};

/// Orbit classes of S[0..N] ordered by degree, then representative.
struct ClassIndex {
    std::vector<OrbitClass> classes;
    /// of_element[n][k] is the class of S.elements(n)[k].
    std::vector<std::vector<int>> of_element;
    /// Representative positions in S.elements(n), per class.
    std::vector<std::uint32_t> rep_position;

    int class_of(const Species& S, const Element& e) const;
};

ClassIndex orbit_classes(const Species& S, int N);

struct FockTable {
    std::string instance;
    int delta = 1;
    int mu = 2;
    int N = 0;
    std::vector<OrbitClass> classes;
    /// (a, b) -> a·b, for deg a + deg b <= N.
    std::map<std::pair<int, int>, Combination> product;
    /// coproduct[c] = Δ(c).
    std::vector<TensorCombination> coproduct;

    int unit() const;
    std::vector<int> dimensions() const;
    /// Class by label (e.g. "3124"); -1 if absent.
    int find(const std::string& label) const;
    Combination multiply(const Combination& x, const Combination& y) const;
};

struct FockOptions {
    Projection delta = Projection::First;
    Projection mu = Projection::Second;
    int N = 3;
    /// Skip the intertwining precondition (negative-control experiments).
    bool force = false;
};

/// Throws NotIntertwined when the precondition fails and CapExceeded above the instance cap.
FockTable fock_tables(const Species& S, const FockOptions& options);

/// Reads a cached table from PRECUT_CACHE_DIR when present, otherwise computes and stores it.
FockTable cached_fock_tables(const Species& S, const FockOptions& options);

VerificationReport verify_hopf_axioms(const FockTable& table, int N);

FockTable graded_dual(const FockTable& table);

/// Degree-respecting bijection of classes (index in A -> index in B) matching all structure constants.
std::optional<std::vector<int>> check_isomorphism_by_constants(const FockTable& a, const FockTable& b, int N);

struct ChangeOfBasis {
    /// matrix[i] expresses class i of the first table in classes of the second.
    std::vector<Combination> matrix;
    bool unit_diagonal = false;
    bool triangular = false;
};

/// Searches a unit-diagonal 0/1 transition, pairing classes with equal ids on the diagonal.
std::optional<ChangeOfBasis> check_isomorphism_by_change_of_basis(const FockTable& a, const FockTable& b, int N);

/// Substitutes a transition into every structure constant up to degree N.
bool verify_change_of_basis(const FockTable& a, const FockTable& b, const ChangeOfBasis& phi, int N);

nlohmann::json to_json(const FockTable& table);
FockTable fock_table_from_json(const nlohmann::json& j);
std::string to_csv(const FockTable& table);
nlohmann::json to_json(const ChangeOfBasis& phi, const FockTable& a, const FockTable& b);

}  // namespace precut
