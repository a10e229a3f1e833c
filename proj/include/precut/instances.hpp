#pragma once

#include "precut/pairs.hpp"
#include "precut/parking.hpp"
#include "precut/species.hpp"

#include <string>
#include <vector>

namespace precut {

enum class PermVariant { F, M };
enum class ColoredVariant { Plain, BrokenDC, BrokenMono };

struct InstanceParams {
    int palette = 2;
    /// Avoidance preset applied on top of the base instance; empty for none.
    std::string avoid;
    /// Overrides the per-instance size cap when positive.
    int cap = 0;
};

SpeciesPtr make_colored(int palette, ColoredVariant variant = ColoredVariant::Plain, int cap = 0);
SpeciesPtr make_tensor(int palette, int cap = 0);
SpeciesPtr make_graphs(int cap = 0);
SpeciesPtr make_preorders(bool posets_only, int cap = 0);
SpeciesPtr make_permutations(PermVariant variant, int cap = 0);
SpeciesPtr make_parking_pairs(int cap = 0);
SpeciesPtr make_preorder_pairs(PairKind kind, int cap = 0);
SpeciesPtr make_packed_words(int cap = 0);

/// Names like "perm_m", "perm_m/213", or an alias such as "loday_ronco"; throws UnknownInstance.
SpeciesPtr build_instance(const std::string& name, const InstanceParams& params = {});
std::vector<std::string> instance_names();
std::vector<std::string> instance_aliases();

/// Pair (identity order, order with ranks sigma) encoding the permutation sigma (values 0..n-1).
Element permutation_element(const std::vector<int>& sigma);
/// Accepts one-line notation such as "3124".
Element permutation_element(const std::string& one_line);
std::vector<int> permutation_of(const Element& e);

Element preorder_element(const Preorder& p);
Preorder preorder_of(const Element& e);
Element preorder_pair_element(const Preorder& p, const Preorder& q);
std::pair<Preorder, Preorder> preorder_pair_of(const Element& e);
Element parking_pair_element(const Filtration& first, const Filtration& second);
std::pair<Filtration, Filtration> parking_pair_of(const Element& e);

}  // namespace precut
