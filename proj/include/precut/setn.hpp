#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace precut {

using Natural = boost::multiprecision::cpp_int;

class FiniteSet {
public:
    FiniteSet() = default;
    explicit FiniteSet(std::vector<std::string> labels);
    /// The set {"0", ..., "n-1"}.
    static FiniteSet range(int n);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[i]; }
    /// Position of a label; throws UnknownLabel.
    int index(const std::string& label) const;

    friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

private:
    std::vector<std::string> labels_;
};

class Multimap {
public:
    Multimap() = default;
    /// Zero multimap.
    Multimap(FiniteSet source, FiniteSet target);
    Multimap(FiniteSet source, FiniteSet target, std::vector<std::vector<Natural>> coeff);
    static Multimap identity(const FiniteSet& set);

    const FiniteSet& source() const { return source_; }
    const FiniteSet& target() const { return target_; }
    const Natural& at(int x, int y) const { return coeff_[x][y]; }
    void set(int x, int y, Natural value) { coeff_[x][y] = std::move(value); }
    const std::vector<std::vector<Natural>>& coeff() const { return coeff_; }
    Natural row_sum(int x) const;
    /// Support of row x, as target indices.
    std::vector<int> row_support(int x) const;
    std::vector<int> column_support(int y) const;

    friend bool operator==(const Multimap&, const Multimap&) = default;

private:
    FiniteSet source_;
    FiniteSet target_;
    std::vector<std::vector<Natural>> coeff_;
};

struct MapClass {
    bool ordinary = false;
    bool promap = false;
    bool partial_map = false;
    bool general() const { return !promap && !partial_map; }
};

struct Square {
    Multimap alpha;  // X -> Y
    Multimap beta;   // X -> Z
    Multimap gamma;  // Y -> W
    Multimap delta;  // Z -> W

    /// Throws DimensionMismatch unless the four endpoints match up.
    void validate() const;
};

struct SquareCheck {
    bool passed = true;
    nlohmann::json witness;
};

Multimap compose(const Multimap& f, const Multimap& g);
Multimap dual(const Multimap& f);
MapClass classify(const Multimap& f);
bool is_isomorphism(const Multimap& f);

SquareCheck check_dual_commutation(const Square& sq);
SquareCheck check_partial_pullback(const Square& sq);

nlohmann::json to_json(const FiniteSet& set);
nlohmann::json to_json(const Multimap& f);
nlohmann::json to_json(const MapClass& c);
Multimap multimap_from_json(const nlohmann::json& j);
Square square_from_json(const nlohmann::json& j);

}  // namespace precut
