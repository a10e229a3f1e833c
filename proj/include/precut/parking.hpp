#pragma once

#include "precut/bits.hpp"
#include "precut/preorder.hpp"

#include <vector>

namespace precut {

/// Nested chain X_0 ⊆ X_1 ⊆ ... ⊆ X_m of subsets of [n], with X_0 = ∅.
/// Indices past m repeat the last set.
struct Filtration {
    int n = 0;
    std::vector<Mask> chain;

    Mask at(int t) const { return t < static_cast<int>(chain.size()) ? chain[t] : chain.back(); }
    friend bool operator==(const Filtration&, const Filtration&) = default;
};

/// Throws NotNested / NotExhaustive / InvalidInput for malformed chains.
void validate(const Filtration& f);
bool is_parking(const Filtration& f);

std::vector<int> dilation_sequence(const Filtration& f);
Filtration parkize(const Filtration& f);
std::vector<int> break_points(const Filtration& f);
Preorder filtration_preorder(const Filtration& f);

/// Parkization of {U ∩ X_t}, renumbered positionally on U.
Filtration restrict_filtration(const Filtration& f, Mask u);
/// X_0 ⊆ ... ⊆ X_b on X_b; throws NotBreakPoint.
Filtration slice_below(const Filtration& f, int b);
/// X_{b+t} \ X_b on X \ X_b; throws NotBreakPoint.
Filtration slice_above(const Filtration& f, int b);
/// The parking filtration {x : a(x) <= t} of a parking function a with values 1..n.
Filtration filtration_of_parking_function(const std::vector<int>& a);
/// All parking filtrations of [n].
std::vector<Filtration> enumerate_parking_filtrations(int n);
Filtration relabel(const Filtration& f, const std::vector<int>& image);

}  // namespace precut
