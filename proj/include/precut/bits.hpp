#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace precut {

// Subsets of a ground set [n] are bitmasks over positions 0..n-1.
using Mask = std::uint32_t;

constexpr int kMaxPoints = 16;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask full_mask(int n) { return n >= 32 ? ~Mask(0) : (Mask(1) << n) - 1; }

inline bool has(Mask m, int i) { return (m >> i) & 1u; }

inline int lowest(Mask m) { return std::countr_zero(m); }

/// Renumber the bits of `sub` by their rank inside `within` (a software pext).
inline Mask compress(Mask sub, Mask within) {
    Mask out = 0;
    int k = 0;
    for (Mask w = within; w; w &= w - 1, ++k)
        if (sub & (w & -w)) out |= Mask(1) << k;
    return out;
}

/// Inverse of compress: place bit k of `positional` at the k-th set bit of `within`.
inline Mask expand(Mask positional, Mask within) {
    Mask out = 0;
    int k = 0;
    for (Mask w = within; w; w &= w - 1, ++k)
        if (has(positional, k)) out |= w & -w;
    return out;
}

inline std::vector<int> positions(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(lowest(m));
    return out;
}

}  // namespace precut
