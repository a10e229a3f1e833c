#pragma once

#include "precut/bits.hpp"
#include "precut/setn.hpp"

#include <array>
#include <compare>
#include <span>
#include <utility>
#include <vector>

namespace precut {

/// Preorder on the positional ground set [n]; row x holds {y : x <= y}.
class Preorder {
public:
    Preorder() = default;
    static Preorder discrete(int n);
    static Preorder coarse(int n);
    /// Validates reflexivity and transitivity.
    static Preorder from_rows(std::span<const Mask> up);
    /// Smallest preorder containing the pairs x <= y.
    static Preorder closure(int n, std::span<const std::pair<int, int>> pairs);
    /// Total order listing the points from least to greatest.
    static Preorder total_order(std::span<const int> sequence);
    /// Total preorder with the given blocks from least to greatest.
    static Preorder total_preorder(std::span<const Mask> blocks);

    int size() const { return n_; }
    Mask ground() const { return full_mask(n_); }
    bool leq(int x, int y) const { return has(up_[x], y); }
    bool less(int x, int y) const { return leq(x, y) && !leq(y, x); }
    bool same_bubble(int x, int y) const { return leq(x, y) && leq(y, x); }
    bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }
    Mask up_set(int x) const { return up_[x]; }
    Mask down_set(int x) const;
    std::span<const Mask> rows() const { return {up_.data(), static_cast<std::size_t>(n_)}; }

    friend bool operator==(const Preorder& a, const Preorder& b) { return a.n_ == b.n_ && a.up_ == b.up_; }
    friend std::strong_ordering operator<=>(const Preorder& a, const Preorder& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.up_ <=> b.up_;
    }

private:
    int n_ = 0;
    std::array<Mask, kMaxPoints> up_{};
};

struct Cut {
    Mask down = 0;
    Mask up = 0;
    friend bool operator==(const Cut&, const Cut&) = default;
};

Preorder meet(const Preorder& p, const Preorder& q);
Preorder join(const Preorder& p, const Preorder& q);
Preorder opposite(const Preorder& p);

/// P ⪯ Q: every relation of P holds in Q.
bool precedes(const Preorder& p, const Preorder& q);

std::vector<Mask> bubbles(const Preorder& p);
Preorder bubble_partition(const Preorder& p);
Preorder component_partition(const Preorder& p);

bool is_cut(const Preorder& p, Mask down);
/// All cuts, ordered by the down-set bitmask.
std::vector<Cut> cuts(const Preorder& p);

/// Induced preorder on Y, renumbered positionally.
Preorder restrict(const Preorder& p, Mask y);
/// Preorder on [n] whose restriction to the positions `within` is p; other points stay isolated.
Preorder embed(const Preorder& p, Mask within, int n);

bool is_refinement(const Preorder& p, const Preorder& q);
bool is_bubble_refinement(const Preorder& p, const Preorder& q);
Preorder minimal_total_refinement(const Preorder& p);

bool is_total_preorder(const Preorder& p);
bool is_total_order(const Preorder& p);
bool is_partition_order(const Preorder& p);
bool is_poset(const Preorder& p);
bool is_discrete(const Preorder& p);
bool is_coarse(const Preorder& p);

/// Bubbles of a total preorder from least to greatest; throws NotTotalPreorder.
std::vector<Mask> ordered_bubbles(const Preorder& p);

constexpr int kDefaultPreorderCap = 5;

/// Every preorder on [n], in a fixed order; throws CapExceeded for n > cap.
std::vector<Preorder> enumerate_preorders(int n, int cap = kDefaultPreorderCap);
/// Every total preorder on [n] (ordered set partitions).
std::vector<Preorder> enumerate_total_preorders(int n);
/// Every partition order on [n].
std::vector<Preorder> enumerate_partition_orders(int n);

/// sigma[i] = rank in t2 of the i-th smallest point of t1 (0-based).
std::vector<int> permutation_of_pair(const Preorder& t1, const Preorder& t2);
/// Positions k in 1..n-1 whose first k values are the k largest.
std::vector<int> global_descents(std::span<const int> sigma);
std::vector<int> global_descents(const Preorder& t1, const Preorder& t2);
Preorder descent_preorder(const Preorder& t1, const Preorder& t2);

struct LabeledPreorder {
    FiniteSet ground;
    Preorder order;
};

nlohmann::json to_json(const Preorder& p);
nlohmann::json to_json(const LabeledPreorder& p);
Preorder preorder_from_json(const nlohmann::json& j);
LabeledPreorder labeled_preorder_from_json(const nlohmann::json& j);

}  // namespace precut
