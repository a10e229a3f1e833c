#include "precut/preorder.hpp"

#include "precut/error.hpp"

#include <algorithm>
#include <numeric>

namespace precut {

namespace {

void require_same_ground(const Preorder& p, const Preorder& q) {
    if (p.size() != q.size()) throw Error(ErrorCode::GroundMismatch, "preorders live on different grounds");
}

void close_rows(std::array<Mask, kMaxPoints>& up, int n) {
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (has(up[i], k)) up[i] |= up[k];
}

}  // namespace

Preorder Preorder::discrete(int n) {
    Preorder p;
    p.n_ = n;
    for (int i = 0; i < n; ++i) p.up_[i] = Mask(1) << i;
    return p;
}

Preorder Preorder::coarse(int n) {
    Preorder p;
    p.n_ = n;
    for (int i = 0; i < n; ++i) p.up_[i] = full_mask(n);
    return p;
}

Preorder Preorder::from_rows(std::span<const Mask> up) {
    if (up.size() > static_cast<std::size_t>(kMaxPoints)) throw Error(ErrorCode::CapExceeded, "too many points");
    Preorder p;
    p.n_ = static_cast<int>(up.size());
    for (int i = 0; i < p.n_; ++i) {
        if (up[i] & ~full_mask(p.n_)) throw Error(ErrorCode::InvalidInput, "row mentions points outside the ground");
        if (!has(up[i], i)) throw Error(ErrorCode::InvalidInput, "relation is not reflexive");
        p.up_[i] = up[i];
    }
    for (int i = 0; i < p.n_; ++i)
        for (Mask m = p.up_[i]; m; m &= m - 1)
            if ((p.up_[lowest(m)] & ~p.up_[i]) != 0) throw Error(ErrorCode::InvalidInput, "relation is not transitive");
    return p;
}

Preorder Preorder::closure(int n, std::span<const std::pair<int, int>> pairs) {
    Preorder p = discrete(n);
    for (auto [x, y] : pairs) {
        if (x < 0 || y < 0 || x >= n || y >= n) throw Error(ErrorCode::UnknownLabel, "pair outside the ground");
        p.up_[x] |= Mask(1) << y;
    }
    close_rows(p.up_, n);
    return p;
}

Preorder Preorder::total_order(std::span<const int> sequence) {
    Preorder p;
    p.n_ = static_cast<int>(sequence.size());
    Mask above = 0;
    for (int i = p.n_ - 1; i >= 0; --i) {
        above |= Mask(1) << sequence[i];
        p.up_[sequence[i]] = above;
    }
    if (above != full_mask(p.n_)) throw Error(ErrorCode::InvalidInput, "sequence is not a permutation");
    return p;
}

Preorder Preorder::total_preorder(std::span<const Mask> blocks) {
    Preorder p;
    Mask all = 0;
    for (Mask b : blocks) {
        if (b == 0 || (all & b)) throw Error(ErrorCode::InvalidInput, "blocks must be nonempty and disjoint");
        all |= b;
    }
    p.n_ = popcount(all);
    if (all != full_mask(p.n_)) throw Error(ErrorCode::InvalidInput, "blocks do not cover [n]");
    Mask above = 0;
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        above |= *it;
        for (Mask m = *it; m; m &= m - 1) p.up_[lowest(m)] = above;
    }
    return p;
}

Mask Preorder::down_set(int x) const {
    Mask d = 0;
    for (int i = 0; i < n_; ++i)
        if (has(up_[i], x)) d |= Mask(1) << i;
    return d;
}

Preorder meet(const Preorder& p, const Preorder& q) {
    require_same_ground(p, q);
    std::array<Mask, kMaxPoints> rows{};
    for (int i = 0; i < p.size(); ++i) rows[i] = p.up_set(i) & q.up_set(i);
    return Preorder::from_rows({rows.data(), static_cast<std::size_t>(p.size())});
}

Preorder join(const Preorder& p, const Preorder& q) {
    require_same_ground(p, q);
    std::array<Mask, kMaxPoints> rows{};
    for (int i = 0; i < p.size(); ++i) rows[i] = p.up_set(i) | q.up_set(i);
    close_rows(rows, p.size());
    return Preorder::from_rows({rows.data(), static_cast<std::size_t>(p.size())});
}

Preorder opposite(const Preorder& p) {
    std::array<Mask, kMaxPoints> rows{};
    for (int i = 0; i < p.size(); ++i) rows[i] = p.down_set(i);
    return Preorder::from_rows({rows.data(), static_cast<std::size_t>(p.size())});
}

bool precedes(const Preorder& p, const Preorder& q) {
    require_same_ground(p, q);
    for (int i = 0; i < p.size(); ++i)
        if (p.up_set(i) & ~q.up_set(i)) return false;
    return true;
}

std::vector<Mask> bubbles(const Preorder& p) {
    std::vector<Mask> out;
    Mask seen = 0;
    for (int i = 0; i < p.size(); ++i) {
        if (has(seen, i)) continue;
        Mask b = p.up_set(i) & p.down_set(i);
        seen |= b;
        out.push_back(b);
    }
    return out;
}

Preorder bubble_partition(const Preorder& p) { return meet(p, opposite(p)); }

Preorder component_partition(const Preorder& p) { return join(p, opposite(p)); }

bool is_cut(const Preorder& p, Mask down) {
    for (Mask m = down & p.ground(); m; m &= m - 1)
        if (p.down_set(lowest(m)) & ~down) return false;
    return true;
}

std::vector<Cut> cuts(const Preorder& p) {
    std::vector<Cut> out;
    const Mask g = p.ground();
    for (Mask d = 0;; ++d) {
        if (is_cut(p, d)) out.push_back({d, g & ~d});
        if (d == g) break;
    }
    return out;
}

Preorder restrict(const Preorder& p, Mask y) {
    std::array<Mask, kMaxPoints> rows{};
    int k = 0;
    for (Mask m = y; m; m &= m - 1) rows[k++] = compress(p.up_set(lowest(m)), y);
    return Preorder::from_rows({rows.data(), static_cast<std::size_t>(k)});
}

Preorder embed(const Preorder& p, Mask within, int n) {
    std::array<Mask, kMaxPoints> rows{};
    for (int i = 0; i < n; ++i) rows[i] = Mask(1) << i;
    int k = 0;
    for (Mask m = within; m; m &= m - 1) rows[lowest(m)] = expand(p.up_set(k++), within);
    return Preorder::from_rows({rows.data(), static_cast<std::size_t>(n)});
}

bool is_refinement(const Preorder& p, const Preorder& q) {
    require_same_ground(p, q);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
            if (p.same_bubble(a, b) && !q.same_bubble(a, b)) return false;
            if (!q.same_bubble(a, b) && q.less(a, b) != p.less(a, b)) return false;
        }
    return true;
}

bool is_bubble_refinement(const Preorder& p, const Preorder& q) {
    require_same_ground(p, q);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
            if (p.same_bubble(a, b) && !q.same_bubble(a, b)) return false;
            if (q.less(a, b) != p.less(a, b)) return false;
        }
    return true;
}

Preorder minimal_total_refinement(const Preorder& p) {
    const int n = p.size();
    // Link points that are not strictly comparable; the linked classes become the bubbles.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!p.less(a, b) && !p.less(b, a)) parent[find(a)] = find(b);
    std::vector<Mask> blocks;
    for (int a = 0; a < n; ++a) {
        if (find(a) != a) continue;
        Mask b = 0;
        for (int x = 0; x < n; ++x)
            if (find(x) == a) b |= Mask(1) << x;
        blocks.push_back(b);
    }
    std::sort(blocks.begin(), blocks.end(),
              [&](Mask x, Mask y) { return p.less(lowest(x), lowest(y)); });
    return Preorder::total_preorder(blocks);
}

bool is_total_preorder(const Preorder& p) {
    for (int a = 0; a < p.size(); ++a)
        for (int b = a + 1; b < p.size(); ++b)
            if (!p.comparable(a, b)) return false;
    return true;
}

bool is_poset(const Preorder& p) {
    for (int a = 0; a < p.size(); ++a)
        if ((p.up_set(a) & p.down_set(a)) != (Mask(1) << a)) return false;
    return true;
}

bool is_total_order(const Preorder& p) { return is_total_preorder(p) && is_poset(p); }

bool is_partition_order(const Preorder& p) { return p == opposite(p); }

bool is_discrete(const Preorder& p) { return p == Preorder::discrete(p.size()); }

bool is_coarse(const Preorder& p) { return p == Preorder::coarse(p.size()); }

std::vector<Mask> ordered_bubbles(const Preorder& p) {
    if (!is_total_preorder(p)) throw Error(ErrorCode::NotTotalPreorder, "expected a total preorder");
    std::vector<Mask> out = bubbles(p);
    std::sort(out.begin(), out.end(), [&](Mask x, Mask y) { return p.less(lowest(x), lowest(y)); });
    return out;
}

std::vector<Preorder> enumerate_preorders(int n, int cap) {
    if (n > cap) throw Error(ErrorCode::CapExceeded, "preorder enumeration above cap " + std::to_string(cap));
    std::vector<Preorder> level{Preorder::discrete(0)};
    for (int m = 0; m < n; ++m) {
        std::vector<Preorder> next;
        const Mask g = full_mask(m);
        const Mask fresh = Mask(1) << m;
        for (const Preorder& p : level) {
            std::vector<Mask> downs, ups;
            for (Mask d = 0;; ++d) {
                if (is_cut(p, d)) downs.push_back(d);
                if (d == g) break;
            }
            for (Mask d : downs) ups.push_back(g & ~d);
            for (Mask d : downs)
                for (Mask u : ups) {
                    bool ok = true;
                    for (Mask x = d; x && ok; x &= x - 1)
                        if (u & ~p.up_set(lowest(x))) ok = false;
                    if (!ok) continue;
                    std::array<Mask, kMaxPoints> rows{};
                    for (int i = 0; i < m; ++i) rows[i] = p.up_set(i) | (has(d, i) ? (fresh | u) : 0);
                    rows[m] = fresh | u;
                    next.push_back(Preorder::from_rows({rows.data(), static_cast<std::size_t>(m + 1)}));
                }
        }
        level = std::move(next);
    }
    return level;
}

std::vector<Preorder> enumerate_total_preorders(int n) {
    std::vector<Preorder> out;
    std::vector<int> word(n, 0);
    while (true) {
        int k = n == 0 ? 0 : *std::max_element(word.begin(), word.end()) + 1;
        std::vector<Mask> blocks(k, 0);
        for (int i = 0; i < n; ++i) blocks[word[i]] |= Mask(1) << i;
        if (std::none_of(blocks.begin(), blocks.end(), [](Mask b) { return b == 0; }))
            out.push_back(Preorder::total_preorder(blocks));
        int i = 0;
        while (i < n && word[i] == n - 1) word[i++] = 0;
        if (i == n) break;
        ++word[i];
    }
    return out;
}

std::vector<Preorder> enumerate_partition_orders(int n) {
    std::vector<Preorder> out;
    std::vector<int> rgs(n, 0);
    auto emit = [&] {
        std::array<Mask, kMaxPoints> rows{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rgs[i] == rgs[j]) rows[i] |= Mask(1) << j;
        out.push_back(Preorder::from_rows({rows.data(), static_cast<std::size_t>(n)}));
    };
    auto rec = [&](auto&& self, int i, int blocks) -> void {
        if (i == n) {
            emit();
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            rgs[i] = b;
            self(self, i + 1, std::max(blocks, b + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
}

std::vector<int> permutation_of_pair(const Preorder& t1, const Preorder& t2) {
    if (!is_total_order(t1) || !is_total_order(t2)) throw Error(ErrorCode::InvalidInput, "expected total orders");
    require_same_ground(t1, t2);
    const int n = t1.size();
    std::vector<int> sigma(n);
    for (int x = 0; x < n; ++x) sigma[n - popcount(t1.up_set(x))] = n - popcount(t2.up_set(x));
    return sigma;
}

std::vector<int> global_descents(std::span<const int> sigma) {
    std::vector<int> out;
    const int n = static_cast<int>(sigma.size());
    for (int k = 1; k < n; ++k) {
        int lo = *std::min_element(sigma.begin(), sigma.begin() + k);
        int hi = *std::max_element(sigma.begin() + k, sigma.end());
        if (lo > hi) out.push_back(k);
    }
    return out;
}

std::vector<int> global_descents(const Preorder& t1, const Preorder& t2) {
    auto sigma = permutation_of_pair(t1, t2);
    return global_descents(sigma);
}

Preorder descent_preorder(const Preorder& t1, const Preorder& t2) { return join(t1, opposite(t2)); }

nlohmann::json to_json(const Preorder& p) {
    return to_json(LabeledPreorder{FiniteSet::range(p.size()), p});
}

nlohmann::json to_json(const LabeledPreorder& p) {
    nlohmann::json rel = nlohmann::json::array();
    for (int x = 0; x < p.order.size(); ++x) {
        nlohmann::json row = nlohmann::json::array();
        for (int y = 0; y < p.order.size(); ++y) row.push_back(p.order.leq(x, y));
        rel.push_back(row);
    }
    return {{"ground", to_json(p.ground)}, {"rel", rel}};
}

LabeledPreorder labeled_preorder_from_json(const nlohmann::json& j) {
    std::vector<std::string> labels;
    for (const auto& l : j.at("ground")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    FiniteSet ground(std::move(labels));
    const auto& rel = j.at("rel");
    if (static_cast<int>(rel.size()) != ground.size()) throw Error(ErrorCode::DimensionMismatch, "rel size differs from ground");
    if (ground.size() > kMaxPoints) throw Error(ErrorCode::CapExceeded, "too many points");
    std::array<Mask, kMaxPoints> rows{};
    for (int x = 0; x < ground.size(); ++x) {
        if (static_cast<int>(rel[x].size()) != ground.size()) throw Error(ErrorCode::DimensionMismatch, "rel row size differs from ground");
        for (int y = 0; y < ground.size(); ++y)
            if (rel[x][y].get<bool>()) rows[x] |= Mask(1) << y;
    }
    return {ground, Preorder::from_rows({rows.data(), static_cast<std::size_t>(ground.size())})};
}

Preorder preorder_from_json(const nlohmann::json& j) { return labeled_preorder_from_json(j).order; }

}  // namespace precut
