#include "precut/parking.hpp"

#include "precut/error.hpp"

namespace precut {

void validate(const Filtration& f) {
    if (f.chain.empty()) throw Error(ErrorCode::NotExhaustive, "empty chain");
    if (f.chain.front() != 0) throw Error(ErrorCode::InvalidInput, "chain must start with the empty set");
    for (std::size_t i = 1; i < f.chain.size(); ++i)
        if (f.chain[i - 1] & ~f.chain[i]) throw Error(ErrorCode::NotNested, "chain is not nested at index " + std::to_string(i));
    if (f.chain.back() != full_mask(f.n)) throw Error(ErrorCode::NotExhaustive, "chain does not reach the whole ground");
}

bool is_parking(const Filtration& f) {
    if (static_cast<int>(f.chain.size()) != f.n + 1) return false;
    for (int t = 0; t <= f.n; ++t)
        if (popcount(f.chain[t]) < t) return false;
    return true;
}

std::vector<int> dilation_sequence(const Filtration& f) {
    validate(f);
    std::vector<int> p{0};
    for (int t = 1; t <= f.n; ++t) {
        int q = p.back() + 1;
        while (popcount(f.at(q)) < t) ++q;
        p.push_back(q);
    }
    return p;
}

Filtration parkize(const Filtration& f) {
    Filtration out{f.n, {}};
    for (int q : dilation_sequence(f)) out.chain.push_back(f.at(q));
    return out;
}

std::vector<int> break_points(const Filtration& f) {
    std::vector<int> out;
    const auto p = dilation_sequence(f);
    for (int b = 0; b <= f.n; ++b)
        if (popcount(f.at(p[b])) == b) out.push_back(b);
    return out;
}

Preorder filtration_preorder(const Filtration& f) {
    const auto p = dilation_sequence(f);
    std::vector<Mask> blocks;
    Mask below = 0;
    for (int b : break_points(f)) {
        if (b == 0) continue;
        Mask here = f.at(p[b]);
        blocks.push_back(here & ~below);
        below = here;
    }
    return Preorder::total_preorder(blocks);
}

Filtration restrict_filtration(const Filtration& f, Mask u) {
    validate(f);
    Filtration g{popcount(u), {}};
    for (Mask x : f.chain) g.chain.push_back(compress(x & u, u));
    return parkize(g);
}

namespace {

void require_break_point(const Filtration& f, int b) {
    if (b < 0 || b > f.n || popcount(f.at(dilation_sequence(f)[b])) != b)
        throw Error(ErrorCode::NotBreakPoint, std::to_string(b) + " is not a break point");
}

}  // namespace

Filtration slice_below(const Filtration& f, int b) {
    require_break_point(f, b);
    const Filtration pf = parkize(f);
    const Mask xb = pf.chain[b];
    Filtration out{b, {}};
    for (int t = 0; t <= b; ++t) out.chain.push_back(compress(pf.chain[t], xb));
    return out;
}

Filtration slice_above(const Filtration& f, int b) {
    require_break_point(f, b);
    const Filtration pf = parkize(f);
    const Mask xb = pf.chain[b];
    const Mask rest = full_mask(f.n) & ~xb;
    Filtration out{f.n - b, {}};
    for (int t = 0; t <= f.n - b; ++t) out.chain.push_back(compress(pf.chain[b + t] & ~xb, rest));
    return out;
}

namespace {

Filtration level_sets(const std::vector<int>& a) {
    const int n = static_cast<int>(a.size());
    Filtration f{n, std::vector<Mask>(n + 1, 0)};
    for (int t = 0; t <= n; ++t)
        for (int x = 0; x < n; ++x)
            if (a[x] <= t) f.chain[t] |= Mask(1) << x;
    return f;
}

}  // namespace

Filtration filtration_of_parking_function(const std::vector<int>& a) {
    for (int v : a)
        if (v < 1 || v > static_cast<int>(a.size())) throw Error(ErrorCode::InvalidInput, "parking function values must lie in 1..n");
    Filtration f = level_sets(a);
    if (!is_parking(f)) throw Error(ErrorCode::InvalidInput, "not a parking function");
    return f;
}

std::vector<Filtration> enumerate_parking_filtrations(int n) {
    std::vector<Filtration> out;
    std::vector<int> a(n, 1);
    while (true) {
        Filtration f = level_sets(a);
        if (is_parking(f)) out.push_back(f);
        int i = 0;
        while (i < n && a[i] == n) a[i++] = 1;
        if (i >= n) break;
        ++a[i];
    }
    return out;
}

Filtration relabel(const Filtration& f, const std::vector<int>& image) {
    Filtration g{f.n, {}};
    for (Mask x : f.chain) {
        Mask y = 0;
        for (int p : positions(x)) y |= Mask(1) << image[p];
        g.chain.push_back(y);
    }
    return g;
}

}  // namespace precut
