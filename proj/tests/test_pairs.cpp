#include "precut/error.hpp"
#include "precut/pairs.hpp"

#include <doctest.h>

#include <set>

using namespace precut;

namespace {

const PairKind kKinds[] = {PairKind::CC, PairKind::NC, PairKind::NN};

/// Reference predicates written out from the definitions of the three kinds.
bool member(PairKind kind, const Preorder& p, const Preorder& q) {
    const int n = p.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const bool p_inc = !p.leq(x, y) && !p.leq(y, x), q_inc = !q.leq(x, y) && !q.leq(y, x);
            const bool p_strict = p.leq(x, y) && !p.leq(y, x), q_strict = q.leq(x, y) && !q.leq(y, x);
            const bool p_eq = p.leq(x, y) && p.leq(y, x), q_eq = q.leq(x, y) && q.leq(y, x);
            bool ok = true;
            if (kind == PairKind::CC) ok = (!p_inc || q_eq) && (!q_inc || p_eq);
            if (kind == PairKind::NC) ok = (!q_inc || p_eq) && (!p_strict || q_eq);
            if (kind == PairKind::NN) ok = (!p_strict || q_eq) && (!q_strict || p_eq);
            if (!ok) return false;
        }
    return true;
}

bool inside_some(Mask b, const std::vector<Mask>& blocks) {
    for (Mask c : blocks)
        if ((b & ~c) == 0) return true;
    return false;
}

std::vector<Preorder> frame_candidates(PairKind kind, bool first, int n) {
    const bool total = first ? kind == PairKind::CC : kind != PairKind::NN;
    return total ? enumerate_total_preorders(n) : enumerate_partition_orders(n);
}

/// Frames with maximal refinable sets: every admissible bubble goes to B_1 or B_2.
std::vector<PairFrame> maximal_frames(PairKind kind, int n) {
    std::vector<PairFrame> out;
    for (const auto& a : frame_candidates(kind, true, n))
        for (const auto& b : frame_candidates(kind, false, n)) {
            const auto ba = bubbles(a), bb = bubbles(b);
            std::vector<Mask> c1, c2, shared;
            for (Mask x : ba)
                if (inside_some(x, bb)) c1.push_back(x);
            for (Mask x : bb)
                if (inside_some(x, ba)) c2.push_back(x);
            for (Mask x : c1)
                if (std::find(c2.begin(), c2.end(), x) != c2.end()) shared.push_back(x);
            for (Mask pick = 0; pick < (Mask(1) << shared.size()); ++pick) {
                PairFrame f{a, b, {}, {}};
                for (Mask x : c1) {
                    auto it = std::find(shared.begin(), shared.end(), x);
                    if (it == shared.end() || has(pick, static_cast<int>(it - shared.begin()))) f.refinable_first.push_back(x);
                }
                for (Mask x : c2) {
                    auto it = std::find(shared.begin(), shared.end(), x);
                    if (it == shared.end() || !has(pick, static_cast<int>(it - shared.begin()))) f.refinable_second.push_back(x);
                }
                out.push_back(f);
            }
        }
    return out;
}

}  // namespace

TEST_CASE("membership predicates match the definitions") {
    for (int n = 0; n <= 3; ++n) {
        const auto all = enumerate_preorders(n);
        for (const auto& p : all)
            for (const auto& q : all)
                for (PairKind k : kKinds) CHECK(satisfies(k, p, q) == member(k, p, q));
    }
}

TEST_CASE("small examples") {
    const Preorder d = Preorder::discrete(2);
    CHECK(satisfies(PairKind::NN, d, d));
    CHECK_FALSE(satisfies(PairKind::CC, d, d));
    for (const auto& t1 : enumerate_total_preorders(2))
        for (const auto& t2 : enumerate_total_preorders(2)) CHECK(satisfies(PairKind::CC, t1, t2));
    const int up[] = {0, 1};
    const Preorder t = Preorder::total_order(up);
    CHECK(classify_pair(t, d).cn);
    CHECK_FALSE(classify_pair(t, d).nc);
    const auto normal = normalize(PairKind::NC, t, d);
    REQUIRE(normal);
    CHECK(normal->swapped);
    CHECK(normal->p == d);
    CHECK_FALSE(normalize(PairKind::CC, t, d));
}

TEST_CASE("generated pairs are members (soundness)") {
    for (int n = 0; n <= 4; ++n) {
        const auto all = enumerate_preorders(n);
        for (PairKind k : kKinds) {
            long produced = 0;
            for (const auto& f : maximal_frames(k, n)) {
                REQUIRE_NOTHROW(validate_frame(k, f));
                std::vector<Preorder> firsts, seconds;
                for (const auto& p : all) {
                    if (is_refinement_along(p, f.first, f.refinable_first)) firsts.push_back(p);
                    if (is_refinement_along(p, f.second, f.refinable_second)) seconds.push_back(p);
                }
                for (const auto& p : firsts)
                    for (const auto& q : seconds) {
                        const auto pair = generate_pair(k, f, p, q);
                        if (!member(k, pair.p, pair.q)) FAIL_CHECK(pair_kind_name(k) << " generator left the kind on " << n << " points");
                        ++produced;
                    }
            }
            CHECK(produced > 0);
        }
    }
}

TEST_CASE("every member comes from a frame (surjectivity)") {
    for (int n = 0; n <= 4; ++n) {
        const auto all = enumerate_preorders(n);
        for (PairKind k : kKinds) {
            long members = 0;
            for (const auto& p : all)
                for (const auto& q : all) {
                    if (!member(k, p, q)) continue;
                    ++members;
                    const PairFrame f = reconstruct_frame(k, p, q);
                    const auto pair = generate_pair(k, f, p, q);
                    CHECK(pair.p == p);
                    CHECK(pair.q == q);
                }
            CHECK(members > 0);
        }
    }
}

TEST_CASE("kinds are closed under restriction") {
    const auto all = enumerate_preorders(4);
    for (const auto& p : all)
        for (const auto& q : all)
            for (PairKind k : kKinds) {
                if (!satisfies(k, p, q)) continue;
                for (Mask u = 0; u < 16; ++u) CHECK(satisfies(k, restrict(p, u), restrict(q, u)));
            }
}

TEST_CASE("frame violations") {
    const Preorder d = Preorder::discrete(2), c = Preorder::coarse(2);
    PairFrame f{c, c, {0b11}, {0b11}};
    CHECK_THROWS_AS(validate_frame(PairKind::CC, f), Error);
    f = PairFrame{d, c, {}, {}};
    CHECK_THROWS_AS(validate_frame(PairKind::CC, f), Error);
    CHECK_NOTHROW(validate_frame(PairKind::NC, f));
    f = PairFrame{c, c, {0b11}, {}};
    CHECK_THROWS_AS(generate_pair(PairKind::CC, f, c, d), Error);
    CHECK_NOTHROW(generate_pair(PairKind::CC, f, d, c));
}

TEST_CASE("the cc matrix is a complete invariant on 3 points") {
    const auto totals = enumerate_total_preorders(3);
    std::vector<std::vector<int>> perms;
    std::vector<int> s{0, 1, 2};
    do perms.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    auto image = [](const Preorder& p, const std::vector<int>& g) {
        std::vector<std::pair<int, int>> rel;
        for (int x = 0; x < p.size(); ++x)
            for (int y = 0; y < p.size(); ++y)
                if (p.leq(x, y)) rel.push_back({g[x], g[y]});
        return Preorder::closure(p.size(), rel);
    };
    for (const auto& a1 : totals)
        for (const auto& a2 : totals)
            for (const auto& b1 : totals)
                for (const auto& b2 : totals) {
                    bool iso = false;
                    for (const auto& g : perms) iso = iso || (image(a1, g) == b1 && image(a2, g) == b2);
                    CHECK(iso == (cc_matrix(a1, a2) == cc_matrix(b1, b2)));
                }
    const int up[] = {0, 1, 2};
    CHECK(cc_matrix(Preorder::total_order(up), Preorder::coarse(3)) == std::vector<std::vector<int>>{{1}, {1}, {1}});
    CHECK_THROWS_AS(cc_matrix(Preorder::discrete(2), Preorder::coarse(2)), Error);
}
