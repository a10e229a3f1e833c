#include "oracles.hpp"
#include "precut/error.hpp"
#include "precut/preorder.hpp"

#include <doctest.h>

using namespace precut;

namespace {

std::vector<std::vector<bool>> relation(const Preorder& p) {
    std::vector<std::vector<bool>> r(p.size(), std::vector<bool>(p.size()));
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y) r[x][y] = p.leq(x, y);
    return r;
}

Preorder chain(std::initializer_list<int> seq) {
    std::vector<int> v(seq);
    return Preorder::total_order(v);
}

}  // namespace

TEST_CASE("preorder counts agree with exhaustive relation search") {
    for (int n = 0; n <= 4; ++n) CHECK(static_cast<long>(enumerate_preorders(n).size()) == oracle::count_preorders(n));
    CHECK(enumerate_preorders(4).size() == 355);
    CHECK_THROWS_AS(enumerate_preorders(6), Error);
}

TEST_CASE("total preorders and partition orders") {
    const long ordered_bell[] = {1, 1, 3, 13, 75};
    const long bell[] = {1, 1, 2, 5, 15};
    for (int n = 0; n <= 4; ++n) {
        CHECK(static_cast<long>(enumerate_total_preorders(n).size()) == ordered_bell[n]);
        CHECK(static_cast<long>(enumerate_partition_orders(n).size()) == bell[n]);
        for (const auto& p : enumerate_total_preorders(n)) CHECK(is_total_preorder(p));
        for (const auto& p : enumerate_partition_orders(n)) CHECK(is_partition_order(p));
    }
}

TEST_CASE("cuts are exactly the down-sets") {
    for (int n = 0; n <= 4; ++n)
        for (const auto& p : enumerate_preorders(n)) {
            const auto expected = oracle::down_sets(n, relation(p));
            const auto got = cuts(p);
            REQUIRE(got.size() == expected.size());
            for (std::size_t k = 0; k < got.size(); ++k) {
                CHECK(got[k].down == expected[k]);
                CHECK(got[k].up == (full_mask(n) & ~expected[k]));
                CHECK(is_cut(p, expected[k]));
            }
        }
}

TEST_CASE("discrete and coarse are the lattice extremes") {
    CHECK(cuts(Preorder::discrete(3)).size() == 8);
    CHECK(cuts(Preorder::coarse(3)).size() == 2);
    for (const auto& p : enumerate_preorders(3)) {
        CHECK(precedes(Preorder::discrete(3), p));
        CHECK(precedes(p, Preorder::coarse(3)));
    }
}

TEST_CASE("meet and join obey the lattice laws") {
    const auto all = enumerate_preorders(3);
    for (const auto& p : all)
        for (const auto& q : all) {
            const Preorder m = meet(p, q), j = join(p, q);
            CHECK(m == meet(q, p));
            CHECK(j == join(q, p));
            CHECK(precedes(m, p));
            CHECK(precedes(p, j));
            CHECK(meet(p, j) == p);
            CHECK(join(p, m) == p);
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) CHECK(m.leq(x, y) == (p.leq(x, y) && q.leq(x, y)));
        }
}

TEST_CASE("opposite reverses every relation") {
    for (const auto& p : enumerate_preorders(3)) {
        CHECK(opposite(opposite(p)) == p);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) CHECK(opposite(p).leq(x, y) == p.leq(y, x));
    }
}

TEST_CASE("from_rows rejects non-transitive relations") {
    const Mask rows[] = {0b011, 0b110, 0b100};
    CHECK_THROWS_AS(Preorder::from_rows(rows), Error);
    const Mask ok[] = {0b111, 0b110, 0b100};
    CHECK(is_total_order(Preorder::from_rows(ok)));
}

TEST_CASE("restriction and embedding") {
    const Preorder p = chain({2, 0, 1});
    const Preorder r = restrict(p, 0b101);
    CHECK(r.less(1, 0));
    CHECK(restrict(embed(r, 0b101, 3), 0b101) == r);
    CHECK_FALSE(embed(r, 0b101, 3).comparable(1, 0));
}

TEST_CASE("bubbles and components") {
    const std::pair<int, int> rel[] = {{0, 1}, {1, 0}, {1, 2}};
    const Preorder p = Preorder::closure(4, rel);
    CHECK(bubbles(p) == std::vector<Mask>{0b0011, 0b0100, 0b1000});
    CHECK(is_partition_order(component_partition(p)));
    CHECK(component_partition(p).same_bubble(0, 2));
    CHECK_FALSE(component_partition(p).comparable(0, 3));
    CHECK(bubble_partition(p).same_bubble(0, 1));
    CHECK_FALSE(bubble_partition(p).comparable(1, 2));
}

TEST_CASE("refinements") {
    const Mask blocks[] = {0b011, 0b100};
    const Preorder t = Preorder::total_preorder(blocks);
    CHECK(is_refinement(chain({0, 1, 2}), t));
    CHECK(is_refinement(chain({1, 0, 2}), t));
    CHECK_FALSE(is_refinement(chain({2, 0, 1}), t));
    CHECK(is_refinement(t, t));
    CHECK(ordered_bubbles(t) == std::vector<Mask>{0b011, 0b100});
    CHECK_THROWS_AS(ordered_bubbles(Preorder::discrete(2)), Error);
}

TEST_CASE("minimal total refinement") {
    CHECK(minimal_total_refinement(Preorder::discrete(3)) == Preorder::coarse(3));
    CHECK(minimal_total_refinement(chain({1, 2, 0})) == chain({1, 2, 0}));
    for (const auto& p : enumerate_preorders(4)) {
        const Preorder t = minimal_total_refinement(p);
        CHECK(is_total_preorder(t));
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y)
                if (p.less(x, y)) CHECK(t.leq(x, y));
    }
}

TEST_CASE("global descents come from cuts of the descent preorder") {
    for (int n = 1; n <= 5; ++n)
        for (auto sigma : oracle::permutations(n)) {
            std::vector<int> id(n);
            std::iota(id.begin(), id.end(), 0);
            std::vector<int> seq(n);
            for (int i = 0; i < n; ++i) seq[sigma[i]] = i;
            const Preorder t1 = Preorder::total_order(id), t2 = Preorder::total_order(seq);
            CHECK(permutation_of_pair(t1, t2) == sigma);
            std::vector<int> expected;
            for (int k = 1; k < n; ++k) {
                bool all_larger = true;
                for (int i = 0; i < k; ++i)
                    for (int j = k; j < n; ++j) all_larger = all_larger && sigma[i] > sigma[j];
                if (all_larger) expected.push_back(k);
            }
            CHECK(global_descents(t1, t2) == expected);
            CHECK(cuts(descent_preorder(t1, t2)).size() == expected.size() + 2);
        }
}

TEST_CASE("labeled JSON round trip") {
    const std::pair<int, int> rel[] = {{0, 2}};
    const Preorder p = Preorder::closure(3, rel);
    CHECK(preorder_from_json(to_json(p)) == p);
    const nlohmann::json j = {{"ground", {"a", "b"}}, {"rel", {{true, true}, {false, true}}}};
    const auto lp = labeled_preorder_from_json(j);
    CHECK(lp.ground.label(1) == "b");
    CHECK(lp.order.less(0, 1));
}
