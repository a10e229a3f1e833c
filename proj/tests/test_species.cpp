#include "oracles.hpp"
#include "precut/error.hpp"
#include "precut/instances.hpp"

#include <doctest.h>

#include <set>

using namespace precut;

namespace {

long count_pairs(int n, PairKind kind) {
    long c = 0;
    const auto all = enumerate_preorders(n);
    for (const auto& p : all)
        for (const auto& q : all) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x)
                for (int y = 0; y < n && ok; ++y) {
                    const bool pi = !p.comparable(x, y), qi = !q.comparable(x, y);
                    const bool ps = p.less(x, y), qs = q.less(x, y);
                    const bool pe = p.same_bubble(x, y), qe = q.same_bubble(x, y);
                    if (kind == PairKind::CC) ok = (!pi || qe) && (!qi || pe);
                    if (kind == PairKind::NC) ok = (!qi || pe) && (!ps || qe);
                    if (kind == PairKind::NN) ok = (!ps || qe) && (!qs || pe);
                }
            if (ok) ++c;
        }
    return c;
}

std::vector<int> sub_perm(const std::vector<int>& sigma, Mask keep) {
    std::vector<int> w;
    for (int i : positions(keep)) w.push_back(sigma[i]);
    return oracle::standardize(w);
}

const char* kShipped[] = {"colored", "tensor", "graphs", "posets", "preorders", "perm_f", "perm_m", "parking", "packed_words"};

}  // namespace

TEST_CASE("element counts agree with brute-force oracles") {
    for (int n = 0; n <= 3; ++n) {
        CHECK(static_cast<long>(build_instance("colored")->elements(n).size()) == oracle::ipow(2, n));
        CHECK(static_cast<long>(build_instance("colored", {3})->elements(n).size()) == oracle::ipow(3, n));
        CHECK(static_cast<long>(build_instance("tensor")->elements(n).size()) == oracle::factorial(n) * oracle::ipow(2, n));
        CHECK(static_cast<long>(build_instance("graphs")->elements(n).size()) == oracle::ipow(2, n * (n - 1) / 2));
        CHECK(static_cast<long>(build_instance("preorders")->elements(n).size()) == oracle::count_preorders(n));
        CHECK(static_cast<long>(build_instance("perm_f")->elements(n).size()) == oracle::factorial(n) * oracle::factorial(n));
        CHECK(static_cast<long>(build_instance("parking")->elements(n).size()) ==
              oracle::count_parking_functions(n) * oracle::count_parking_functions(n));
        CHECK(static_cast<long>(build_instance("packed_words")->elements(n).size()) ==
              oracle::factorial(n) * oracle::count_packed_words(n));
        CHECK(static_cast<long>(build_instance("cc")->elements(n).size()) == count_pairs(n, PairKind::CC));
        CHECK(static_cast<long>(build_instance("nc")->elements(n).size()) == count_pairs(n, PairKind::NC));
        CHECK(static_cast<long>(build_instance("nn")->elements(n).size()) == count_pairs(n, PairKind::NN));
    }
    CHECK(build_instance("colored", {1})->elements(3).size() == 1);
    CHECK(build_instance("posets")->elements(4).size() == 219);
}

TEST_CASE("every instance has a single element on the empty set") {
    for (const auto& name : instance_names()) CHECK(build_instance(name)->elements(0).size() == 1);
}

TEST_CASE("unknown instances and caps") {
    CHECK_THROWS_AS(build_instance("nope"), Error);
    const auto s = build_instance("perm_f", {2, "", 3});
    CHECK(s->cap() == 3);
    CHECK_THROWS_AS(s->elements(4), Error);
    try {
        s->elements(4);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CapExceeded);
    }
}

TEST_CASE("restriction is a functor and commutes with relabeling") {
    for (const char* name : kShipped) {
        INFO(std::string(name));
        const auto S = build_instance(name);
        const int n = 3;
        for (const auto& s : S->elements(n)) {
            CHECK(S->restrict(s, full_mask(n)) == s);
            CHECK(S->index_of(s) >= 0);
            CHECK(S->from_json(S->to_json(s)) == s);
            for (Mask y = 0; y <= full_mask(n); ++y)
                for (Mask z = y;; z = (z - 1) & y) {
                    CHECK(S->restrict(S->restrict(s, y), compress(z, y)) == S->restrict(s, z));
                    if (z == 0) break;
                }
            const std::vector<int> g{2, 0, 1};
            const Element t = S->relabel(s, g);
            CHECK(S->index_of(t) >= 0);
            for (Mask y = 0; y <= full_mask(n); ++y) {
                Mask gy = 0;
                for (int i : positions(y)) gy |= Mask(1) << g[i];
                std::vector<int> sub(popcount(y));
                const auto src = positions(y), dst = positions(gy);
                for (std::size_t k = 0; k < src.size(); ++k)
                    sub[k] = static_cast<int>(std::find(dst.begin(), dst.end(), g[src[k]]) - dst.begin());
                CHECK(S->restrict(t, gy) == S->relabel(S->restrict(s, y), sub));
            }
        }
    }
}

TEST_CASE("permutation restriction is pattern extraction") {
    const auto S = build_instance("perm_f");
    for (const auto& sigma : oracle::permutations(4)) {
        const Element e = permutation_element(sigma);
        CHECK(permutation_of(e) == sigma);
        for (Mask y = 0; y < 16; ++y) CHECK(permutation_of(S->restrict(e, y)) == sub_perm(sigma, y));
    }
}

TEST_CASE("cut coproduct on perm_f") {
    const auto S = build_instance("perm_f");
    const Element s = permutation_element("3124");
    const auto d = delta(*S, Projection::First, s, 0b0011, 0b1100);
    REQUIRE(d);
    CHECK(permutation_of(d->first) == oracle::perm("21"));
    CHECK(permutation_of(d->second) == oracle::perm("12"));
    CHECK_FALSE(delta(*S, Projection::First, s, 0b0101, 0b1010));
    const auto whole = delta(*S, Projection::First, s, 0b1111, 0);
    REQUIRE(whole);
    CHECK(whole->first == s);
    CHECK(whole->second.size == 0);
    CHECK_THROWS_AS(delta(*S, Projection::First, s, 0b0011, 0b0110), Error);

    std::multiset<std::pair<oracle::Perm, oracle::Perm>> got;
    for (int k = 0; k <= 4; ++k) {
        const Mask a = full_mask(k);
        const auto r = delta(*S, Projection::First, s, a, full_mask(4) & ~a);
        REQUIRE(r);
        got.insert({permutation_of(r->first), permutation_of(r->second)});
    }
    CHECK(got == oracle::mr_coproduct(oracle::perm("3124")));
}

TEST_CASE("dual product on perm_f gives shifted shuffles") {
    const auto S = build_instance("perm_f");
    const Element u = permutation_element("12"), v = permutation_element("312");
    const auto out = mu(*S, Projection::Second, u, v, 0b00011, 0b11100);
    CHECK(out.size() == 10);
    for (const auto& s : out) {
        const auto d = delta(*S, Projection::Second, s, 0b00011, 0b11100);
        REQUIRE(d);
        CHECK(d->first == u);
        CHECK(d->second == v);
    }
    CHECK(mu(*S, Projection::Second, u, S->elements(0).front(), 0b11, 0) == std::vector<Element>{u});
}

TEST_CASE("mu is exactly the fibre of delta") {
    for (const char* name : kShipped) {
        const auto S = build_instance(name);
        const int n = 3;
        for (Projection w : {Projection::First, Projection::Second})
            for (Mask a = 0; a <= full_mask(n); ++a) {
                const Mask b = full_mask(n) & ~a;
                std::map<std::pair<Element, Element>, std::vector<Element>> fibres;
                for (const auto& s : S->elements(n))
                    if (auto d = delta(*S, w, s, a, b)) fibres[*d].push_back(s);
                for (const auto& u : S->elements(popcount(a)))
                    for (const auto& v : S->elements(popcount(b))) {
                        auto got = mu(*S, w, u, v, a, b);
                        std::sort(got.begin(), got.end());
                        CHECK(got == fibres[{u, v}]);
                    }
            }
    }
}

TEST_CASE("perm_m mu of two singletons") {
    const auto S = build_instance("perm_m");
    const Element one = permutation_element("1");
    long expected = 0;
    for (const auto& s : S->elements(2))
        if (auto d = delta(*S, Projection::Second, s, 0b01, 0b10); d && d->first == one && d->second == one) ++expected;
    CHECK(static_cast<long>(mu(*S, Projection::Second, one, one, 0b01, 0b10).size()) == expected);
    CHECK(expected > 0);
}

TEST_CASE("shipped instances are species over preorders, intertwined and bimonoids") {
    for (const char* name : kShipped) {
        INFO(std::string(name));
        const auto S = build_instance(name);
        const int nmax = std::string(name) == "parking" || std::string(name) == "packed_words" ? 3 : 4;
        CHECK(check_species_over_preorders(*S, nmax).passed);
        CHECK(check_intertwined(*S, nmax).passed);
        CHECK(check_bimonoid(*S, Projection::First, 3).passed);
        CHECK(check_bimonoid(*S, Projection::Second, 3).passed);
    }
}

TEST_CASE("graphs show strict projection monotonicity") {
    const auto S = build_instance("graphs");
    bool strict = false;
    for (const auto& s : S->elements(3))
        for (Mask y = 0; y < 8; ++y) {
            const Preorder lhs = S->project(S->restrict(s, y), Projection::Second);
            const Preorder rhs = restrict(S->project(s, Projection::Second), y);
            CHECK(precedes(lhs, rhs));
            strict = strict || lhs != rhs;
        }
    CHECK(strict);
}

TEST_CASE("negative controls") {
    const auto dc = make_colored(2, ColoredVariant::BrokenDC);
    CHECK(check_species_over_preorders(*dc, 3).passed);
    const auto r = check_intertwined(*dc, 3);
    CHECK_FALSE(r.passed);
    CHECK(r.stage == Stage::CutValidity);
    CHECK_FALSE(r.witness.is_null());

    const auto mono = make_colored(2, ColoredVariant::BrokenMono);
    const auto m = check_species_over_preorders(*mono, 3);
    CHECK_FALSE(m.passed);
    CHECK(m.stage == Stage::ProjectionMonotonicity);
}

TEST_CASE("preorder-pair kinds are not intertwined on three points") {
    for (const char* name : {"cc", "nc", "nn"}) {
        INFO(std::string(name));
        const auto S = build_instance(name);
        CHECK(check_species_over_preorders(*S, 3).passed);
        CHECK(check_intertwined(*S, 2).passed);
        const auto r = check_intertwined(*S, 3);
        CHECK_FALSE(r.passed);
        CHECK((r.stage == Stage::ExtensionUniqueness || r.stage == Stage::CutValidity));
    }
}

TEST_CASE("aliases resolve to avoidance instances") {
    CHECK(build_instance("loday_ronco")->elements(3).size() == 30);
    CHECK(build_instance("perm_m", {2, "213"})->elements(3).size() == 30);
    CHECK(build_instance("perm_m/213")->elements(3).size() == 30);
    for (const auto& a : instance_aliases()) CHECK(build_instance(a)->elements(0).size() == 1);
}

TEST_CASE("several extensions occur, with exactly one having both big cuts") {
    const auto colored = check_intertwined(*build_instance("colored"), 3);
    CHECK(colored.stats.at("multi_extension_cases") == 0);
    for (const char* name : {"graphs", "perm_f", "parking"}) {
        const auto r = check_intertwined(*build_instance(name), 3);
        CHECK(r.passed);
        CHECK(r.stats.at("multi_extension_cases").get<long>() > 0);
    }
}
