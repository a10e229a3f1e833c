#include "oracles.hpp"
#include "precut/avoidance.hpp"
#include "precut/error.hpp"
#include "precut/instances.hpp"

#include <doctest.h>

using namespace precut;

namespace {

AvoidanceSet pattern_set(std::vector<oracle::Perm> patterns) {
    return {"patterns", [patterns](const Element& e) {
                const auto sigma = permutation_of(e);
                return std::find(patterns.begin(), patterns.end(), sigma) != patterns.end();
            }};
}

}  // namespace

TEST_CASE("has_part finds patterns") {
    const auto S = make_permutations(PermVariant::M);
    CHECK(has_part(*S, pattern_set({oracle::perm("213")}), permutation_element("3124")));
    CHECK_FALSE(has_part(*S, pattern_set({oracle::perm("21")}), permutation_element("123")));
    const AvoidanceSet none{"none", [](const Element&) { return false; }};
    for (const auto& s : S->elements(3)) CHECK_FALSE(has_part(*S, none, s));
}

TEST_CASE("has_part agrees with brute-force pattern containment") {
    const auto S = make_permutations(PermVariant::M);
    const std::vector<std::vector<oracle::Perm>> sets = {
        {oracle::perm("213")}, {oracle::perm("132"), oracle::perm("213")}, {oracle::perm("3142"), oracle::perm("2413")}};
    for (const auto& pats : sets) {
        const auto A = pattern_set(pats);
        const auto table = has_part_table(*S, A, 4);
        for (int n = 0; n <= 4; ++n)
            for (std::size_t k = 0; k < S->elements(n).size(); ++k) {
                const auto sigma = permutation_of(S->elements(n)[k]);
                bool expected = false;
                for (const auto& p : pats) expected = expected || oracle::contains_pattern(sigma, p);
                CHECK(static_cast<bool>(table[n][k]) == expected);
                CHECK(has_part(*S, A, S->elements(n)[k]) == expected);
            }
    }
}

TEST_CASE("avoiding instances count avoiders") {
    const auto S = make_permutations(PermVariant::M);
    const auto sub = avoiding_instance(S, pattern_set({oracle::perm("213")}));
    CHECK(sub->elements(3).size() == 30);
    for (int n = 0; n <= 5; ++n) {
        CHECK(static_cast<long>(build_instance("perm_m/213")->elements(n).size()) ==
              oracle::factorial(n) * oracle::count_avoiders(n, {oracle::perm("213")}));
        CHECK(static_cast<long>(build_instance("perm_m/132+213")->elements(n).size()) ==
              oracle::factorial(n) * oracle::count_avoiders(n, {oracle::perm("132"), oracle::perm("213")}));
    }
    const auto all = avoiding_instance(S, {"none", [](const Element&) { return false; }});
    for (int n = 0; n <= 4; ++n) CHECK(all->elements(n).size() == S->elements(n).size());
}

TEST_CASE("avoiders are closed under restriction") {
    for (const char* name : {"perm_m/213", "perm_m/3142+2413", "posets/cherry", "pqsym"}) {
        INFO(std::string(name));
        const auto S = build_instance(name);
        const int n = std::string(name) == "pqsym" ? 3 : 4;
        for (const auto& s : S->elements(n))
            for (Mask y = 0; y <= full_mask(n); ++y) CHECK(S->index_of(S->restrict(s, y)) >= 0);
    }
}

TEST_CASE("cherry-free posets have chains below every point") {
    const auto S = build_instance("posets/cherry");
    for (const auto& s : S->elements(4)) {
        const Preorder p = preorder_of(s);
        for (int z = 0; z < 4; ++z)
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y)
                    if (p.leq(x, z) && p.leq(y, z)) CHECK(p.comparable(x, y));
    }
    CHECK(build_instance("posets/cherry+V")->elements(3).size() < S->elements(3).size());
}

TEST_CASE("irreducibility") {
    const auto M = make_permutations(PermVariant::M);
    for (const char* preset : {"213", "132+213", "12", "3142+2413"}) {
        INFO(std::string(preset));
        CHECK(is_irreducible(*M, Projection::First, avoidance_preset(preset, *M), 4).passed);
    }
    const auto F = make_permutations(PermVariant::F);
    const auto r = is_irreducible(*F, Projection::First, avoidance_preset("213", *F), 4);
    CHECK_FALSE(r.passed);
    CHECK(r.stage == Stage::Irreducibility);
    CHECK_FALSE(r.witness.is_null());

    const auto P = make_parking_pairs();
    CHECK(is_irreducible(*P, Projection::Second, avoidance_preset("second-not-total", *P), 3).passed);
}

TEST_CASE("sub and quotient bimonoids") {
    const auto M = make_permutations(PermVariant::M);
    const auto A = avoidance_preset("213", *M);
    CHECK_THROWS_AS(quotient_or_sub_bimonoid(M, A, Projection::First, VerificationReport::failure(Stage::Irreducibility, {})),
                    Error);
    CHECK_THROWS_AS(quotient_or_sub_bimonoid(M, A, Projection::First, VerificationReport{}), Error);
    const auto report = is_irreducible(*M, Projection::First, A, 4);
    const auto roles = quotient_or_sub_bimonoid(M, A, Projection::First, report);
    CHECK(roles.irreducible == Projection::First);
    CHECK(check_intertwined(*roles.species, 4).passed);
    CHECK(check_bimonoid(*roles.species, Projection::First, 4).passed);
    CHECK(check_bimonoid(*roles.species, Projection::Second, 4).passed);
}

TEST_CASE("quotient product is the parent product followed by dropping non-avoiders") {
    const auto M = make_permutations(PermVariant::M);
    const auto Q = build_instance("perm_m/213");
    for (Projection w : {Projection::First, Projection::Second})
        for (Mask a = 0; a < 16; ++a) {
            const Mask b = 15 & ~a;
            for (const auto& u : Q->elements(popcount(a)))
                for (const auto& v : Q->elements(popcount(b))) {
                    std::vector<Element> expected;
                    for (const auto& s : mu(*M, w, u, v, a, b))
                        if (Q->index_of(s) >= 0) expected.push_back(s);
                    auto got = mu(*Q, w, u, v, a, b);
                    std::sort(got.begin(), got.end());
                    std::sort(expected.begin(), expected.end());
                    CHECK(got == expected);
                }
        }
}

TEST_CASE("unknown presets") {
    const auto M = make_permutations(PermVariant::M);
    CHECK_THROWS_AS(avoidance_preset("bogus", *M), Error);
    CHECK_THROWS_AS(avoidance_preset("cherry", *M), Error);
}
