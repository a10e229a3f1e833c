#include "oracles.hpp"
#include "precut/error.hpp"
#include "precut/setn.hpp"

#include <doctest.h>

using namespace precut;

namespace {

Multimap partial(const FiniteSet& from, const FiniteSet& to, const std::vector<int>& values) {
    Multimap m(from, to);
    for (std::size_t x = 0; x < values.size(); ++x)
        if (values[x] >= 0) m.set(static_cast<int>(x), values[x], 1);
    return m;
}

oracle::Matrix plain(const std::vector<int>& values, int cols) {
    oracle::Matrix m(values.size(), std::vector<long>(cols, 0));
    for (std::size_t x = 0; x < values.size(); ++x)
        if (values[x] >= 0) m[x][values[x]] = 1;
    return m;
}

// Every partial map from a 2-set to a 2-set as value arrays.
std::vector<std::vector<int>> partial_maps() {
    std::vector<std::vector<int>> out;
    for (int a = -1; a < 2; ++a)
        for (int b = -1; b < 2; ++b) out.push_back({a, b});
    return out;
}

}  // namespace

TEST_CASE("composition is the matrix product") {
    const auto A = FiniteSet::range(2), B = FiniteSet::range(3), C = FiniteSet::range(2);
    Multimap f(A, B, {{1, 2, 0}, {0, 1, 3}});
    Multimap g(B, C, {{1, 0}, {2, 1}, {0, 4}});
    Multimap h = compose(f, g);
    CHECK(h.at(0, 0) == 5);
    CHECK(h.at(0, 1) == 2);
    CHECK(h.at(1, 0) == 2);
    CHECK(h.at(1, 1) == 13);
    CHECK(compose(Multimap::identity(A), f) == f);
    CHECK_THROWS_AS(compose(g, g), Error);
}

TEST_CASE("dual transposes and is an involution") {
    Multimap f(FiniteSet::range(2), FiniteSet::range(3), {{1, 0, 2}, {0, 1, 0}});
    CHECK(dual(dual(f)) == f);
    CHECK(dual(f).at(2, 0) == 2);
    CHECK(dual(compose(f, dual(f))) == compose(f, dual(f)));
}

TEST_CASE("natural coefficients do not overflow") {
    Natural big = 1;
    for (int i = 0; i < 80; ++i) big *= 2;
    Multimap f(FiniteSet::range(1), FiniteSet::range(1), {{big}});
    CHECK(compose(f, f).at(0, 0) == big * big);
    CHECK(multimap_from_json(to_json(compose(f, f))) == compose(f, f));
}

TEST_CASE("classification of multimaps") {
    const auto X = FiniteSet::range(2);
    CHECK(classify(Multimap::identity(X)).ordinary);
    CHECK(classify(partial(X, X, {0, -1})).partial_map);
    CHECK_FALSE(classify(partial(X, X, {0, -1})).ordinary);
    Multimap pro(X, X, {{1, 1}, {0, 1}});
    CHECK(classify(pro).promap);
    CHECK_FALSE(classify(pro).partial_map);
    Multimap heavy(X, X, {{2, 0}, {0, 1}});
    CHECK(classify(heavy).general());
    CHECK(is_isomorphism(Multimap(X, X, {{0, 1}, {1, 0}})));
    CHECK_FALSE(is_isomorphism(pro));
}

TEST_CASE("labels resolve and unknown labels throw") {
    FiniteSet s({"a", "b"});
    CHECK(s.index("b") == 1);
    try {
        s.index("c");
        FAIL("expected UnknownLabel");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownLabel);
    }
}

TEST_CASE("square validation") {
    const auto two = FiniteSet::range(2), three = FiniteSet::range(3);
    Square sq{Multimap(two, two), Multimap(two, two), Multimap(two, two), Multimap(three, two)};
    CHECK_THROWS_AS(sq.validate(), Error);
    Square pro{Multimap(two, two, {{1, 1}, {0, 0}}), Multimap(two, two), Multimap(two, two), Multimap(two, two)};
    CHECK_THROWS_AS(check_partial_pullback(pro), Error);
    Square heavy{Multimap(two, two, {{2, 0}, {0, 0}}), Multimap(two, two), Multimap(two, two), Multimap(two, two)};
    CHECK_THROWS_AS(check_dual_commutation(heavy), Error);
}

TEST_CASE("partial pullbacks match the set-level definition and dual commutation on 2-sets") {
    const auto two = FiniteSet::range(2);
    const auto maps = partial_maps();
    int squares = 0, pullbacks = 0;
    for (const auto& a : maps)
        for (const auto& b : maps)
            for (const auto& g : maps)
                for (const auto& d : maps) {
                    Square sq{partial(two, two, a), partial(two, two, b), partial(two, two, g), partial(two, two, d)};
                    const bool lib = check_partial_pullback(sq).passed;
                    CHECK(lib == oracle::partial_pullback(a, b, g, d));
                    CHECK(lib == oracle::dual_square_commutes(plain(a, 2), plain(b, 2), plain(g, 2), plain(d, 2), 2, 2, 2));
                    CHECK(lib == check_dual_commutation(sq).passed);
                    ++squares;
                    pullbacks += lib;
                }
    CHECK(squares == 6561);
    CHECK(pullbacks > 0);
}

TEST_CASE("a failing square carries a witness") {
    const auto two = FiniteSet::range(2);
    Square sq{partial(two, two, {0, 0}), partial(two, two, {0, 0}), partial(two, two, {0, 1}), partial(two, two, {0, 1})};
    auto r = check_partial_pullback(sq);
    CHECK_FALSE(r.passed);
    CHECK(r.witness.contains("violation"));
}

TEST_CASE("square JSON round trip") {
    const nlohmann::json j = {
        {"alpha", {{"source", {"x"}}, {"target", {"y"}}, {"coeff", {{1}}}}},
        {"beta", {{"source", {"x"}}, {"target", {"z"}}, {"coeff", {{1}}}}},
        {"gamma", {{"source", {"y"}}, {"target", {"w"}}, {"coeff", {{1}}}}},
        {"delta", {{"source", {"z"}}, {"target", {"w"}}, {"coeff", {{1}}}}},
    };
    Square sq = square_from_json(j);
    CHECK(check_partial_pullback(sq).passed);
    CHECK(check_dual_commutation(sq).passed);
}
