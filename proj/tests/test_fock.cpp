#include "oracles.hpp"
#include "precut/error.hpp"
#include "precut/fock.hpp"
#include "precut/instances.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace precut;

namespace {

std::string label(const oracle::Perm& p) {
    if (p.empty()) return "()";
    std::string s;
    for (int v : p) s += static_cast<char>('1' + v);
    return s;
}

const FockTable& perm_f_table() {
    static const FockTable t = fock_tables(*build_instance("perm_f"), {Projection::First, Projection::Second, 4});
    return t;
}

}  // namespace

TEST_CASE("perm_f coproducts are deconcatenations") {
    const FockTable& t = perm_f_table();
    for (int n = 0; n <= 4; ++n)
        for (const auto& sigma : oracle::permutations(n)) {
            const int c = t.find(label(sigma));
            REQUIRE(c >= 0);
            TensorCombination expected;
            for (const auto& [l, r] : oracle::mr_coproduct(sigma)) expected[{t.find(label(l)), t.find(label(r))}] += 1;
            CHECK(t.coproduct[c] == expected);
        }
    const int c = t.find("3124");
    CHECK(t.coproduct[c].size() == 5);
    CHECK(t.coproduct[c].at({t.find("21"), t.find("12")}) == 1);
}

TEST_CASE("perm_f products are shifted shuffles") {
    const FockTable& t = perm_f_table();
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q)
            for (const auto& a : oracle::permutations(p))
                for (const auto& b : oracle::permutations(q)) {
                    Combination expected;
                    for (const auto& w : oracle::mr_product(a, b)) expected[t.find(label(w))] += 1;
                    const auto it = t.product.find({t.find(label(a)), t.find(label(b))});
                    REQUIRE(it != t.product.end());
                    CHECK(it->second == expected);
                }
}

TEST_CASE("graded dimensions") {
    const FockOptions opts{Projection::First, Projection::Second, 4};
    CHECK(fock_tables(*build_instance("perm_m"), opts).dimensions() == std::vector<int>{1, 1, 2, 6, 24});
    CHECK(fock_tables(*build_instance("graphs"), opts).dimensions() ==
          std::vector<int>{1, 1, 2, static_cast<int>(oracle::count_unlabeled_graphs(3)), static_cast<int>(oracle::count_unlabeled_graphs(4))});
    CHECK(fock_tables(*build_instance("divided_powers"), opts).dimensions() == std::vector<int>{1, 1, 1, 1, 1});
    const auto lr = fock_tables(*build_instance("loday_ronco"), opts).dimensions();
    for (int n = 0; n <= 4; ++n) CHECK(lr[n] == oracle::catalan(n));
    const auto qs = fock_tables(*build_instance("qsym"), opts).dimensions();
    for (int n = 1; n <= 4; ++n) CHECK(qs[n] == oracle::ipow(2, n - 1));
    const auto pw = fock_tables(*build_instance("packed_words"), {Projection::First, Projection::Second, 3}).dimensions();
    for (int n = 0; n <= 3; ++n) CHECK(pw[n] == oracle::count_packed_words(n));
}

TEST_CASE("Hopf axioms hold for shipped tables") {
    for (const char* name : {"perm_f", "perm_m", "colored", "tensor", "graphs", "posets", "preorders", "loday_ronco", "qsym",
                             "connes_kreimer"}) {
        INFO(std::string(name));
        const auto S = build_instance(name);
        for (Projection d : {Projection::First, Projection::Second}) {
            const auto t = fock_tables(*S, {d, other(d), 3});
            CHECK(verify_hopf_axioms(t, 3).passed);
        }
    }
}

TEST_CASE("a corrupted coefficient is caught") {
    FockTable t = fock_tables(*build_instance("perm_f"), {Projection::First, Projection::Second, 3});
    REQUIRE(verify_hopf_axioms(t, 3).passed);
    FockTable bad = t;
    bad.coproduct[bad.find("312")][{bad.find("21"), bad.find("1")}] = 2;
    CHECK_FALSE(verify_hopf_axioms(bad, 3).passed);
    bad = t;
    bad.product[{bad.find("1"), bad.find("1")}][bad.find("21")] = 0;
    CHECK_FALSE(verify_hopf_axioms(bad, 3).passed);
}

TEST_CASE("coproduct of a class does not depend on the representative") {
    const auto S = build_instance("graphs");
    const auto t = fock_tables(*S, {Projection::Second, Projection::First, 3});
    const auto index = orbit_classes(*S, 3);
    for (const auto& s : S->elements(3)) {
        const int c = index.class_of(*S, s);
        TensorCombination got;
        for (Mask a = 0; a < 8; ++a)
            if (auto d = delta(*S, Projection::Second, s, a, 7 & ~a))
                got[{index.class_of(*S, d->first), index.class_of(*S, d->second)}] += 1;
        CHECK(got == t.coproduct[c]);
    }
}

TEST_CASE("intertwining is required unless forced") {
    const auto S = build_instance("nn");
    CHECK_THROWS_AS(fock_tables(*S, {Projection::First, Projection::Second, 3}), Error);
    const auto t = fock_tables(*S, {Projection::First, Projection::Second, 3, true});
    CHECK(t.dimensions() == std::vector<int>{1, 1, 6, 24});
    CHECK_FALSE(verify_hopf_axioms(t, 3).passed);
}

TEST_CASE("json round trip and cache") {
    const auto S = build_instance("perm_m");
    const FockOptions opts{Projection::First, Projection::Second, 3};
    const auto t = fock_tables(*S, opts);
    const auto back = fock_table_from_json(to_json(t));
    CHECK(back.product == t.product);
    CHECK(back.coproduct == t.coproduct);
    CHECK(back.dimensions() == t.dimensions());
    CHECK_FALSE(to_csv(t).empty());

    const auto dir = std::filesystem::temp_directory_path() / "precut-test-cache";
    std::filesystem::remove_all(dir);
    setenv("PRECUT_CACHE_DIR", dir.c_str(), 1);
    const auto first = cached_fock_tables(*S, opts);
    int files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        ++files;
        CHECK(e.path().extension() == ".json");
    }
    CHECK(files == 1);
    const auto second = cached_fock_tables(*S, opts);
    CHECK(second.product == first.product);
    CHECK(second.coproduct == first.coproduct);
    for (const auto& e : std::filesystem::directory_iterator(dir)) std::ofstream(e.path()) << "{not json";
    CHECK(cached_fock_tables(*S, opts).coproduct == first.coproduct);
    unsetenv("PRECUT_CACHE_DIR");
    std::filesystem::remove_all(dir);
}

TEST_CASE("duality and change of basis between the two permutation tables") {
    const auto f = fock_tables(*build_instance("perm_f"), {Projection::First, Projection::Second, 3});
    const auto m = fock_tables(*build_instance("perm_m"), {Projection::First, Projection::Second, 3});
    CHECK_FALSE(check_isomorphism_by_constants(f, m, 3));
    CHECK(check_isomorphism_by_constants(f, f, 3));

    const auto phi = check_isomorphism_by_change_of_basis(f, m, 3);
    REQUIRE(phi);
    CHECK(phi->unit_diagonal);
    CHECK(verify_change_of_basis(f, m, *phi, 3));
    auto broken = *phi;
    broken.matrix[f.find("21")][m.find("21")] = 2;
    CHECK_FALSE(verify_change_of_basis(f, m, broken, 3));

    const auto dual = graded_dual(f);
    CHECK(verify_hopf_axioms(dual, 3).passed);
    const auto swapped = fock_tables(*build_instance("perm_f"), {Projection::Second, Projection::First, 3});
    CHECK(check_isomorphism_by_constants(dual, swapped, 3));
}
