#include "precut/fock.hpp"

#include "precut/error.hpp"
#include "precut/parallel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace precut {

namespace {

constexpr const char* kTableVersion = "fock-3";

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void add(Combination& c, int k, Coeff v) {
    if (v == 0) return;
    if ((c[k] += v) == 0) c.erase(k);
}

void add(TensorCombination& c, std::pair<int, int> k, Coeff v) {
    if (v == 0) return;
    if ((c[k] += v) == 0) c.erase(k);
}

Coeff coeff(const Combination& c, int k) {
    auto it = c.find(k);
    return it == c.end() ? 0 : it->second;
}

Coeff coeff(const TensorCombination& c, std::pair<int, int> k) {
    auto it = c.find(k);
    return it == c.end() ? 0 : it->second;
}

const Combination& product_of(const FockTable& t, int a, int b) {
    static const Combination zero;
    auto it = t.product.find({a, b});
    return it == t.product.end() ? zero : it->second;
}

TensorCombination tensor_multiply(const FockTable& t, const TensorCombination& x, const TensorCombination& y) {
    TensorCombination out;
    for (const auto& [xp, xc] : x)
        for (const auto& [yp, yc] : y) {
            const Combination& left = product_of(t, xp.first, yp.first);
            const Combination& right = product_of(t, xp.second, yp.second);
            for (const auto& [l, lc] : left)
                for (const auto& [r, rc] : right) add(out, {l, r}, xc * yc * lc * rc);
        }
    return out;
}

std::vector<std::vector<int>> by_degree(const FockTable& t) {
    std::vector<std::vector<int>> out(t.N + 1);
    for (int c = 0; c < static_cast<int>(t.classes.size()); ++c)
        if (t.classes[c].degree <= t.N) out[t.classes[c].degree].push_back(c);
    return out;
}

nlohmann::json combination_json(const FockTable& t, const Combination& c) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [k, v] : c) out.push_back({{"class", t.classes[k].label}, {"coeff", v}});
    return out;
}

nlohmann::json tensor_json(const FockTable& t, const TensorCombination& c) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [k, v] : c)
        out.push_back({{"left", t.classes[k.first].label}, {"right", t.classes[k.second].label}, {"coeff", v}});
    return out;
}

}  // namespace

Canonical canonical_form(const Species& S, const Element& s) {
    if (s.size > S.cap()) throw Error(ErrorCode::CapExceeded, "canonical form above the instance cap");
    std::vector<int> image(s.size);
    std::iota(image.begin(), image.end(), 0);
    Canonical best{s, image};
    while (std::next_permutation(image.begin(), image.end())) {
        Element e = S.relabel(s, image);
        if (e < best.form) best = {std::move(e), image};
    }
    return best;
}

int ClassIndex::class_of(const Species& S, const Element& e) const {
    long i = S.index_of(e);
    if (i < 0 || e.size >= static_cast<int>(of_element.size()))
        throw Error(ErrorCode::InvalidInput, S.name() + ": element outside the indexed degrees");
    return of_element[e.size][i];
}

ClassIndex orbit_classes(const Species& S, int N) {
    ClassIndex index;
    index.of_element.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        const auto& list = S.elements(n);
        auto& owner = index.of_element[n];
        owner.assign(list.size(), -1);
        std::vector<int> image(n);
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (owner[k] >= 0) continue;
            const int c = static_cast<int>(index.classes.size());
            std::iota(image.begin(), image.end(), 0);
            do {
                long i = S.index_of(S.relabel(list[k], image));
                if (i < 0) throw Error(ErrorCode::InvalidInput, S.name() + ": relabeling left the species");
                owner[i] = c;
            } while (std::next_permutation(image.begin(), image.end()));
            index.classes.push_back({hex64(fnv1a(list[k])), n, list[k], S.describe(list[k]), S.to_json(list[k])});
            index.rep_position.push_back(static_cast<std::uint32_t>(k));
        }
    }
    return index;
}

int FockTable::unit() const {
    for (int c = 0; c < static_cast<int>(classes.size()); ++c)
        if (classes[c].degree == 0) return c;
    throw Error(ErrorCode::InvalidInput, "table has no degree-0 class");
}

std::vector<int> FockTable::dimensions() const {
    std::vector<int> dims(N + 1, 0);
    for (const auto& c : classes)
        if (c.degree <= N) ++dims[c.degree];
    return dims;
}

int FockTable::find(const std::string& label) const {
    for (int c = 0; c < static_cast<int>(classes.size()); ++c)
        if (classes[c].label == label) return c;
    return -1;
}

Combination FockTable::multiply(const Combination& x, const Combination& y) const {
    Combination out;
    for (const auto& [a, ac] : x)
        for (const auto& [b, bc] : y)
            for (const auto& [c, cc] : product_of(*this, a, b)) add(out, c, ac * bc * cc);
    return out;
}

FockTable fock_tables(const Species& S, const FockOptions& options) {
    if (options.delta == options.mu) throw Error(ErrorCode::InvalidInput, "coproduct and product must use different cuts");
    if (options.N < 0 || options.N > S.cap())
        throw Error(ErrorCode::CapExceeded, S.name() + ": table degree above size " + std::to_string(S.cap()));
    if (!options.force) {
        auto r = check_intertwined(S, std::min(options.N, 4));
        if (!r.passed) throw Error(ErrorCode::NotIntertwined, S.name() + ": " + to_json(r).dump());
    }
    const ClassIndex index = orbit_classes(S, options.N);
    FockTable t;
    t.instance = S.name();
    t.delta = precut::index(options.delta);
    t.mu = precut::index(options.mu);
    t.N = options.N;
    t.classes = index.classes;
    t.coproduct.resize(t.classes.size());

    parallel_for(t.classes.size(), [&](std::size_t c) {
        const Element& rep = t.classes[c].rep;
        for (const Cut& cut : cuts(S.project(rep, options.delta)))
            add(t.coproduct[c], {index.class_of(S, S.restrict(rep, cut.down)), index.class_of(S, S.restrict(rep, cut.up))},
                1);
    });

    auto is_rep = [&](const Element& e, int c) {
        return index.rep_position[c] == static_cast<std::uint32_t>(S.index_of(e));
    };
    for (int n = 0; n <= options.N; ++n) {
        const auto& list = S.elements(n);
        std::vector<std::vector<std::array<int, 3>>> hits(list.size());
        parallel_for(list.size(), [&](std::size_t k) {
            for (int p = 0; p <= n; ++p) {
                const Mask a = full_mask(p), b = full_mask(n) & ~a;
                auto d = delta(S, options.mu, list[k], a, b);
                if (!d) continue;
                const int u = index.class_of(S, d->first), v = index.class_of(S, d->second);
                if (is_rep(d->first, u) && is_rep(d->second, v)) hits[k].push_back({u, v, index.of_element[n][k]});
            }
        });
        for (const auto& h : hits)
            for (const auto& [u, v, c] : h) add(t.product[{u, v}], c, 1);
    }
    return t;
}

FockTable cached_fock_tables(const Species& S, const FockOptions& options) {
    const char* dir = std::getenv("PRECUT_CACHE_DIR");
    if (!dir || !*dir) return fock_tables(S, options);
    std::ostringstream key;
    key << kTableVersion << '|' << S.name() << '|' << precut::index(options.delta) << '|' << precut::index(options.mu)
        << '|' << options.N << '|' << options.force;
    for (int n = 0; n <= std::min(options.N, 2); ++n) key << '|' << S.elements(n).size();
    const std::filesystem::path root(dir);
    const auto file = root / ("fock-" + hex64(fnv1a(key.str())) + ".json");
    if (std::ifstream in(file); in) {
        try {
            return fock_table_from_json(nlohmann::json::parse(in));
        } catch (const std::exception&) {
        }
    }
    FockTable t = fock_tables(S, options);
    std::filesystem::create_directories(root);
    std::ostringstream tag;
    tag << std::this_thread::get_id();
    const auto tmp = root / (".fock-" + hex64(fnv1a(key.str())) + "." + tag.str() + ".tmp");
    {
        std::ofstream out(tmp);
        out << to_json(t).dump();
    }
    std::filesystem::rename(tmp, file);
    return t;
}

VerificationReport verify_hopf_axioms(const FockTable& t, int N) {
    N = std::min(N, t.N);
    const auto deg = by_degree(t);
    const int one = t.unit();
    auto degree = [&](int c) { return t.classes[c].degree; };
    auto label = [&](int c) { return t.classes[c].label; };

    if (deg[0].size() != 1)
        return VerificationReport::failure(Stage::Unit, {{"reason", "degree 0 must hold exactly one class"}});
    for (const auto& [ab, result] : t.product)
        for (const auto& [c, v] : result)
            if (v < 0 || degree(c) != degree(ab.first) + degree(ab.second))
                return VerificationReport::failure(
                    Stage::Grading, {{"a", label(ab.first)}, {"b", label(ab.second)}, {"c", label(c)}, {"coeff", v}});
    for (int c = 0; c < static_cast<int>(t.coproduct.size()); ++c)
        for (const auto& [lr, v] : t.coproduct[c])
            if (v < 0 || degree(lr.first) + degree(lr.second) != degree(c))
                return VerificationReport::failure(
                    Stage::Grading, {{"c", label(c)}, {"left", label(lr.first)}, {"right", label(lr.second)}, {"coeff", v}});

    std::vector<int> all;
    for (int n = 0; n <= N; ++n) all.insert(all.end(), deg[n].begin(), deg[n].end());

    for (int x : all) {
        const Combination just{{x, 1}};
        if (product_of(t, one, x) != just || product_of(t, x, one) != just)
            return VerificationReport::failure(Stage::Unit, {{"class", label(x)},
                                                             {"left", combination_json(t, product_of(t, one, x))},
                                                             {"right", combination_json(t, product_of(t, x, one))}});
        Combination left, right;
        for (const auto& [lr, v] : t.coproduct[x]) {
            if (lr.first == one) add(left, lr.second, v);
            if (lr.second == one) add(right, lr.first, v);
        }
        if (left != just || right != just)
            return VerificationReport::failure(Stage::Counit,
                                               {{"class", label(x)}, {"coproduct", tensor_json(t, t.coproduct[x])}});
    }

    for (int x : all) {
        std::map<std::array<int, 3>, Coeff> lhs, rhs;
        for (const auto& [lr, v] : t.coproduct[x]) {
            for (const auto& [pq, w] : t.coproduct[lr.first]) lhs[{pq.first, pq.second, lr.second}] += v * w;
            for (const auto& [pq, w] : t.coproduct[lr.second]) rhs[{lr.first, pq.first, pq.second}] += v * w;
        }
        if (lhs != rhs)
            return VerificationReport::failure(Stage::Coassociativity, {{"class", label(x)}});
    }

    for (int a : all)
        for (int b : all) {
            if (degree(a) + degree(b) > N) continue;
            for (int c : all) {
                if (degree(a) + degree(b) + degree(c) > N) continue;
                Combination lhs = t.multiply(product_of(t, a, b), {{c, 1}});
                Combination rhs = t.multiply({{a, 1}}, product_of(t, b, c));
                if (lhs != rhs)
                    return VerificationReport::failure(Stage::Associativity,
                                                       {{"a", label(a)}, {"b", label(b)}, {"c", label(c)},
                                                        {"left", combination_json(t, lhs)},
                                                        {"right", combination_json(t, rhs)}});
            }
        }

    std::vector<std::pair<int, int>> pairs;
    for (int a : all)
        for (int b : all)
            if (degree(a) + degree(b) <= N) pairs.push_back({a, b});
    std::vector<std::optional<VerificationReport>> fails(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        const auto [a, b] = pairs[k];
        TensorCombination lhs;
        for (const auto& [c, v] : product_of(t, a, b))
            for (const auto& [lr, w] : t.coproduct[c]) add(lhs, lr, v * w);
        TensorCombination rhs = tensor_multiply(t, t.coproduct[a], t.coproduct[b]);
        if (lhs != rhs) {
            std::set<std::pair<int, int>> keys;
            for (const auto& [lr, v] : lhs) keys.insert(lr);
            for (const auto& [lr, v] : rhs) keys.insert(lr);
            nlohmann::json cells = nlohmann::json::array();
            for (const auto& lr : keys)
                if (coeff(lhs, lr) != coeff(rhs, lr))
                    cells.push_back({{"left", label(lr.first)},
                                     {"right", label(lr.second)},
                                     {"coproduct_of_product", coeff(lhs, lr)},
                                     {"product_of_coproducts", coeff(rhs, lr)}});
            fails[k] = VerificationReport::failure(Stage::Compatibility, {{"a", label(a)}, {"b", label(b)}, {"cells", cells}});
        }
    });
    for (auto& f : fails)
        if (f) return *f;

    VerificationReport ok;
    long product_cells = 0, coproduct_cells = 0;
    for (const auto& [ab, r] : t.product) product_cells += static_cast<long>(r.size());
    for (const auto& c : t.coproduct) coproduct_cells += static_cast<long>(c.size());
    ok.stats = {{"N", N}, {"classes", all.size()}, {"product_cells", product_cells}, {"coproduct_cells", coproduct_cells},
                {"compatibility_pairs", pairs.size()}};
    return ok;
}

FockTable graded_dual(const FockTable& t) {
    FockTable d;
    d.instance = t.instance.ends_with("*") ? t.instance.substr(0, t.instance.size() - 1) : t.instance + "*";
    d.delta = t.mu;
    d.mu = t.delta;
    d.N = t.N;
    d.classes = t.classes;
    d.coproduct.resize(t.classes.size());
    for (const auto& [ab, result] : t.product)
        for (const auto& [c, v] : result) add(d.coproduct[c], ab, v);
    for (int c = 0; c < static_cast<int>(t.coproduct.size()); ++c)
        for (const auto& [lr, v] : t.coproduct[c]) add(d.product[lr], c, v);
    return d;
}

namespace {

bool same_constants(const FockTable& a, const FockTable& b, const std::vector<int>& phi, int N) {
    for (int x = 0; x < static_cast<int>(a.classes.size()); ++x) {
        if (a.classes[x].degree > N) continue;
        TensorCombination mapped;
        for (const auto& [lr, v] : a.coproduct[x]) add(mapped, {phi[lr.first], phi[lr.second]}, v);
        if (mapped != b.coproduct[phi[x]]) return false;
    }
    for (int x = 0; x < static_cast<int>(a.classes.size()); ++x)
        for (int y = 0; y < static_cast<int>(a.classes.size()); ++y) {
            if (a.classes[x].degree + a.classes[y].degree > N) continue;
            Combination mapped;
            for (const auto& [c, v] : product_of(a, x, y)) add(mapped, phi[c], v);
            if (mapped != product_of(b, phi[x], phi[y])) return false;
        }
    return true;
}

// Degree profile of a class: coproduct terms by degree split, product mass by partner degree,
// and how often the class appears in products by factor degrees.
std::vector<Coeff> signature(const FockTable& t, int c) {
    const int w = t.N + 1;
    std::vector<Coeff> sig(4 * w * w, 0);
    auto deg = [&](int k) { return t.classes[k].degree; };
    for (const auto& [lr, v] : t.coproduct[c]) sig[deg(lr.first) * w + deg(lr.second)] += v;
    for (const auto& [ab, r] : t.product) {
        Coeff mass = 0;
        for (const auto& [k, v] : r) {
            mass += v;
            if (k == c) sig[3 * w * w + deg(ab.first) * w + deg(ab.second)] += v;
        }
        if (ab.first == c) sig[w * w + deg(ab.second)] += mass;
        if (ab.second == c) sig[2 * w * w + deg(ab.first)] += mass;
    }
    return sig;
}

}  // namespace

std::optional<std::vector<int>> check_isomorphism_by_constants(const FockTable& a, const FockTable& b, int N) {
    N = std::min({N, a.N, b.N});
    FockTable ta = a, tb = b;
    ta.N = tb.N = N;
    const auto da = by_degree(ta), db = by_degree(tb);
    for (int n = 0; n <= N; ++n)
        if (da[n].size() != db[n].size()) return std::nullopt;

    std::vector<int> order;
    for (int n = 0; n <= N; ++n) order.insert(order.end(), da[n].begin(), da[n].end());
    std::vector<std::vector<int>> candidates(a.classes.size());
    for (int x : order) {
        const auto sx = signature(ta, x);
        for (int y : db[a.classes[x].degree])
            if (signature(tb, y) == sx) candidates[x].push_back(y);
        if (candidates[x].empty()) return std::nullopt;
    }

    // Products landing on a class, for local pruning.
    std::vector<std::vector<std::pair<std::pair<int, int>, Coeff>>> into_a(a.classes.size());
    for (const auto& [ab, r] : a.product)
        for (const auto& [c, v] : r) into_a[c].push_back({ab, v});

    std::vector<int> phi(a.classes.size(), -1), inverse(b.classes.size(), -1);
    auto consistent = [&](int x) {
        for (const auto& [lr, v] : a.coproduct[x]) {
            if (phi[lr.first] < 0 || phi[lr.second] < 0) continue;
            if (coeff(b.coproduct[phi[x]], {phi[lr.first], phi[lr.second]}) != v) return false;
        }
        for (const auto& [lr, v] : b.coproduct[phi[x]]) {
            if (inverse[lr.first] < 0 || inverse[lr.second] < 0) continue;
            if (coeff(a.coproduct[x], {inverse[lr.first], inverse[lr.second]}) != v) return false;
        }
        for (const auto& [ab, v] : into_a[x]) {
            if (phi[ab.first] < 0 || phi[ab.second] < 0) continue;
            if (coeff(product_of(b, phi[ab.first], phi[ab.second]), phi[x]) != v) return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> search = [&](std::size_t k) {
        if (k == order.size()) return same_constants(ta, tb, phi, N);
        const int x = order[k];
        for (int y : candidates[x]) {
            if (inverse[y] >= 0) continue;
            phi[x] = y;
            inverse[y] = x;
            if (consistent(x) && search(k + 1)) return true;
            phi[x] = -1;
            inverse[y] = -1;
        }
        return false;
    };
    if (!search(0)) return std::nullopt;
    return phi;
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

struct LinearSystem {
    int unknowns = 0;
    std::vector<std::vector<Rational>> rows;  // last column is the constant

    void equation(std::map<int, Rational> lhs, Rational rhs) {
        std::vector<Rational> row(unknowns + 1);
        for (auto& [k, v] : lhs) row[k] += v;
        row[unknowns] = rhs;
        rows.push_back(std::move(row));
    }
};

struct Reduced {
    std::vector<int> pivot_of_row;
    std::vector<std::vector<Rational>> rows;
    std::vector<int> free;
};

std::optional<Reduced> reduce(LinearSystem sys) {
    const int m = sys.unknowns;
    auto& a = sys.rows;
    Reduced out;
    std::size_t r = 0;
    std::vector<char> is_pivot(m, 0);
    for (int col = 0; col < m && r < a.size(); ++col) {
        std::size_t p = r;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        const Rational lead = a[r][col];
        for (auto& v : a[r]) v /= lead;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (int j = col; j <= m; ++j) a[i][j] -= f * a[r][j];
        }
        out.pivot_of_row.push_back(col);
        is_pivot[col] = 1;
        ++r;
    }
    for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][m] != 0) return std::nullopt;
    a.resize(r);
    out.rows = std::move(a);
    for (int j = 0; j < m; ++j)
        if (!is_pivot[j]) out.free.push_back(j);
    return out;
}

bool integral(const Rational& q) { return denominator(q) == 1; }

Rational determinant(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            const Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

class BasisSearch {
public:
    BasisSearch(const FockTable& a, const FockTable& b, int N)
        : a_(a), b_(b), N_(N), da_(by_degree(a)), db_(by_degree(b)), phi_(a.classes.size()) {}

    std::optional<ChangeOfBasis> run() {
        for (int n = 0; n <= N_; ++n)
            if (da_[n].size() != db_[n].size()) return std::nullopt;
        if (!degree(0)) return std::nullopt;
        ChangeOfBasis out;
        out.matrix = phi_;
        out.unit_diagonal = true;
        out.triangular = triangular();
        return out;
    }

private:
    int diagonal(int x) const {
        for (int y : db_[a_.classes[x].degree])
            if (b_.classes[y].id == a_.classes[x].id) return y;
        return -1;
    }

    // Solves degree n given phi on lower degrees, then recurses.
    bool degree(int n) {
        if (n > N_) return true;
        const auto& xs = da_[n];
        const auto& ys = db_[n];
        const int k = static_cast<int>(ys.size());
        std::map<int, int> row_of, col_of;
        for (int i = 0; i < static_cast<int>(xs.size()); ++i) row_of[xs[i]] = i;
        for (int j = 0; j < k; ++j) col_of[ys[j]] = j;
        auto var = [&](int x, int y) { return row_of.at(x) * k + col_of.at(y); };

        LinearSystem sys;
        sys.unknowns = static_cast<int>(xs.size()) * k;
        for (int x : xs)
            if (int y = diagonal(x); y >= 0) sys.equation({{var(x, y), 1}}, 1);

        // phi(u)·phi(v) = phi(u·v) for lower-degree u, v.
        for (int p = 1; p < n; ++p)
            for (int u : da_[p])
                for (int v : da_[n - p]) {
                    const Combination target = b_.multiply(phi_[u], phi_[v]);
                    const Combination& uv = product_of(a_, u, v);
                    for (int y : ys) {
                        std::map<int, Rational> lhs;
                        for (const auto& [c, w] : uv) lhs[var(c, y)] += w;
                        sys.equation(lhs, coeff(target, y));
                    }
                }
        // Δ phi(x) = (phi ⊗ phi) Δ x on cells with both sides of positive degree.
        for (int x : xs) {
            TensorCombination target;
            for (const auto& [lr, w] : a_.coproduct[x]) {
                if (a_.classes[lr.first].degree == 0 || a_.classes[lr.second].degree == 0) continue;
                for (const auto& [l, lw] : phi_[lr.first])
                    for (const auto& [r, rw] : phi_[lr.second]) add(target, {l, r}, w * lw * rw);
            }
            std::map<std::pair<int, int>, std::map<int, Rational>> cells;
            for (int y : ys)
                for (const auto& [lr, w] : b_.coproduct[y]) {
                    if (b_.classes[lr.first].degree == 0 || b_.classes[lr.second].degree == 0) continue;
                    cells[lr][var(x, y)] += w;
                }
            for (const auto& [lr, w] : target) cells[lr];
            for (auto& [lr, lhs] : cells) sys.equation(lhs, coeff(target, lr));
        }

        auto reduced = reduce(std::move(sys));
        if (!reduced) return false;
        std::vector<Rational> value(xs.size() * k);
        return assign_free(*reduced, 0, value, n, xs, ys);
    }

    bool assign_free(const Reduced& red, std::size_t f, std::vector<Rational>& value, int n, const std::vector<int>& xs,
                     const std::vector<int>& ys) {
        if (f < red.free.size()) {
            for (int v : {0, 1}) {
                value[red.free[f]] = v;
                if (assign_free(red, f + 1, value, n, xs, ys)) return true;
            }
            return false;
        }
        const int m = static_cast<int>(value.size());
        for (std::size_t r = 0; r < red.rows.size(); ++r) {
            Rational v = red.rows[r][m];
            for (int j : red.free) v -= red.rows[r][j] * value[j];
            if (!integral(v)) return false;
            value[red.pivot_of_row[r]] = v;
        }
        const int k = static_cast<int>(ys.size());
        std::vector<std::vector<Rational>> block(xs.size(), std::vector<Rational>(k));
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (int j = 0; j < k; ++j) block[i][j] = value[i * k + j];
        const Rational det = determinant(block);
        if (det != 1 && det != -1) return false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            phi_[xs[i]].clear();
            for (int j = 0; j < k; ++j)
                if (block[i][j] != 0) phi_[xs[i]][ys[j]] = static_cast<Coeff>(numerator(block[i][j]));
        }
        if (degree(n + 1)) return true;
        for (int x : xs) phi_[x].clear();
        return false;
    }

    // Off-diagonal support (via equal ids) has no cycle.
    bool triangular() const {
        const int m = static_cast<int>(a_.classes.size());
        std::vector<std::vector<int>> next(m);
        for (int x = 0; x < m; ++x) {
            if (a_.classes[x].degree > N_) continue;
            for (const auto& [y, v] : phi_[x]) {
                int back = -1;
                for (int z = 0; z < m; ++z)
                    if (a_.classes[z].id == b_.classes[y].id) back = z;
                if (back < 0) return false;
                if (back != x) next[x].push_back(back);
            }
        }
        std::vector<int> state(m, 0);
        std::function<bool(int)> acyclic = [&](int x) {
            state[x] = 1;
            for (int y : next[x]) {
                if (state[y] == 1) return false;
                if (state[y] == 0 && !acyclic(y)) return false;
            }
            state[x] = 2;
            return true;
        };
        for (int x = 0; x < m; ++x)
            if (state[x] == 0 && !acyclic(x)) return false;
        return true;
    }

    const FockTable& a_;
    const FockTable& b_;
    int N_;
    std::vector<std::vector<int>> da_, db_;
    std::vector<Combination> phi_;
};

}  // namespace

std::optional<ChangeOfBasis> check_isomorphism_by_change_of_basis(const FockTable& a, const FockTable& b, int N) {
    N = std::min({N, a.N, b.N});
    auto found = BasisSearch(a, b, N).run();
    if (found && !verify_change_of_basis(a, b, *found, N)) return std::nullopt;
    return found;
}

bool verify_change_of_basis(const FockTable& a, const FockTable& b, const ChangeOfBasis& phi, int N) {
    const auto& m = phi.matrix;
    auto image = [&](const Combination& x) {
        Combination out;
        for (const auto& [c, v] : x)
            for (const auto& [d, w] : m[c]) add(out, d, v * w);
        return out;
    };
    for (int x = 0; x < static_cast<int>(a.classes.size()); ++x) {
        if (a.classes[x].degree > N) continue;
        TensorCombination lhs, rhs;
        for (const auto& [y, v] : m[x])
            for (const auto& [lr, w] : b.coproduct[y]) add(lhs, lr, v * w);
        for (const auto& [lr, w] : a.coproduct[x])
            for (const auto& [l, lw] : m[lr.first])
                for (const auto& [r, rw] : m[lr.second]) add(rhs, {l, r}, w * lw * rw);
        if (lhs != rhs) return false;
        for (int y = 0; y < static_cast<int>(a.classes.size()); ++y) {
            if (a.classes[x].degree + a.classes[y].degree > N) continue;
            if (image(product_of(a, x, y)) != b.multiply(m[x], m[y])) return false;
        }
    }
    return true;
}

nlohmann::json to_json(const FockTable& t) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : t.classes)
        classes.push_back({{"id", c.id},
                           {"degree", c.degree},
                           {"label", c.label},
                           {"repr", c.repr},
                           {"element", {{"size", c.rep.size}, {"words", c.rep.words}}}});
    nlohmann::json product = nlohmann::json::array();
    for (const auto& [ab, r] : t.product) {
        nlohmann::json result = nlohmann::json::array();
        for (const auto& [c, v] : r) result.push_back({{"c", t.classes[c].id}, {"coeff", v}});
        product.push_back({{"a", t.classes[ab.first].id}, {"b", t.classes[ab.second].id}, {"result", result}});
    }
    nlohmann::json coproduct = nlohmann::json::array();
    for (std::size_t c = 0; c < t.coproduct.size(); ++c) {
        nlohmann::json result = nlohmann::json::array();
        for (const auto& [lr, v] : t.coproduct[c])
            result.push_back({{"left", t.classes[lr.first].id}, {"right", t.classes[lr.second].id}, {"coeff", v}});
        coproduct.push_back({{"c", t.classes[c].id}, {"result", result}});
    }
    return {{"instance", t.instance}, {"delta", t.delta},     {"mu", t.mu},
            {"N", t.N},               {"classes", classes},   {"product", product},
            {"coproduct", coproduct}, {"version", kTableVersion}};
}

FockTable fock_table_from_json(const nlohmann::json& j) {
    if (j.value("version", std::string()) != kTableVersion) throw Error(ErrorCode::InvalidInput, "table version differs");
    FockTable t;
    t.instance = j.at("instance").get<std::string>();
    t.delta = j.at("delta").get<int>();
    t.mu = j.at("mu").get<int>();
    t.N = j.at("N").get<int>();
    std::map<std::string, int> by_id;
    for (const auto& c : j.at("classes")) {
        OrbitClass oc;
        oc.id = c.at("id").get<std::string>();
        oc.degree = c.at("degree").get<int>();
        oc.label = c.at("label").get<std::string>();
        oc.repr = c.at("repr");
        oc.rep.size = static_cast<std::uint8_t>(c.at("element").at("size").get<int>());
        oc.rep.words = c.at("element").at("words").get<std::vector<std::uint32_t>>();
        if (!by_id.emplace(oc.id, static_cast<int>(t.classes.size())).second)
            throw Error(ErrorCode::InvalidInput, "duplicate class id " + oc.id);
        t.classes.push_back(std::move(oc));
    }
    auto id = [&](const nlohmann::json& v) {
        auto it = by_id.find(v.get<std::string>());
        if (it == by_id.end()) throw Error(ErrorCode::InvalidInput, "unknown class id");
        return it->second;
    };
    for (const auto& p : j.at("product"))
        for (const auto& r : p.at("result")) add(t.product[{id(p.at("a")), id(p.at("b"))}], id(r.at("c")), r.at("coeff").get<Coeff>());
    t.coproduct.resize(t.classes.size());
    for (const auto& c : j.at("coproduct"))
        for (const auto& r : c.at("result"))
            add(t.coproduct[id(c.at("c"))], {id(r.at("left")), id(r.at("right"))}, r.at("coeff").get<Coeff>());
    return t;
}

std::string to_csv(const FockTable& t) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
        return out + "\"";
    };
    std::ostringstream out;
    out << "kind,a,b,c,coeff\n";
    for (const auto& c : t.classes) out << "class," << c.id << ',' << c.degree << ',' << quote(c.label) << ",\n";
    for (const auto& [ab, r] : t.product)
        for (const auto& [c, v] : r)
            out << "product," << t.classes[ab.first].id << ',' << t.classes[ab.second].id << ',' << t.classes[c].id << ','
                << v << '\n';
    for (std::size_t c = 0; c < t.coproduct.size(); ++c)
        for (const auto& [lr, v] : t.coproduct[c])
            out << "coproduct," << t.classes[lr.first].id << ',' << t.classes[lr.second].id << ',' << t.classes[c].id
                << ',' << v << '\n';
    return out.str();
}

nlohmann::json to_json(const ChangeOfBasis& phi, const FockTable& a, const FockTable& b) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t x = 0; x < phi.matrix.size(); ++x) {
        if (a.classes[x].degree > std::min(a.N, b.N)) continue;
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [y, v] : phi.matrix[x]) terms.push_back({{"class", b.classes[y].label}, {"coeff", v}});
        rows.push_back({{"class", a.classes[x].label}, {"image", terms}});
    }
    return {{"unit_diagonal", phi.unit_diagonal}, {"triangular", phi.triangular}, {"matrix", rows}};
}

}  // namespace precut
