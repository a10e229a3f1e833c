#include "precut/species.hpp"

#include "precut/error.hpp"
#include "precut/parallel.hpp"

#include <algorithm>
#include <map>

namespace precut {

std::uint64_t fnv1a(const Element& e) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint32_t w) {
        for (int k = 0; k < 4; ++k) {
            h ^= (w >> (8 * k)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(e.size);
    for (auto w : e.words) mix(w);
    return h;
}

std::size_t ElementHash::operator()(const Element& e) const noexcept { return static_cast<std::size_t>(fnv1a(e)); }

Projection projection_from_int(int which) {
    if (which == 1) return Projection::First;
    if (which == 2) return Projection::Second;
    throw Error(ErrorCode::InvalidInput, "projection index must be 1 or 2");
}

std::string Species::describe(const Element& s) const { return to_json(s).dump(); }

const Species::Catalog& Species::catalog(int n) const {
    if (n < 0 || n > cap()) throw Error(ErrorCode::CapExceeded, name() + " elements above size " + std::to_string(cap()));
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    if (catalogs_.size() <= static_cast<std::size_t>(n)) catalogs_.resize(n + 1);
    if (!catalogs_[n]) {
        auto c = std::make_unique<Catalog>();
        c->list = generate(n);
        std::sort(c->list.begin(), c->list.end());
        c->list.erase(std::unique(c->list.begin(), c->list.end()), c->list.end());
        for (std::uint32_t i = 0; i < c->list.size(); ++i) c->index.emplace(c->list[i], i);
        catalogs_[n] = std::move(c);
    }
    return *catalogs_[n];
}

const std::vector<Element>& Species::elements(int n) const { return catalog(n).list; }

long Species::index_of(const Element& e) const {
    const Catalog& c = catalog(e.size);
    auto it = c.index.find(e);
    return it == c.index.end() ? -1 : static_cast<long>(it->second);
}

std::optional<ElementPair> delta(const Species& S, Projection which, const Element& s, Mask a, Mask b) {
    if ((a & b) || (a | b) != full_mask(s.size))
        throw Error(ErrorCode::BadDecomposition, "A and B must partition the ground");
    if (!is_cut(S.project(s, which), a)) return std::nullopt;
    return ElementPair{S.restrict(s, a), S.restrict(s, b)};
}

std::vector<Element> mu(const Species& S, Projection which, const Element& u, const Element& v, Mask a, Mask b) {
    const int n = popcount(a | b);
    if ((a & b) || (a | b) != full_mask(n) || popcount(a) != u.size || popcount(b) != v.size)
        throw Error(ErrorCode::BadDecomposition, "factors do not match the decomposition");
    std::vector<Element> out;
    for (const Element& s : S.elements(n)) {
        auto d = delta(S, which, s, a, b);
        if (d && d->first == u && d->second == v) out.push_back(s);
    }
    return out;
}

const char* stage_name(Stage stage) {
    switch (stage) {
        case Stage::None: return "None";
        case Stage::ProjectionMonotonicity: return "ProjectionMonotonicity";
        case Stage::CutEquality: return "CutEquality";
        case Stage::ExtensionUniqueness: return "ExtensionUniqueness";
        case Stage::CutValidity: return "CutValidity";
        case Stage::PullbackCommute: return "PullbackCommute";
        case Stage::Counit: return "Counit";
        case Stage::Unit: return "Unit";
        case Stage::Coassociativity: return "Coassociativity";
        case Stage::Associativity: return "Associativity";
        case Stage::Compatibility: return "Compatibility";
        case Stage::Grading: return "Grading";
        case Stage::Irreducibility: return "Irreducibility";
    }
    return "Unknown";
}

VerificationReport VerificationReport::failure(Stage stage, nlohmann::json witness) {
    VerificationReport r;
    r.passed = false;
    r.stage = stage;
    r.witness = std::move(witness);
    return r;
}

nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json j{{"passed", r.passed}, {"stats", r.stats}};
    if (!r.passed) {
        j["stage"] = stage_name(r.stage);
        j["witness"] = r.witness;
    }
    return j;
}

nlohmann::json mask_json(Mask m) {
    nlohmann::json out = nlohmann::json::array();
    for (int p : positions(m)) out.push_back(p);
    return out;
}

std::vector<Quadrant> quadrants(int n) {
    std::vector<Quadrant> out;
    std::vector<int> slot(n, 0);
    while (true) {
        Quadrant q;
        for (int i = 0; i < n; ++i) {
            Mask bit = Mask(1) << i;
            (slot[i] == 0 ? q.a : slot[i] == 1 ? q.b : slot[i] == 2 ? q.c : q.d) |= bit;
        }
        out.push_back(q);
        int i = 0;
        while (i < n && slot[i] == 3) slot[i++] = 0;
        if (i == n) break;
        ++slot[i];
    }
    return out;
}

namespace {

nlohmann::json quadrant_json(const Quadrant& q) {
    return {{"A", mask_json(q.a)}, {"B", mask_json(q.b)}, {"C", mask_json(q.c)}, {"D", mask_json(q.d)}};
}

// Runs one check per work item and keeps the failure with the smallest index.
template <class F>
std::optional<VerificationReport> first_failure(std::size_t count, F&& body) {
    std::vector<std::optional<VerificationReport>> results(count);
    parallel_for(count, [&](std::size_t i) { results[i] = body(i); });
    for (auto& r : results)
        if (r) return std::move(r);
    return std::nullopt;
}

}  // namespace

VerificationReport check_species_over_preorders(const Species& S, int nmax) {
    VerificationReport report;
    long checked = 0;
    for (int n = 0; n <= nmax; ++n) {
        const auto& elems = S.elements(n);
        auto fail = first_failure(elems.size(), [&](std::size_t k) -> std::optional<VerificationReport> {
            const Element& s = elems[k];
            for (Projection which : {Projection::First, Projection::Second}) {
                const Preorder p = S.project(s, which);
                for (Mask y = 0; y <= full_mask(n); ++y) {
                    if (!precedes(S.project(S.restrict(s, y), which), restrict(p, y)))
                        return VerificationReport::failure(
                            Stage::ProjectionMonotonicity,
                            {{"element", S.to_json(s)}, {"projection", index(which)}, {"subset", mask_json(y)}});
                    if (y == full_mask(n)) break;
                }
                for (const Cut& cut : cuts(p))
                    for (Mask side : {cut.down, cut.up})
                        if (S.project(S.restrict(s, side), which) != restrict(p, side))
                            return VerificationReport::failure(
                                Stage::CutEquality,
                                {{"element", S.to_json(s)}, {"projection", index(which)}, {"side", mask_json(side)}});
            }
            return std::nullopt;
        });
        if (fail) return *fail;
        checked += static_cast<long>(elems.size());
    }
    report.stats["elements_checked"] = checked;
    return report;
}

namespace {

using Key = std::array<std::uint32_t, 4>;

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::size_t h = 0;
        for (auto v : k) h = h * 1000003u ^ v;
        return h;
    }
};

struct Tally {
    int candidates = 0;
    int with_cuts = 0;
    const Element* unique = nullptr;
};

struct IntertwineStats {
    long quadruples = 0;
    long multi_extension = 0;
};

std::uint32_t require_index(const Species& S, const Element& e) {
    long i = S.index_of(e);
    if (i < 0) throw Error(ErrorCode::InvalidInput, S.name() + ": restriction left the species: " + S.to_json(e).dump());
    return static_cast<std::uint32_t>(i);
}

std::optional<VerificationReport> check_quadrant(const Species& S, int n, const Quadrant& q, IntertwineStats& stats) {
    const Mask ab = q.a | q.b, cd = q.c | q.d, ac = q.a | q.c, bd = q.b | q.d;
    const Mask full = full_mask(n);
    std::unordered_map<Key, Tally, KeyHash> tally;
    for (const Element& s : S.elements(n)) {
        Element s_ab = S.restrict(s, ab), s_cd = S.restrict(s, cd), s_ac = S.restrict(s, ac), s_bd = S.restrict(s, bd);
        Key key{require_index(S, s_ab), require_index(S, s_cd), require_index(S, s_ac), require_index(S, s_bd)};
        Tally& t = tally[key];
        ++t.candidates;
        const bool cut1 = is_cut(S.project(s, Projection::First), ab);
        const bool cut2 = is_cut(S.project(s, Projection::Second), ac);
        if (!(cut1 && cut2)) continue;
        ++t.with_cuts;
        t.unique = &s;
        const bool corners_ok = is_cut(S.project(s_ac, Projection::First), compress(q.a, ac)) &&
                                is_cut(S.project(s_bd, Projection::First), compress(q.b, bd)) &&
                                is_cut(S.project(s_ab, Projection::Second), compress(q.a, ab)) &&
                                is_cut(S.project(s_cd, Projection::Second), compress(q.c, cd));
        if (!corners_ok)
            return VerificationReport::failure(Stage::PullbackCommute,
                                               {{"n", n}, {"decomposition", quadrant_json(q)}, {"element", S.to_json(s)}});
    }

    // Corner elements carrying the four small cuts, grouped by their shared one-block restrictions.
    using Group = std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>;
    auto group = [&](Mask big, Mask left, Mask right, Projection which) {
        Group g;
        const auto& list = S.elements(popcount(big));
        const Mask l = compress(left, big), r = compress(right, big);
        for (std::uint32_t i = 0; i < list.size(); ++i) {
            if (!is_cut(S.project(list[i], which), l)) continue;
            g[{require_index(S, S.restrict(list[i], l)), require_index(S, S.restrict(list[i], r))}].push_back(i);
        }
        return g;
    };
    const Group g_ab = group(ab, q.a, q.b, Projection::Second);
    const Group g_cd = group(cd, q.c, q.d, Projection::Second);
    const Group g_ac = group(ac, q.a, q.c, Projection::First);
    const Group g_bd = group(bd, q.b, q.d, Projection::First);

    for (const auto& [kab, list_ab] : g_ab)
        for (const auto& [kcd, list_cd] : g_cd) {
            auto it_ac = g_ac.find({kab.first, kcd.first});
            auto it_bd = g_bd.find({kab.second, kcd.second});
            if (it_ac == g_ac.end() || it_bd == g_bd.end()) continue;
            for (auto i_ab : list_ab)
                for (auto i_cd : list_cd)
                    for (auto i_ac : it_ac->second)
                        for (auto i_bd : it_bd->second) {
                            ++stats.quadruples;
                            Key key{i_ab, i_cd, i_ac, i_bd};
                            auto found = tally.find(key);
                            const Tally t = found == tally.end() ? Tally{} : found->second;
                            Corners corners{q, S.elements(popcount(ab))[i_ab], S.elements(popcount(cd))[i_cd],
                                            S.elements(popcount(ac))[i_ac], S.elements(popcount(bd))[i_bd]};
                            auto witness = [&] {
                                return nlohmann::json{{"n", n},
                                                      {"decomposition", quadrant_json(q)},
                                                      {"s_AB", S.to_json(corners.ab)},
                                                      {"s_CD", S.to_json(corners.cd)},
                                                      {"s_AC", S.to_json(corners.ac)},
                                                      {"s_BD", S.to_json(corners.bd)},
                                                      {"extensions", t.candidates},
                                                      {"extensions_with_big_cuts", t.with_cuts}};
                            };
                            if (t.with_cuts != 1) {
                                Stage stage = (t.candidates > 0 && t.with_cuts == 0) ? Stage::CutValidity
                                                                                     : Stage::ExtensionUniqueness;
                                auto w = witness();
                                if (stage == Stage::CutValidity) {
                                    for (const Element& s : S.elements(n)) {
                                        if (S.restrict(s, ab) != corners.ab || S.restrict(s, cd) != corners.cd ||
                                            S.restrict(s, ac) != corners.ac || S.restrict(s, bd) != corners.bd)
                                            continue;
                                        w["candidate"] = S.to_json(s);
                                        w["pi1_cut_AB_CD"] = is_cut(S.project(s, Projection::First), ab);
                                        w["pi2_cut_AC_BD"] = is_cut(S.project(s, Projection::Second), ac);
                                        break;
                                    }
                                }
                                return VerificationReport::failure(stage, w);
                            }
                            if (t.candidates > 1) ++stats.multi_extension;
                            if (auto ext = S.extend(corners)) {
                                int good = 0;
                                bool matches = false;
                                for (const Element& e : *ext) {
                                    if (e.size != n || S.index_of(e) < 0) continue;
                                    if (S.restrict(e, ab) != corners.ab || S.restrict(e, cd) != corners.cd ||
                                        S.restrict(e, ac) != corners.ac || S.restrict(e, bd) != corners.bd)
                                        continue;
                                    if (!is_cut(S.project(e, Projection::First), ab) ||
                                        !is_cut(S.project(e, Projection::Second), ac))
                                        continue;
                                    ++good;
                                    matches = matches || e == *t.unique;
                                }
                                if (good != 1 || !matches) {
                                    auto w = witness();
                                    w["extension_rule_results"] = good;
                                    return VerificationReport::failure(Stage::ExtensionUniqueness, w);
                                }
                            }
                        }
        }
    (void)full;
    return std::nullopt;
}

}  // namespace

VerificationReport check_intertwined(const Species& S, int nmax) {
    VerificationReport report;
    long quadruples = 0, multi = 0, decompositions = 0;
    for (int n = 0; n <= nmax; ++n) {
        for (int m = 0; m <= n; ++m) S.elements(m);
        const auto qs = quadrants(n);
        std::vector<IntertwineStats> stats(qs.size());
        auto fail = first_failure(qs.size(), [&](std::size_t k) { return check_quadrant(S, n, qs[k], stats[k]); });
        if (fail) return *fail;
        for (const auto& s : stats) {
            quadruples += s.quadruples;
            multi += s.multi_extension;
        }
        decompositions += static_cast<long>(qs.size());
    }
    report.stats = {{"decompositions", decompositions},
                    {"corner_quadruples", quadruples},
                    {"multi_extension_cases", multi}};
    return report;
}

namespace {

struct Triple {
    Element left, middle, right;
    friend bool operator==(const Triple&, const Triple&) = default;
};

// Both bracketings of the iterated cut coproduct at (A, B, C).
std::pair<std::optional<Triple>, std::optional<Triple>> bracketings(const Species& S, Projection which,
                                                                    const Element& s, Mask a, Mask b, Mask c) {
    std::optional<Triple> left, right;
    if (auto d1 = delta(S, which, s, a | b, c))
        if (auto d2 = delta(S, which, d1->first, compress(a, a | b), compress(b, a | b)))
            left = Triple{d2->first, d2->second, d1->second};
    if (auto e1 = delta(S, which, s, a, b | c))
        if (auto e2 = delta(S, which, e1->second, compress(b, b | c), compress(c, b | c)))
            right = Triple{e1->first, e2->first, e2->second};
    return {left, right};
}

std::vector<std::array<Mask, 3>> triples(int n) {
    std::vector<std::array<Mask, 3>> out;
    std::vector<int> slot(n, 0);
    while (true) {
        std::array<Mask, 3> t{};
        for (int i = 0; i < n; ++i) t[slot[i]] |= Mask(1) << i;
        out.push_back(t);
        int i = 0;
        while (i < n && slot[i] == 2) slot[i++] = 0;
        if (i == n) break;
        ++slot[i];
    }
    return out;
}

using PairKey = std::pair<std::uint32_t, std::uint32_t>;

std::optional<VerificationReport> check_compatibility(const Species& S, Projection i, int n, const Quadrant& q) {
    const Projection j = other(i);
    // (p|q, r|t) is the Δ_i split; μ_j multiplies x on p|r with y on q|t.
    const Mask p = q.a, qq = i == Projection::First ? q.b : q.c, r = i == Projection::First ? q.c : q.b, t = q.d;
    const Mask pq = p | qq, rt = r | t, pr = p | r, qt = qq | t;

    std::map<PairKey, std::vector<PairKey>> lhs;
    for (const Element& s : S.elements(n)) {
        auto dj = delta(S, j, s, pr, qt);
        if (!dj) continue;
        auto di = delta(S, i, s, pq, rt);
        if (!di) continue;
        lhs[{require_index(S, dj->first), require_index(S, dj->second)}].push_back(
            {require_index(S, di->first), require_index(S, di->second)});
    }

    auto products = [&](Mask big, Mask left, Mask right) {
        std::map<PairKey, std::vector<std::uint32_t>> m;
        const auto& list = S.elements(popcount(big));
        for (std::uint32_t k = 0; k < list.size(); ++k)
            if (auto d = delta(S, j, list[k], compress(left, big), compress(right, big)))
                m[{require_index(S, d->first), require_index(S, d->second)}].push_back(k);
        return m;
    };
    const auto mu_pq = products(pq, p, qq);
    const auto mu_rt = products(rt, r, t);

    const auto& xs = S.elements(popcount(pr));
    const auto& ys = S.elements(popcount(qt));
    for (std::uint32_t xi = 0; xi < xs.size(); ++xi)
        for (std::uint32_t yi = 0; yi < ys.size(); ++yi) {
            std::vector<PairKey> right;
            auto dx = delta(S, i, xs[xi], compress(p, pr), compress(r, pr));
            auto dy = delta(S, i, ys[yi], compress(qq, qt), compress(t, qt));
            if (dx && dy) {
                auto u = mu_pq.find({require_index(S, dx->first), require_index(S, dy->first)});
                auto w = mu_rt.find({require_index(S, dx->second), require_index(S, dy->second)});
                if (u != mu_pq.end() && w != mu_rt.end())
                    for (auto uk : u->second)
                        for (auto wk : w->second) right.push_back({uk, wk});
            }
            std::vector<PairKey> left;
            if (auto it = lhs.find({xi, yi}); it != lhs.end()) left = it->second;
            std::sort(left.begin(), left.end());
            std::sort(right.begin(), right.end());
            if (left != right)
                return VerificationReport::failure(Stage::Compatibility,
                                                   {{"n", n},
                                                    {"decomposition", quadrant_json(q)},
                                                    {"x", S.to_json(xs[xi])},
                                                    {"y", S.to_json(ys[yi])},
                                                    {"lhs_terms", left.size()},
                                                    {"rhs_terms", right.size()}});
        }
    return std::nullopt;
}

}  // namespace

VerificationReport check_bimonoid(const Species& S, Projection coproduct, int nmax) {
    const Projection product = other(coproduct);
    VerificationReport report;
    const auto& empty = S.elements(0);
    if (empty.size() != 1)
        return VerificationReport::failure(Stage::Unit, {{"reason", "S[empty] must have exactly one element"},
                                                         {"count", empty.size()}});
    const Element& unit = empty.front();
    for (int n = 0; n <= nmax; ++n) {
        const auto& elems = S.elements(n);
        const Mask full = full_mask(n);
        for (const Element& s : elems) {
            for (Projection w : {coproduct, product}) {
                const Stage stage = w == coproduct ? Stage::Counit : Stage::Unit;
                auto d1 = delta(S, w, s, full, 0);
                auto d2 = delta(S, w, s, 0, full);
                if (!d1 || d1->first != s || d1->second != unit || !d2 || d2->first != unit || d2->second != s)
                    return VerificationReport::failure(stage, {{"element", S.to_json(s)}, {"projection", index(w)}});
            }
        }
        const auto ts = triples(n);
        auto fail = first_failure(elems.size(), [&](std::size_t k) -> std::optional<VerificationReport> {
            for (Projection w : {coproduct, product})
                for (const auto& t : ts) {
                    auto [left, right] = bracketings(S, w, elems[k], t[0], t[1], t[2]);
                    if (left != right)
                        return VerificationReport::failure(
                            w == coproduct ? Stage::Coassociativity : Stage::Associativity,
                            {{"element", S.to_json(elems[k])},
                             {"projection", index(w)},
                             {"A", mask_json(t[0])},
                             {"B", mask_json(t[1])},
                             {"C", mask_json(t[2])},
                             {"left_defined", left.has_value()},
                             {"right_defined", right.has_value()}});
                }
            return std::nullopt;
        });
        if (fail) return *fail;
        const auto qs = quadrants(n);
        auto cfail = first_failure(qs.size(), [&](std::size_t k) { return check_compatibility(S, coproduct, n, qs[k]); });
        if (cfail) return *cfail;
    }
    report.stats = {{"coproduct", index(coproduct)}, {"product", index(product)}, {"nmax", nmax}};
    return report;
}

}  // namespace precut
