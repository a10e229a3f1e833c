#include "precut/instances.hpp"

#include "precut/avoidance.hpp"
#include "precut/error.hpp"

#include <algorithm>
#include <numeric>

namespace precut {

namespace {

using Words = std::vector<std::uint32_t>;

Element make_element(int n, Words words) { return Element{static_cast<std::uint8_t>(n), std::move(words)}; }

// --- rank vectors: ranks[i] is the position of point i in a total order ---

Words restrict_ranks(const std::uint32_t* ranks, int n, Mask keep) {
    std::vector<int> kept;
    for (int i = 0; i < n; ++i)
        if (has(keep, i)) kept.push_back(i);
    std::vector<int> order(kept.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return ranks[kept[x]] < ranks[kept[y]]; });
    Words out(kept.size());
    for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = static_cast<std::uint32_t>(r);
    return out;
}

Words relabel_values(const std::uint32_t* values, std::span<const int> image) {
    Words out(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) out[image[i]] = values[i];
    return out;
}

std::vector<int> sequence_of_ranks(const std::uint32_t* ranks, int n) {
    std::vector<int> seq(n);
    for (int i = 0; i < n; ++i) seq[ranks[i]] = i;
    return seq;
}

Preorder order_of_ranks(const std::uint32_t* ranks, int n) {
    auto seq = sequence_of_ranks(ranks, n);
    return Preorder::total_order(seq);
}

// Ranks on [n] listing the points of `low` (in the order of low_ranks) before those of `high`.
Words stack_ranks(Mask low, const std::uint32_t* low_ranks, Mask high, const std::uint32_t* high_ranks, int n) {
    Words out(n);
    const auto lp = positions(low), hp = positions(high);
    for (std::size_t k = 0; k < lp.size(); ++k) out[lp[k]] = low_ranks[k];
    for (std::size_t k = 0; k < hp.size(); ++k) out[hp[k]] = static_cast<std::uint32_t>(lp.size()) + high_ranks[k];
    return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// --- preorder rows ---

Words rows_words(const Preorder& p) { return Words(p.rows().begin(), p.rows().end()); }

Preorder rows_preorder(const std::uint32_t* rows, int n) { return Preorder::from_rows({rows, static_cast<std::size_t>(n)}); }

Words restrict_rows(const std::uint32_t* rows, Mask keep) {
    Words out;
    for (int p : positions(keep)) out.push_back(compress(rows[p], keep));
    return out;
}

Mask relabel_mask(Mask m, std::span<const int> image) {
    Mask out = 0;
    for (int p : positions(m)) out |= Mask(1) << image[p];
    return out;
}

Words relabel_rows(const std::uint32_t* rows, std::span<const int> image) {
    Words out(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) out[image[i]] = relabel_mask(rows[i], image);
    return out;
}

nlohmann::json rel_json(const Preorder& p) { return to_json(p)["rel"]; }

Preorder rel_from_json(const nlohmann::json& rel) {
    nlohmann::json ground = nlohmann::json::array();
    for (std::size_t i = 0; i < rel.size(); ++i) ground.push_back(std::to_string(i));
    return preorder_from_json({{"ground", ground}, {"rel", rel}});
}

void require_kind(const nlohmann::json& j, const char* kind) {
    if (j.value("kind", std::string()) != kind)
        throw Error(ErrorCode::InvalidInput, std::string("expected element of kind ") + kind);
}

int resolve_cap(int requested, int fallback) {
    int c = requested > 0 ? requested : fallback;
    return std::min(c, kMaxPoints - 1);
}

// How the extension step compares a pair (x, y) from (A, D) or (B, C).
enum class Cross { None, FirstBelow, SecondBelow };

// Glues corner preorders into one preorder on the quadrant's ground; nullopt if not transitive.
std::optional<Preorder> glue(const Quadrant& q, const Preorder& ab, const Preorder& cd, const Preorder& ac,
                             const Preorder& bd, Cross ad, Cross bc) {
    const int n = popcount(q.all());
    std::array<Mask, kMaxPoints> rows{};
    auto place = [&](const Preorder& p, Mask within) {
        const auto pos = positions(within);
        for (std::size_t k = 0; k < pos.size(); ++k) rows[pos[k]] |= expand(p.up_set(static_cast<int>(k)), within);
    };
    place(ab, q.a | q.b);
    place(cd, q.c | q.d);
    place(ac, q.a | q.c);
    place(bd, q.b | q.d);
    auto cross = [&](Mask first, Mask second, Cross rule) {
        if (rule == Cross::None) return;
        for (int x : positions(first))
            for (int y : positions(second)) {
                if (rule == Cross::FirstBelow) rows[x] |= Mask(1) << y;
                else rows[y] |= Mask(1) << x;
            }
    };
    cross(q.a, q.d, ad);
    cross(q.b, q.c, bc);
    try {
        return Preorder::from_rows({rows.data(), static_cast<std::size_t>(n)});
    } catch (const Error&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------

class ColoredSpecies final : public Species {
public:
    ColoredSpecies(int palette, ColoredVariant variant, int cap)
        : palette_(palette), variant_(variant), cap_(resolve_cap(cap, 8)) {
        if (palette < 1) throw Error(ErrorCode::InvalidInput, "palette must be positive");
    }
    std::string name() const override {
        switch (variant_) {
            case ColoredVariant::BrokenDC: return "broken_dc";
            case ColoredVariant::BrokenMono: return "broken_mono";
            default: return "colored";
        }
    }
    std::string family() const override { return "colored"; }
    int cap() const override { return cap_; }
    Element restrict(const Element& s, Mask keep) const override {
        Words w;
        for (int p : positions(keep)) w.push_back(s.words[p]);
        return make_element(popcount(keep), std::move(w));
    }
    Element relabel(const Element& s, std::span<const int> image) const override {
        return make_element(s.size, relabel_values(s.words.data(), image));
    }
    Preorder project(const Element& s, Projection which) const override {
        if (which == Projection::Second) {
            if (variant_ == ColoredVariant::BrokenDC) return Preorder::coarse(s.size);
            if (variant_ == ColoredVariant::BrokenMono && s.size <= 2) return Preorder::coarse(s.size);
        }
        return Preorder::discrete(s.size);
    }
    nlohmann::json to_json(const Element& s) const override {
        return {{"kind", "colored"}, {"colors", s.words}};
    }
    Element from_json(const nlohmann::json& j) const override {
        require_kind(j, "colored");
        Words w = j.at("colors").get<Words>();
        for (auto c : w)
            if (static_cast<int>(c) >= palette_) throw Error(ErrorCode::InvalidInput, "color outside palette");
        const int n = static_cast<int>(w.size());
        return make_element(n, std::move(w));
    }
    std::string describe(const Element& s) const override {
        std::string out;
        for (auto c : s.words) out += std::to_string(c);
        return out.empty() ? "()" : out;
    }
    std::optional<std::vector<Element>> extend(const Corners& k) const override {
        const int n = popcount(k.parts.all());
        Words w(n);
        auto put = [&](const Element& e, Mask within) {
            const auto pos = positions(within);
            for (std::size_t i = 0; i < pos.size(); ++i) w[pos[i]] = e.words[i];
        };
        put(k.ab, k.parts.a | k.parts.b);
        put(k.cd, k.parts.c | k.parts.d);
        return std::vector<Element>{make_element(n, std::move(w))};
    }

protected:
    std::vector<Element> generate(int n) const override {
        std::vector<Element> out;
        Words w(n, 0);
        while (true) {
            out.push_back(make_element(n, w));
            int i = 0;
            while (i < n && static_cast<int>(w[i]) == palette_ - 1) w[i++] = 0;
            if (i == n) break;
            ++w[i];
        }
        return out;
    }

private:
    int palette_;
    ColoredVariant variant_;
    int cap_;
};

// words: colors[0..n), ranks[n..2n)
class TensorSpecies final : public Species {
public:
    TensorSpecies(int palette, int cap) : palette_(palette), cap_(resolve_cap(cap, 6)) {
        if (palette < 1) throw Error(ErrorCode::InvalidInput, "palette must be positive");
    }
    std::string name() const override { return "tensor"; }
    int cap() const override { return cap_; }
    Element restrict(const Element& s, Mask keep) const override {
        Words w;
        for (int p : positions(keep)) w.push_back(s.words[p]);
        Words r = restrict_ranks(s.words.data() + s.size, s.size, keep);
        w.insert(w.end(), r.begin(), r.end());
        return make_element(popcount(keep), std::move(w));
    }
    Element relabel(const Element& s, std::span<const int> image) const override {
        Words w = relabel_values(s.words.data(), image);
        Words r = relabel_values(s.words.data() + s.size, image);
        w.insert(w.end(), r.begin(), r.end());
        return make_element(s.size, std::move(w));
    }
    Preorder project(const Element& s, Projection which) const override {
        if (which == Projection::First) return Preorder::discrete(s.size);
        return order_of_ranks(s.words.data() + s.size, s.size);
    }
    nlohmann::json to_json(const Element& s) const override {
        return {{"kind", "tensor"},
                {"colors", Words(s.words.begin(), s.words.begin() + s.size)},
                {"order", sequence_of_ranks(s.words.data() + s.size, s.size)}};
    }
    Element from_json(const nlohmann::json& j) const override {
        require_kind(j, "tensor");
        Words w = j.at("colors").get<Words>();
        const auto seq = j.at("order").get<std::vector<int>>();
        const int n = static_cast<int>(w.size());
        Preorder::total_order(seq);
        if (static_cast<int>(seq.size()) != n) throw Error(ErrorCode::InvalidInput, "order length differs");
        Words r(n);
        for (int k = 0; k < n; ++k) r[seq[k]] = k;
        w.insert(w.end(), r.begin(), r.end());
        return make_element(n, std::move(w));
    }
    std::string describe(const Element& s) const override {
        std::string out;
        for (int v : sequence_of_ranks(s.words.data() + s.size, s.size)) out += std::to_string(s.words[v]);
        return out.empty() ? "()" : out;
    }
    std::optional<std::vector<Element>> extend(const Corners& k) const override {
        const Quadrant& q = k.parts;
        const int n = popcount(q.all());
        Words w(n);
        auto put = [&](const Element& e, Mask within) {
            const auto pos = positions(within);
            for (std::size_t i = 0; i < pos.size(); ++i) w[pos[i]] = e.words[i];
        };
        put(k.ab, q.a | q.b);
        put(k.cd, q.c | q.d);
        Words r = stack_ranks(q.a | q.c, k.ac.words.data() + k.ac.size, q.b | q.d, k.bd.words.data() + k.bd.size, n);
        w.insert(w.end(), r.begin(), r.end());
        return std::vector<Element>{make_element(n, std::move(w))};
    }

protected:
    std::vector<Element> generate(int n) const override {
        std::vector<Element> out;
        const auto perms = all_permutations(n);
        Words c(n, 0);
        while (true) {
            for (const auto& p : perms) {
                Words w = c;
                w.insert(w.end(), p.begin(), p.end());
                out.push_back(make_element(n, std::move(w)));
            }
            int i = 0;
            while (i < n && static_cast<int>(c[i]) == palette_ - 1) c[i++] = 0;
            if (i == n) break;
            ++c[i];
        }
        return out;
    }

private:
    int palette_;
    int cap_;
};

// words: adjacency masks
class GraphSpecies final : public Species {
public:
    explicit GraphSpecies(int cap) : cap_(resolve_cap(cap, 6)) {}
    std::string name() const override { return "graphs"; }
    int cap() const override { return cap_; }
    Element restrict(const Element& s, Mask keep) const override {
        return make_element(popcount(keep), restrict_rows(s.words.data(), keep));
    }
    Element relabel(const Element& s, std::span<const int> image) const override {
        return make_element(s.size, relabel_rows(s.words.data(), image));
    }
    Preorder project(const Element& s, Projection which) const override {
        if (which == Projection::First) return Preorder::discrete(s.size);
        std::vector<std::pair<int, int>> edges;
        for (int x = 0; x < s.size; ++x)
            for (int y : positions(s.words[x])) edges.push_back({x, y});
        return Preorder::closure(s.size, edges);
    }
    nlohmann::json to_json(const Element& s) const override {
        nlohmann::json edges = nlohmann::json::array();
        for (int x = 0; x < s.size; ++x)
            for (int y : positions(s.words[x]))
                if (x < y) edges.push_back({x, y});
        return {{"kind", "graph"}, {"n", s.size}, {"edges", edges}};
    }
    Element from_json(const nlohmann::json& j) const override {
        require_kind(j, "graph");
        const int n = j.at("n").get<int>();
        Words w(n, 0);
        for (const auto& e : j.at("edges")) {
            int x = e.at(0).get<int>(), y = e.at(1).get<int>();
            if (x == y || x < 0 || y < 0 || x >= n || y >= n) throw Error(ErrorCode::InvalidInput, "bad edge");
            w[x] |= Mask(1) << y;
            w[y] |= Mask(1) << x;
        }
        return make_element(n, std::move(w));
    }
    std::string describe(const Element& s) const override {
        std::string out;
        for (int x = 0; x < s.size; ++x)
            for (int y : positions(s.words[x]))
                if (x < y) out += (out.empty() ? "" : ",") + std::to_string(x + 1) + std::to_string(y + 1);
        return "[" + std::to_string(s.size) + ":" + out + "]";
    }
    std::optional<std::vector<Element>> extend(const Corners& k) const override {
        const Quadrant& q = k.parts;
        const int n = popcount(q.all());
        Words w(n, 0);
        auto put = [&](const Element& e, Mask within) {
            const auto pos = positions(within);
            for (std::size_t i = 0; i < pos.size(); ++i) w[pos[i]] |= expand(e.words[i], within);
        };
        put(k.ab, q.a | q.b);
        put(k.cd, q.c | q.d);
        put(k.ac, q.a | q.c);
        put(k.bd, q.b | q.d);
        return std::vector<Element>{make_element(n, std::move(w))};
    }

protected:
    std::vector<Element> generate(int n) const override {
        std::vector<std::pair<int, int>> slots;
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) slots.push_back({x, y});
        std::vector<Element> out;
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << slots.size()); ++bits) {
            Words w(n, 0);
            for (std::size_t k = 0; k < slots.size(); ++k)
                if ((bits >> k) & 1u) {
                    w[slots[k].first] |= Mask(1) << slots[k].second;
                    w[slots[k].second] |= Mask(1) << slots[k].first;
                }
            out.push_back(make_element(n, std::move(w)));
        }
        return out;
    }

private:
    int cap_;
};

// words: preorder rows
class PreorderSpecies final : public Species {
public:
    PreorderSpecies(bool posets_only, int cap) : posets_only_(posets_only), cap_(resolve_cap(cap, 5)) {}
    std::string name() const override { return posets_only_ ? "posets" : "preorders"; }
    std::string family() const override { return "preorder"; }
    int cap() const override { return cap_; }
    Element restrict(const Element& s, Mask keep) const override {
        return make_element(popcount(keep), restrict_rows(s.words.data(), keep));
    }
    Element relabel(const Element& s, std::span<const int> image) const override {
        return make_element(s.size, relabel_rows(s.words.data(), image));
    }
    Preorder project(const Element& s, Projection which) const override {
        Preorder p = rows_preorder(s.words.data(), s.size);
        return which == Projection::First ? p : component_partition(p);
    }
    nlohmann::json to_json(const Element& s) const override {
        return {{"kind", posets_only_ ? "poset" : "preorder"}, {"rel", rel_json(rows_preorder(s.words.data(), s.size))}};
    }
    Element from_json(const nlohmann::json& j) const override {
        require_kind(j, posets_only_ ? "poset" : "preorder");
        Preorder p = rel_from_json(j.at("rel"));
        if (posets_only_ && !is_poset(p)) throw Error(ErrorCode::InvalidInput, "relation is not a poset");
        return preorder_element(p);
    }
    std::optional<std::vector<Element>> extend(const Corners& k) const override {
        auto p = [&](const Element& e) { return rows_preorder(e.words.data(), e.size); };
        auto g = glue(k.parts, p(k.ab), p(k.cd), p(k.ac), p(k.bd), Cross::None, Cross::None);
        if (!g) return std::vector<Element>{};
        return std::vector<Element>{preorder_element(*g)};
    }

protected:
    std::vector<Element> generate(int n) const override {
        std::vector<Element> out;
        for (const Preorder& p : enumerate_preorders(n, cap_))
            if (!posets_only_ || is_poset(p)) out.push_back(preorder_element(p));
        return out;
    }

private:
    bool posets_only_;
    int cap_;
};

// words: ranks of T_1, then ranks of T_2
class PermSpecies final : public Species {
public:
    PermSpecies(PermVariant variant, int cap) : variant_(variant), cap_(resolve_cap(cap, 7)) {}
    std::string name() const override { return variant_ == PermVariant::F ? "perm_f" : "perm_m"; }
    std::string family() const override { return "perm"; }
    int cap() const override { return cap_; }
    Element restrict(const Element& s, Mask keep) const override {
        Words w = restrict_ranks(s.words.data(), s.size, keep);
        Words r = restrict_ranks(s.words.data() + s.size, s.size, keep);
        w.insert(w.end(), r.begin(), r.end());
        return make_element(popcount(keep), std::move(w));
    }
    Element relabel(const Element& s, std::span<const int> image) const override {
        Words w = relabel_values(s.words.data(), image);
        Words r = relabel_values(s.words.data() + s.size, image);
        w.insert(w.end(), r.begin(), r.end());
        return make_element(s.size, std::move(w));
    }
    Preorder project(const Element& s, Projection which) const override {
        const Preorder t1 = order_of_ranks(s.words.data(), s.size);
        const Preorder t2 = order_of_ranks(s.words.data() + s.size, s.size);
        if (variant_ == PermVariant::F) return which == Projection::First ? t1 : t2;
        return which == Projection::First ? join(t1, opposite(t2)) : meet(t1, t2);
    }
    nlohmann::json to_json(const Element& s) const override {
        return {{"kind", "perm"},
                {"t1", sequence_of_ranks(s.words.data(), s.size)},
                {"t2", sequence_of_ranks(s.words.data() + s.size, s.size)},
                {"sigma", describe(s)}};
    }
    Element from_json(const nlohmann::json& j) const override {
        require_kind(j, "perm");
        auto t1 = j.at("t1").get<std::vector<int>>();
        auto t2 = j.at("t2").get<std::vector<int>>();
        if (t1.size() != t2.size()) throw Error(ErrorCode::InvalidInput, "orders of different length");
        Preorder::total_order(t1);
        Preorder::total_order(t2);
        const int n = static_cast<int>(t1.size());
        Words w(2 * n);
        for (int k = 0; k < n; ++k) {
            w[t1[k]] = k;
            w[n + t2[k]] = k;
        }
        return make_element(n, std::move(w));
    }
    std::string describe(const Element& s) const override {
        std::string out;
        for (int v : permutation_of(s)) out += std::to_string(v + 1);
        return out.empty() ? "()" : out;
    }
    std::optional<std::vector<Element>> extend(const Corners& k) const override {
        const Quadrant& q = k.parts;
        const int n = popcount(q.all());
        const Mask ab = q.a | q.b, cd = q.c | q.d, ac = q.a | q.c, bd = q.b | q.d;
        Words w = stack_ranks(ab, k.ab.words.data(), cd, k.cd.words.data(), n);
        Words r = variant_ == PermVariant::F
                      ? stack_ranks(ac, k.ac.words.data() + k.ac.size, bd, k.bd.words.data() + k.bd.size, n)
                      : stack_ranks(cd, k.cd.words.data() + k.cd.size, ab, k.ab.words.data() + k.ab.size, n);
        w.insert(w.end(), r.begin(), r.end());
        return std::vector<Element>{make_element(n, std::move(w))};
    }

protected:
    std::vector<Element> generate(int n) const override {
        std::vector<Element> out;
        const auto perms = all_permutations(n);
        for (const auto& a : perms)
            for (const auto& b : perms) {
                Words w(a.begin(), a.end());
                w.insert(w.end(), b.begin(), b.end());
                out.push_back(make_element(n, std::move(w)));
            }
        return out;
    }

private:
    PermVariant variant_;
    int cap_;
};

// words: first chain X_0..X_n, then second chain Y_0..Y_n
class ParkingPairSpecies final : public Species {
public:
    explicit ParkingPairSpecies(int cap) : cap_(resolve_cap(cap, 4)) {}
    std::string name() const override { return "parking"; }
    int cap() const override { return cap_; }
    Element restrict(const Element& s, Mask keep) const override {
        auto [f, g] = parking_pair_of(s);
        return parking_pair_element(restrict_filtration(f, keep), restrict_filtration(g, keep));
    }
    Element relabel(const Element& s, std::span<const int> image) const override {
        auto [f, g] = parking_pair_of(s);
        std::vector<int> img(image.begin(), image.end());
        return parking_pair_element(precut::relabel(f, img), precut::relabel(g, img));
    }
    Preorder project(const Element& s, Projection which) const override {
        auto [f, g] = parking_pair_of(s);
        return filtration_preorder(which == Projection::First ? f : g);
    }
    nlohmann::json to_json(const Element& s) const override {
        auto [f, g] = parking_pair_of(s);
        auto chain = [](const Filtration& x) {
            nlohmann::json out = nlohmann::json::array();
            for (Mask m : x.chain) out.push_back(mask_json(m));
            return out;
        };
        return {{"kind", "parking_pair"}, {"n", s.size}, {"first", chain(f)}, {"second", chain(g)}};
    }
    Element from_json(const nlohmann::json& j) const override {
        require_kind(j, "parking_pair");
        const int n = j.at("n").get<int>();
        auto chain = [&](const nlohmann::json& c) {
            Filtration f{n, {}};
            for (const auto& set : c) {
                Mask m = 0;
                for (const auto& x : set) {
                    int p = x.get<int>();
                    if (p < 0 || p >= n) throw Error(ErrorCode::InvalidInput, "point outside ground");
                    m |= Mask(1) << p;
                }
                f.chain.push_back(m);
            }
            return parkize(f);
        };
        return parking_pair_element(chain(j.at("first")), chain(j.at("second")));
    }
    std::string describe(const Element& s) const override {
        // Parking functions: a(x) = first t with x in X_t.
        auto word = [&](const Filtration& f) {
            std::string out;
            for (int x = 0; x < f.n; ++x) {
                int t = 0;
                while (!has(f.chain[t], x)) ++t;
                out += std::to_string(t);
            }
            return out;
        };
        auto [f, g] = parking_pair_of(s);
        return "(" + word(f) + "," + word(g) + ")";
    }
    std::optional<std::vector<Element>> extend(const Corners& k) const override {
        const Quadrant& q = k.parts;
        const int n = popcount(q.all());
        auto concat = [&](const Filtration& low, Mask low_set, const Filtration& high, Mask high_set) {
            Filtration f{n, {}};
            for (Mask m : low.chain) f.chain.push_back(expand(m, low_set));
            for (std::size_t t = 1; t < high.chain.size(); ++t) f.chain.push_back(low_set | expand(high.chain[t], high_set));
            return f;
        };
        auto [ab1, ab2] = parking_pair_of(k.ab);
        auto [cd1, cd2] = parking_pair_of(k.cd);
        auto [ac1, ac2] = parking_pair_of(k.ac);
        auto [bd1, bd2] = parking_pair_of(k.bd);
        Filtration first = concat(ab1, q.a | q.b, cd1, q.c | q.d);
        Filtration second = concat(ac2, q.a | q.c, bd2, q.b | q.d);
        return std::vector<Element>{parking_pair_element(first, second)};
    }

protected:
    std::vector<Element> generate(int n) const override {
        const auto fs = enumerate_parking_filtrations(n);
        std::vector<Element> out;
        for (const auto& f : fs)
            for (const auto& g : fs) out.push_back(parking_pair_element(f, g));
        return out;
    }

private:
    int cap_;
};

// words: rows of P, then rows of Q
class PairSpecies final : public Species {
public:
    PairSpecies(PairKind kind, bool packed, int cap)
        : kind_(kind), packed_(packed), cap_(resolve_cap(cap, packed ? 5 : 4)) {}
    std::string name() const override { return packed_ ? "packed_words" : pair_kind_name(kind_); }
    std::string family() const override { return "pairs"; }
    int cap() const override { return cap_; }
    Element restrict(const Element& s, Mask keep) const override {
        Words w = restrict_rows(s.words.data(), keep);
        Words r = restrict_rows(s.words.data() + s.size, keep);
        w.insert(w.end(), r.begin(), r.end());
        return make_element(popcount(keep), std::move(w));
    }
    Element relabel(const Element& s, std::span<const int> image) const override {
        Words w = relabel_rows(s.words.data(), image);
        Words r = relabel_rows(s.words.data() + s.size, image);
        w.insert(w.end(), r.begin(), r.end());
        return make_element(s.size, std::move(w));
    }
    Preorder project(const Element& s, Projection which) const override {
        return rows_preorder(s.words.data() + (which == Projection::First ? 0 : s.size), s.size);
    }
    nlohmann::json to_json(const Element& s) const override {
        auto [p, q] = preorder_pair_of(s);
        nlohmann::json j{{"kind", name()}, {"p", rel_json(p)}, {"q", rel_json(q)}};
        if (packed_) j["word"] = describe(s);
        return j;
    }
    Element from_json(const nlohmann::json& j) const override {
        require_kind(j, name().c_str());
        Preorder p = rel_from_json(j.at("p")), q = rel_from_json(j.at("q"));
        if (!member(p, q)) throw Error(ErrorCode::InvalidInput, "pair is not of kind " + name());
        return preorder_pair_element(p, q);
    }
    std::string describe(const Element& s) const override {
        if (!packed_) return Species::describe(s);
        // Read the points in T_1 order and write each one's T_2 block number.
        auto [t1, t2] = preorder_pair_of(s);
        const auto blocks = ordered_bubbles(t2);
        std::vector<int> seq(s.size);
        for (int x = 0; x < s.size; ++x) seq[s.size - popcount(t1.up_set(x))] = x;
        std::string out;
        for (int x : seq)
            for (std::size_t b = 0; b < blocks.size(); ++b)
                if (has(blocks[b], x)) out += std::to_string(b + 1);
        return out.empty() ? "()" : out;
    }
    std::optional<std::vector<Element>> extend(const Corners& k) const override {
        auto first = [&](const Element& e) { return preorder_pair_of(e).first; };
        auto second = [&](const Element& e) { return preorder_pair_of(e).second; };
        Cross ad1 = Cross::None, bc1 = Cross::None, ad2 = Cross::None, bc2 = Cross::None;
        if (kind_ == PairKind::CC) {
            ad1 = Cross::FirstBelow;
            bc1 = Cross::FirstBelow;
            ad2 = Cross::FirstBelow;
            bc2 = Cross::SecondBelow;
        } else if (kind_ == PairKind::NC) {
            ad2 = Cross::FirstBelow;
            bc2 = Cross::SecondBelow;
        }
        auto p = glue(k.parts, first(k.ab), first(k.cd), first(k.ac), first(k.bd), ad1, bc1);
        auto q = glue(k.parts, second(k.ab), second(k.cd), second(k.ac), second(k.bd), ad2, bc2);
        if (!p || !q || !member(*p, *q)) return std::vector<Element>{};
        return std::vector<Element>{preorder_pair_element(*p, *q)};
    }

protected:
    std::vector<Element> generate(int n) const override {
        std::vector<Element> out;
        if (packed_) {
            for (const auto& t1 : enumerate_total_preorders(n))
                if (is_poset(t1))
                    for (const auto& t2 : enumerate_total_preorders(n)) out.push_back(preorder_pair_element(t1, t2));
            return out;
        }
        const auto all = enumerate_preorders(n, cap_);
        for (const auto& p : all)
            for (const auto& q : all)
                if (satisfies(kind_, p, q)) out.push_back(preorder_pair_element(p, q));
        return out;
    }

private:
    bool member(const Preorder& p, const Preorder& q) const {
        if (packed_) return is_total_order(p) && is_total_preorder(q);
        return satisfies(kind_, p, q);
    }

    PairKind kind_;
    bool packed_;
    int cap_;
};

struct Alias {
    const char* name;
    const char* base;
    const char* avoid;
};

constexpr Alias kAliases[] = {
    {"loday_ronco", "perm_m", "213"},
    {"qsym", "perm_m", "132+213"},
    {"divided_powers", "perm_m", "12"},
    {"wnp", "perm_m", "3142+2413"},
    {"connes_kreimer", "posets", "cherry"},
    {"symmetric_functions", "posets", "cherry+V"},
    {"pqsym", "parking", "second-not-total"},
};

}  // namespace

SpeciesPtr make_colored(int palette, ColoredVariant variant, int cap) {
    return std::make_shared<ColoredSpecies>(palette, variant, cap);
}
SpeciesPtr make_tensor(int palette, int cap) { return std::make_shared<TensorSpecies>(palette, cap); }
SpeciesPtr make_graphs(int cap) { return std::make_shared<GraphSpecies>(cap); }
SpeciesPtr make_preorders(bool posets_only, int cap) { return std::make_shared<PreorderSpecies>(posets_only, cap); }
SpeciesPtr make_permutations(PermVariant variant, int cap) { return std::make_shared<PermSpecies>(variant, cap); }
SpeciesPtr make_parking_pairs(int cap) { return std::make_shared<ParkingPairSpecies>(cap); }
SpeciesPtr make_preorder_pairs(PairKind kind, int cap) { return std::make_shared<PairSpecies>(kind, false, cap); }
SpeciesPtr make_packed_words(int cap) { return std::make_shared<PairSpecies>(PairKind::CC, true, cap); }

std::vector<std::string> instance_names() {
    return {"colored", "tensor", "graphs",  "posets", "preorders", "perm_f",       "perm_m",   "parking",
            "cc",      "nc",     "nn",      "packed_words", "broken_dc", "broken_mono"};
}

std::vector<std::string> instance_aliases() {
    std::vector<std::string> out;
    for (const auto& a : kAliases) out.push_back(a.name);
    return out;
}

SpeciesPtr build_instance(const std::string& name, const InstanceParams& params) {
    for (const auto& a : kAliases)
        if (name == a.name) {
            InstanceParams p = params;
            p.avoid = p.avoid.empty() ? a.avoid : std::string(a.avoid) + "+" + p.avoid;
            return build_instance(a.base, p);
        }
    if (auto slash = name.find('/'); slash != std::string::npos) {
        InstanceParams p = params;
        const std::string extra = name.substr(slash + 1);
        p.avoid = p.avoid.empty() ? extra : extra + "+" + p.avoid;
        return build_instance(name.substr(0, slash), p);
    }
    SpeciesPtr base;
    const int cap = params.cap;
    if (name == "colored") base = make_colored(params.palette, ColoredVariant::Plain, cap);
    else if (name == "broken_dc") base = make_colored(params.palette, ColoredVariant::BrokenDC, cap);
    else if (name == "broken_mono") base = make_colored(params.palette, ColoredVariant::BrokenMono, cap);
    else if (name == "tensor") base = make_tensor(params.palette, cap);
    else if (name == "graphs") base = make_graphs(cap);
    else if (name == "posets") base = make_preorders(true, cap);
    else if (name == "preorders") base = make_preorders(false, cap);
    else if (name == "perm_f") base = make_permutations(PermVariant::F, cap);
    else if (name == "perm_m") base = make_permutations(PermVariant::M, cap);
    else if (name == "parking") base = make_parking_pairs(cap);
    else if (name == "cc") base = make_preorder_pairs(PairKind::CC, cap);
    else if (name == "nc") base = make_preorder_pairs(PairKind::NC, cap);
    else if (name == "nn") base = make_preorder_pairs(PairKind::NN, cap);
    else if (name == "packed_words") base = make_packed_words(cap);
    else throw Error(ErrorCode::UnknownInstance, name);
    if (params.avoid.empty()) return base;
    return avoiding_instance(base, avoidance_preset(params.avoid, *base));
}

Element permutation_element(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<int> seq(sigma);
    Preorder::total_order(seq);
    Words w(2 * n);
    for (int i = 0; i < n; ++i) {
        w[i] = i;
        w[n + i] = sigma[i];
    }
    return make_element(n, std::move(w));
}

Element permutation_element(const std::string& one_line) {
    std::vector<int> sigma;
    for (char c : one_line) {
        if (c < '1' || c > '9') throw Error(ErrorCode::InvalidInput, "one-line notation uses digits 1-9");
        sigma.push_back(c - '1');
    }
    return permutation_element(sigma);
}

std::vector<int> permutation_of(const Element& e) {
    const int n = e.size;
    std::vector<int> sigma(n);
    for (int x = 0; x < n; ++x) sigma[e.words[x]] = static_cast<int>(e.words[n + x]);
    return sigma;
}

Element preorder_element(const Preorder& p) { return make_element(p.size(), rows_words(p)); }

Preorder preorder_of(const Element& e) { return rows_preorder(e.words.data(), e.size); }

Element preorder_pair_element(const Preorder& p, const Preorder& q) {
    Words w = rows_words(p);
    Words r = rows_words(q);
    w.insert(w.end(), r.begin(), r.end());
    return make_element(p.size(), std::move(w));
}

std::pair<Preorder, Preorder> preorder_pair_of(const Element& e) {
    return {rows_preorder(e.words.data(), e.size), rows_preorder(e.words.data() + e.size, e.size)};
}

Element parking_pair_element(const Filtration& first, const Filtration& second) {
    if (!is_parking(first) || !is_parking(second) || first.n != second.n)
        throw Error(ErrorCode::InvalidInput, "pair of parking filtrations expected");
    Words w(first.chain.begin(), first.chain.end());
    w.insert(w.end(), second.chain.begin(), second.chain.end());
    return make_element(first.n, std::move(w));
}

std::pair<Filtration, Filtration> parking_pair_of(const Element& e) {
    const int n = e.size;
    Filtration f{n, std::vector<Mask>(e.words.begin(), e.words.begin() + n + 1)};
    Filtration g{n, std::vector<Mask>(e.words.begin() + n + 1, e.words.end())};
    return {f, g};
}

}  // namespace precut
