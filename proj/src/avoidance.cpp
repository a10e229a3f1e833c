#include "precut/avoidance.hpp"

#include "precut/error.hpp"
#include "precut/instances.hpp"
#include "precut/parallel.hpp"

#include <sstream>
#include <unordered_set>

namespace precut {

namespace {

class AvoidingSpecies final : public Species {
public:
    AvoidingSpecies(SpeciesPtr parent, AvoidanceSet avoid) : parent_(std::move(parent)), avoid_(std::move(avoid)) {}

    std::string name() const override { return parent_->name() + "/" + avoid_.name; }
    std::string family() const override { return parent_->family(); }
    int cap() const override { return parent_->cap(); }
    Element restrict(const Element& s, Mask keep) const override { return parent_->restrict(s, keep); }
    Element relabel(const Element& s, std::span<const int> image) const override { return parent_->relabel(s, image); }
    Preorder project(const Element& s, Projection which) const override { return parent_->project(s, which); }
    nlohmann::json to_json(const Element& s) const override { return parent_->to_json(s); }
    Element from_json(const nlohmann::json& j) const override {
        Element e = parent_->from_json(j);
        if (has_part(*parent_, avoid_, e)) throw Error(ErrorCode::InvalidInput, "element does not avoid " + avoid_.name);
        return e;
    }
    std::string describe(const Element& s) const override { return parent_->describe(s); }
    std::optional<std::vector<Element>> extend(const Corners& k) const override {
        auto found = parent_->extend(k);
        if (!found) return found;
        std::vector<Element> kept;
        for (auto& e : *found)
            if (index_of(e) >= 0) kept.push_back(std::move(e));
        return kept;
    }

protected:
    // s avoids A iff s is not in A and every one-point deletion avoids A.
    std::vector<Element> generate(int n) const override {
        const auto& all = parent_->elements(n);
        std::vector<char> keep(all.size(), 0);
        std::unordered_set<Element, ElementHash> below;
        if (n > 0) below.insert(elements(n - 1).begin(), elements(n - 1).end());
        parallel_for(all.size(), [&](std::size_t k) {
            const Element& s = all[k];
            if (avoid_.membership(s)) return;
            for (int p = 0; p < n; ++p)
                if (!below.count(parent_->restrict(s, full_mask(n) & ~(Mask(1) << p)))) return;
            keep[k] = 1;
        });
        std::vector<Element> out;
        for (std::size_t k = 0; k < all.size(); ++k)
            if (keep[k]) out.push_back(all[k]);
        return out;
    }

private:
    SpeciesPtr parent_;
    AvoidanceSet avoid_;
};

const Species& require_family(const Species& parent, const char* family, const std::string& preset) {
    if (parent.family() != family)
        throw Error(ErrorCode::InvalidInput, "preset " + preset + " needs a " + family + " instance, got " + parent.name());
    return parent;
}

AvoidanceSet pattern_atom(const std::string& digits, const Species& parent) {
    require_family(parent, "perm", digits);
    std::vector<int> pattern;
    for (char c : digits) pattern.push_back(c - '1');
    permutation_element(pattern);
    return {digits, [pattern](const Element& e) {
                return e.size == pattern.size() && permutation_of(e) == pattern;
            }};
}

// cherry: x < z, y < z, x and y incomparable. V is its opposite.
bool is_cherry(const Preorder& p) {
    if (p.size() != 3 || !is_poset(p)) return false;
    for (int z = 0; z < 3; ++z) {
        const int x = (z + 1) % 3, y = (z + 2) % 3;
        if (p.less(x, z) && p.less(y, z) && !p.comparable(x, y)) return true;
    }
    return false;
}

bool not_all_break_points(const Filtration& f) {
    for (int t = 0; t <= f.n; ++t)
        if (popcount(f.at(t)) > t) return true;
    return false;
}

AvoidanceSet atom(const std::string& token, const Species& parent) {
    if (!token.empty() && token.find_first_not_of("123456789") == std::string::npos) return pattern_atom(token, parent);
    if (token == "cherry" || token == "V") {
        require_family(parent, "preorder", token);
        const bool up = token == "cherry";
        return {token, [up](const Element& e) {
                    if (e.size != 3) return false;
                    const Preorder p = preorder_of(e);
                    return is_cherry(up ? p : opposite(p));
                }};
    }
    if (token == "second-not-total" || token == "nondecreasing-parking" || token == "first-not-total") {
        require_family(parent, "parking", token);
        const bool second = token != "first-not-total";
        return {token, [second](const Element& e) {
                    auto [f, g] = parking_pair_of(e);
                    return not_all_break_points(second ? g : f);
                }};
    }
    if (token == "same-bubble-1" || token == "same-bubble-2") {
        const Projection which = token.back() == '1' ? Projection::First : Projection::Second;
        const Species* s = &parent;
        return {token, [s, which](const Element& e) {
                    return e.size == 2 && s->project(e, which).same_bubble(0, 1);
                }};
    }
    throw Error(ErrorCode::InvalidInput, "unknown avoidance preset: " + token);
}

}  // namespace

bool has_part(const Species& S, const AvoidanceSet& A, const Element& s) {
    const Mask all = full_mask(s.size);
    for (Mask y = 0;; y = (y - all) & all) {
        if (A.membership(S.restrict(s, y))) return true;
        if (y == all) return false;
    }
}

std::vector<std::vector<char>> has_part_table(const Species& S, const AvoidanceSet& A, int n) {
    std::vector<std::vector<char>> table(n + 1);
    for (int m = 0; m <= n; ++m) {
        const auto& list = S.elements(m);
        table[m].assign(list.size(), 0);
        parallel_for(list.size(), [&](std::size_t k) {
            const Element& s = list[k];
            if (A.membership(s)) {
                table[m][k] = 1;
                return;
            }
            for (int p = 0; p < m; ++p) {
                long i = S.index_of(S.restrict(s, full_mask(m) & ~(Mask(1) << p)));
                if (i < 0) throw Error(ErrorCode::InvalidInput, S.name() + ": restriction left the species");
                if (table[m - 1][i]) {
                    table[m][k] = 1;
                    return;
                }
            }
        });
    }
    return table;
}

SpeciesPtr avoiding_instance(SpeciesPtr S, AvoidanceSet A) {
    return std::make_shared<AvoidingSpecies>(std::move(S), std::move(A));
}

VerificationReport is_irreducible(const Species& S, Projection which, const AvoidanceSet& A, int nmax) {
    const auto table = has_part_table(S, A, nmax);
    auto part = [&](const Element& e) { return table[e.size][S.index_of(e)] != 0; };
    long splits = 0;
    for (int n = 0; n <= nmax; ++n) {
        const auto& list = S.elements(n);
        std::vector<long> counted(list.size(), 0);
        std::vector<std::optional<VerificationReport>> fails(list.size());
        parallel_for(list.size(), [&](std::size_t k) {
            if (!table[n][k]) return;
            const Element& s = list[k];
            for (const Cut& c : cuts(S.project(s, which))) {
                ++counted[k];
                if (part(S.restrict(s, c.down)) || part(S.restrict(s, c.up))) continue;
                fails[k] = VerificationReport::failure(
                    Stage::Irreducibility, {{"element", S.to_json(s)},
                                            {"describe", S.describe(s)},
                                            {"coproduct", index(which)},
                                            {"down", mask_json(c.down)},
                                            {"up", mask_json(c.up)}});
                return;
            }
        });
        for (auto& f : fails)
            if (f) return *f;
        for (long c : counted) splits += c;
    }
    VerificationReport ok;
    ok.stats = {{"coproduct", index(which)}, {"nmax", nmax}, {"cuts_checked", splits}};
    return ok;
}

AvoidanceRoles quotient_or_sub_bimonoid(SpeciesPtr S, AvoidanceSet A, Projection irreducible,
                                        const VerificationReport& irreducibility) {
    if (!irreducibility.passed || irreducibility.stats.value("coproduct", 0) != index(irreducible))
        throw Error(ErrorCode::IrreducibilityNotVerified,
                    "no passing irreducibility report for coproduct " + std::to_string(index(irreducible)));
    const int i = index(irreducible), o = index(other(irreducible));
    AvoidanceRoles roles;
    roles.species = avoiding_instance(std::move(S), std::move(A));
    roles.irreducible = irreducible;
    roles.sub_bimonoid = "(Delta" + std::to_string(o) + ", mu" + std::to_string(i) + ")";
    roles.quotient_bimonoid = "(Delta" + std::to_string(i) + ", mu" + std::to_string(o) + ")";
    return roles;
}

nlohmann::json to_json(const AvoidanceRoles& roles) {
    return {{"species", roles.species ? roles.species->name() : ""},
            {"irreducible", index(roles.irreducible)},
            {"sub_bimonoid", roles.sub_bimonoid},
            {"quotient_bimonoid", roles.quotient_bimonoid}};
}

AvoidanceSet avoidance_preset(const std::string& preset, const Species& parent) {
    std::vector<AvoidanceSet> atoms;
    std::stringstream in(preset);
    for (std::string token; std::getline(in, token, '+');)
        if (!token.empty()) atoms.push_back(atom(token, parent));
    if (atoms.empty()) return {"none", [](const Element&) { return false; }};
    if (atoms.size() == 1) return atoms.front();
    return {preset, [atoms](const Element& e) {
                for (const auto& a : atoms)
                    if (a.membership(e)) return true;
                return false;
            }};
}

}  // namespace precut
