#include "precut/setn.hpp"

#include "precut/error.hpp"

#include <set>

namespace precut {

FiniteSet::FiniteSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second) throw Error(ErrorCode::InvalidInput, "duplicate label " + l);
}

FiniteSet FiniteSet::range(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return FiniteSet(std::move(labels));
}

int FiniteSet::index(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    throw Error(ErrorCode::UnknownLabel, label);
}

Multimap::Multimap(FiniteSet source, FiniteSet target)
    : source_(std::move(source)), target_(std::move(target)) {
    coeff_.assign(source_.size(), std::vector<Natural>(target_.size(), Natural(0)));
}

Multimap::Multimap(FiniteSet source, FiniteSet target, std::vector<std::vector<Natural>> coeff)
    : source_(std::move(source)), target_(std::move(target)), coeff_(std::move(coeff)) {
    if (static_cast<int>(coeff_.size()) != source_.size())
        throw Error(ErrorCode::DimensionMismatch, "row count differs from source size");
    for (const auto& row : coeff_) {
        if (static_cast<int>(row.size()) != target_.size())
            throw Error(ErrorCode::DimensionMismatch, "column count differs from target size");
        for (const auto& v : row)
            if (v < 0) throw Error(ErrorCode::InvalidInput, "negative coefficient");
    }
}

Multimap Multimap::identity(const FiniteSet& set) {
    Multimap f(set, set);
    for (int i = 0; i < set.size(); ++i) f.set(i, i, 1);
    return f;
}

Natural Multimap::row_sum(int x) const {
    Natural s = 0;
    for (const auto& v : coeff_[x]) s += v;
    return s;
}

std::vector<int> Multimap::row_support(int x) const {
    std::vector<int> out;
    for (int y = 0; y < target_.size(); ++y)
        if (coeff_[x][y] != 0) out.push_back(y);
    return out;
}

std::vector<int> Multimap::column_support(int y) const {
    std::vector<int> out;
    for (int x = 0; x < source_.size(); ++x)
        if (coeff_[x][y] != 0) out.push_back(x);
    return out;
}

void Square::validate() const {
    if (alpha.source() != beta.source()) throw Error(ErrorCode::DimensionMismatch, "alpha and beta sources differ");
    if (alpha.target() != gamma.source()) throw Error(ErrorCode::DimensionMismatch, "alpha target is not gamma source");
    if (beta.target() != delta.source()) throw Error(ErrorCode::DimensionMismatch, "beta target is not delta source");
    if (gamma.target() != delta.target()) throw Error(ErrorCode::DimensionMismatch, "gamma and delta targets differ");
}

Multimap compose(const Multimap& f, const Multimap& g) {
    if (f.target() != g.source()) throw Error(ErrorCode::DimensionMismatch, "f.target != g.source");
    Multimap h(f.source(), g.target());
    for (int x = 0; x < f.source().size(); ++x)
        for (int y = 0; y < f.target().size(); ++y) {
            if (f.at(x, y) == 0) continue;
            for (int z = 0; z < g.target().size(); ++z)
                if (g.at(y, z) != 0) h.set(x, z, h.at(x, z) + f.at(x, y) * g.at(y, z));
        }
    return h;
}

Multimap dual(const Multimap& f) {
    Multimap d(f.target(), f.source());
    for (int x = 0; x < f.source().size(); ++x)
        for (int y = 0; y < f.target().size(); ++y) d.set(y, x, f.at(x, y));
    return d;
}

MapClass classify(const Multimap& f) {
    MapClass c{true, true, true};
    for (int x = 0; x < f.source().size(); ++x) {
        Natural s = f.row_sum(x);
        if (s != 1) c.ordinary = false;
        if (s > 1) c.partial_map = false;
        for (const auto& v : f.coeff()[x])
            if (v > 1) c.promap = false;
    }
    return c;
}

bool is_isomorphism(const Multimap& f) {
    if (f.source().size() != f.target().size()) return false;
    if (!classify(f).ordinary) return false;
    for (int y = 0; y < f.target().size(); ++y) {
        Natural s = 0;
        for (int x = 0; x < f.source().size(); ++x) s += f.at(x, y);
        if (s != 1) return false;
    }
    return true;
}

namespace {

std::string natural_text(const Natural& v) { return v.str(); }

// Image of x under a partial map, or -1.
int image(const Multimap& f, int x) {
    for (int y = 0; y < f.target().size(); ++y)
        if (f.at(x, y) != 0) return y;
    return -1;
}

}  // namespace

SquareCheck check_dual_commutation(const Square& sq) {
    sq.validate();
    for (const Multimap* m : {&sq.alpha, &sq.beta, &sq.gamma, &sq.delta})
        if (!classify(*m).promap) throw Error(ErrorCode::NotPromap, "square contains a non-promap");
    const int ny = sq.alpha.target().size();
    const int nz = sq.beta.target().size();
    const int nx = sq.alpha.source().size();
    const int nw = sq.gamma.target().size();
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y) {
            int right = 0;
            for (int w = 0; w < nw; ++w)
                if (sq.delta.at(z, w) != 0 && sq.gamma.at(y, w) != 0) ++right;
            int left = 0;
            for (int x = 0; x < nx; ++x)
                if (sq.beta.at(x, z) != 0 && sq.alpha.at(x, y) != 0) ++left;
            if (left != right)
                return {false,
                        {{"z", sq.beta.target().label(z)},
                         {"y", sq.alpha.target().label(y)},
                         {"through_W", right},
                         {"through_X", left}}};
        }
    return {};
}

SquareCheck check_partial_pullback(const Square& sq) {
    sq.validate();
    for (const Multimap* m : {&sq.alpha, &sq.beta, &sq.gamma, &sq.delta})
        if (!classify(*m).partial_map) throw Error(ErrorCode::NotPartialMap, "square contains a non-partial map");
    const FiniteSet& X = sq.alpha.source();
    const FiniteSet& Y = sq.alpha.target();
    const FiniteSet& Z = sq.beta.target();
    std::vector<std::vector<int>> count(Y.size(), std::vector<int>(Z.size(), 0));
    for (int x = 0; x < X.size(); ++x) {
        int y = image(sq.alpha, x), z = image(sq.beta, x);
        if (y < 0 || z < 0) continue;
        int gy = image(sq.gamma, y), dz = image(sq.delta, z);
        if (gy < 0 || dz < 0)
            return {false, {{"violation", "leaves defined locus"}, {"x", X.label(x)}}};
        if (gy != dz)
            return {false, {{"violation", "does not commute"}, {"x", X.label(x)}}};
        ++count[y][z];
    }
    for (int y = 0; y < Y.size(); ++y) {
        int gy = image(sq.gamma, y);
        if (gy < 0) continue;
        for (int z = 0; z < Z.size(); ++z) {
            if (image(sq.delta, z) != gy) continue;
            if (count[y][z] != 1)
                return {false,
                        {{"violation", count[y][z] == 0 ? "no lift" : "several lifts"},
                         {"y", Y.label(y)},
                         {"z", Z.label(z)},
                         {"lifts", count[y][z]}}};
        }
    }
    return {};
}

nlohmann::json to_json(const FiniteSet& set) { return set.labels(); }

nlohmann::json to_json(const Multimap& f) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : f.coeff()) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) {
            if (v <= std::numeric_limits<std::uint64_t>::max())
                r.push_back(static_cast<std::uint64_t>(v));
            else
                r.push_back(natural_text(v));
        }
        rows.push_back(r);
    }
    return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"coeff", rows}};
}

nlohmann::json to_json(const MapClass& c) {
    nlohmann::json out = nlohmann::json::array();
    if (c.ordinary) out.push_back("Ordinary");
    if (c.promap) out.push_back("Promap");
    if (c.partial_map) out.push_back("PartialMap");
    if (c.general()) out.push_back("General");
    return out;
}

namespace {

FiniteSet set_from_json(const nlohmann::json& j) {
    std::vector<std::string> labels;
    for (const auto& l : j) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    return FiniteSet(std::move(labels));
}

Natural natural_from_json(const nlohmann::json& j) {
    if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0) throw Error(ErrorCode::InvalidInput, "negative coefficient");
        return Natural(v);
    }
    if (j.is_string()) return Natural(j.get<std::string>());
    throw Error(ErrorCode::InvalidInput, "coefficient must be a natural number");
}

}  // namespace

Multimap multimap_from_json(const nlohmann::json& j) {
    FiniteSet source = set_from_json(j.at("source"));
    FiniteSet target = set_from_json(j.at("target"));
    std::vector<std::vector<Natural>> coeff;
    for (const auto& row : j.at("coeff")) {
        coeff.emplace_back();
        for (const auto& v : row) coeff.back().push_back(natural_from_json(v));
    }
    return Multimap(std::move(source), std::move(target), std::move(coeff));
}

Square square_from_json(const nlohmann::json& j) {
    Square sq{multimap_from_json(j.at("alpha")), multimap_from_json(j.at("beta")),
              multimap_from_json(j.at("gamma")), multimap_from_json(j.at("delta"))};
    sq.validate();
    return sq;
}

}  // namespace precut
