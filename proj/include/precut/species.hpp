#pragma once

#include "precut/bits.hpp"
#include "precut/preorder.hpp"

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace precut {

/// An element of S[[n]] in a flat positional encoding chosen by its species.
struct Element {
    std::uint8_t size = 0;
    std::vector<std::uint32_t> words;

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept;
};

std::uint64_t fnv1a(const Element& e);

enum class Projection { First = 1, Second = 2 };

inline Projection other(Projection p) { return p == Projection::First ? Projection::Second : Projection::First; }
inline int index(Projection p) { return static_cast<int>(p); }
Projection projection_from_int(int which);

/// X = A ⊔ B ⊔ C ⊔ D over positions of [n]; the big cuts are (A⊔B, C⊔D) for π_1 and (A⊔C, B⊔D) for π_2.
struct Quadrant {
    Mask a = 0, b = 0, c = 0, d = 0;
    Mask all() const { return a | b | c | d; }
};

/// Corner data of the extension step; each element is positional on its own subset.
struct Corners {
    Quadrant parts;
    Element ab, cd, ac, bd;
};

class Species {
public:
    virtual ~Species() = default;
    Species() = default;
    Species(const Species&) = delete;
    Species& operator=(const Species&) = delete;

    virtual std::string name() const = 0;
    /// Encoding family shared by species with the same element layout.
    virtual std::string family() const { return name(); }
    /// Largest n for which elements(n) may be requested.
    virtual int cap() const = 0;
    /// Restriction to the positions in `keep`, renumbered positionally.
    virtual Element restrict(const Element& s, Mask keep) const = 0;
    /// Transport along the bijection i -> image[i].
    virtual Element relabel(const Element& s, std::span<const int> image) const = 0;
    virtual Preorder project(const Element& s, Projection which) const = 0;
    virtual nlohmann::json to_json(const Element& s) const = 0;
    virtual Element from_json(const nlohmann::json& j) const = 0;
    virtual std::string describe(const Element& s) const;
    /// The extension step: candidate elements on the full ground of the corners.
    virtual std::optional<std::vector<Element>> extend(const Corners&) const { return std::nullopt; }

    /// All elements on [n], sorted; throws CapExceeded above cap().
    const std::vector<Element>& elements(int n) const;
    /// Position in elements(e.size), or -1.
    long index_of(const Element& e) const;

protected:
    virtual std::vector<Element> generate(int n) const = 0;

private:
    struct Catalog {
        std::vector<Element> list;
        std::unordered_map<Element, std::uint32_t, ElementHash> index;
    };
    const Catalog& catalog(int n) const;

    mutable std::recursive_mutex mutex_;
    mutable std::vector<std::unique_ptr<Catalog>> catalogs_;
};

using SpeciesPtr = std::shared_ptr<const Species>;

using ElementPair = std::pair<Element, Element>;

/// Cut coproduct Δ^which_{A,B}(s); nullopt is the zero value.
std::optional<ElementPair> delta(const Species& S, Projection which, const Element& s, Mask a, Mask b);

/// Dual product: all s on [n] with Δ^which_{A,B}(s) = (u, v), where A ⊔ B = [n].
std::vector<Element> mu(const Species& S, Projection which, const Element& u, const Element& v, Mask a, Mask b);

enum class Stage {
    None,
    ProjectionMonotonicity,
    CutEquality,
    ExtensionUniqueness,
    CutValidity,
    PullbackCommute,
    Counit,
    Unit,
    Coassociativity,
    Associativity,
    Compatibility,
    Grading,
    Irreducibility,
};

const char* stage_name(Stage stage);

struct VerificationReport {
    bool passed = true;
    Stage stage = Stage::None;
    nlohmann::json witness;
    nlohmann::json stats = nlohmann::json::object();

    static VerificationReport failure(Stage stage, nlohmann::json witness);
};

nlohmann::json to_json(const VerificationReport& r);

VerificationReport check_species_over_preorders(const Species& S, int nmax);
VerificationReport check_intertwined(const Species& S, int nmax);
VerificationReport check_bimonoid(const Species& S, Projection coproduct, int nmax);

/// Every ordered 4-part decomposition of [n], in a fixed order.
std::vector<Quadrant> quadrants(int n);

nlohmann::json mask_json(Mask m);

}  // namespace precut
