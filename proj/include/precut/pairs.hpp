#pragma once

#include "precut/preorder.hpp"

#include <optional>
#include <string>
#include <vector>

namespace precut {

enum class PairKind { CC, NC, NN };

const char* pair_kind_name(PairKind kind);
PairKind pair_kind_from_name(const std::string& name);

bool satisfies(PairKind kind, const Preorder& p, const Preorder& q);

struct PairClassification {
    bool cc = false;
    bool nc = false;
    bool cn = false;
    bool nn = false;
};

PairClassification classify_pair(const Preorder& p, const Preorder& q);

struct PreorderPair {
    Preorder p;
    Preorder q;
    PairKind kind = PairKind::CC;
    /// Set when a cn pair was normalized to nc by exchanging the components.
    bool swapped = false;
};

/// The pair as the given kind, swapping a cn pair into nc form; nullopt if neither fits.
std::optional<PreorderPair> normalize(PairKind kind, const Preorder& p, const Preorder& q);

/// Generator data: `first`/`second` are T_1/T_2 (cc), O_1/T_2 (nc) or O_1/O_2 (nn);
/// the refinable sets are the bubble sets B_1 and B_2.
struct PairFrame {
    Preorder first;
    Preorder second;
    std::vector<Mask> refinable_first;
    std::vector<Mask> refinable_second;
};

/// P refines Q and every bubble of Q outside `refinable` is a bubble of P.
bool is_refinement_along(const Preorder& p, const Preorder& q, const std::vector<Mask>& refinable);

/// Throws FrameViolation if the frame is not a basic situation of the kind's shape.
void validate_frame(PairKind kind, const PairFrame& frame);

/// Throws FrameViolation or NotARefinement.
PreorderPair generate_pair(PairKind kind, const PairFrame& frame, const Preorder& refine_first,
                           const Preorder& refine_second);

/// A frame from which generate_pair(kind, frame, p, q) rebuilds (p, q).
PairFrame reconstruct_frame(PairKind kind, const Preorder& p, const Preorder& q);

/// a_ij = |b_i ∩ c_j| over the bubble sequences; throws NotTotalPreorder.
std::vector<std::vector<int>> cc_matrix(const Preorder& t1, const Preorder& t2);

}  // namespace precut
