#include "precut/pairs.hpp"

#include "precut/error.hpp"

#include <algorithm>

namespace precut {

const char* pair_kind_name(PairKind kind) {
    switch (kind) {
        case PairKind::CC: return "cc";
        case PairKind::NC: return "nc";
        case PairKind::NN: return "nn";
    }
    return "?";
}

PairKind pair_kind_from_name(const std::string& name) {
    if (name == "cc") return PairKind::CC;
    if (name == "nc") return PairKind::NC;
    if (name == "nn") return PairKind::NN;
    throw Error(ErrorCode::InvalidInput, "unknown pair kind " + name);
}

bool satisfies(PairKind kind, const Preorder& p, const Preorder& q) {
    if (p.size() != q.size()) throw Error(ErrorCode::GroundMismatch, "pair components on different grounds");
    const int n = p.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            switch (kind) {
                case PairKind::CC:
                    if (!p.comparable(x, y) && !q.same_bubble(x, y)) return false;
                    if (!q.comparable(x, y) && !p.same_bubble(x, y)) return false;
                    break;
                case PairKind::NC:
                    if (!q.comparable(x, y) && !p.same_bubble(x, y)) return false;
                    if (p.less(x, y) && !q.same_bubble(x, y)) return false;
                    break;
                case PairKind::NN:
                    if (p.less(x, y) && !q.same_bubble(x, y)) return false;
                    if (q.less(x, y) && !p.same_bubble(x, y)) return false;
                    break;
            }
        }
    return true;
}

PairClassification classify_pair(const Preorder& p, const Preorder& q) {
    return {satisfies(PairKind::CC, p, q), satisfies(PairKind::NC, p, q), satisfies(PairKind::NC, q, p),
            satisfies(PairKind::NN, p, q)};
}

std::optional<PreorderPair> normalize(PairKind kind, const Preorder& p, const Preorder& q) {
    if (satisfies(kind, p, q)) return PreorderPair{p, q, kind, false};
    if (kind == PairKind::NC && satisfies(kind, q, p)) return PreorderPair{q, p, kind, true};
    return std::nullopt;
}

bool is_refinement_along(const Preorder& p, const Preorder& q, const std::vector<Mask>& refinable) {
    if (!is_refinement(p, q)) return false;
    const auto pb = bubbles(p);
    for (Mask b : bubbles(q)) {
        if (std::find(refinable.begin(), refinable.end(), b) != refinable.end()) continue;
        if (std::find(pb.begin(), pb.end(), b) == pb.end()) return false;
    }
    return true;
}

namespace {

bool inside_some(Mask b, const std::vector<Mask>& blocks) {
    return std::any_of(blocks.begin(), blocks.end(), [&](Mask c) { return (b & ~c) == 0; });
}

void check_shape(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::FrameViolation, what);
}

}  // namespace

void validate_frame(PairKind kind, const PairFrame& frame) {
    check_shape(frame.first.size() == frame.second.size(), "frame components on different grounds");
    if (kind == PairKind::CC)
        check_shape(is_total_preorder(frame.first), "cc needs a total preorder T_1");
    else
        check_shape(is_partition_order(frame.first), "first frame must be a partition order O_1");
    if (kind == PairKind::NN)
        check_shape(is_partition_order(frame.second), "nn needs a partition order O_2");
    else
        check_shape(is_total_preorder(frame.second), "second frame must be a total preorder T_2");

    const auto o1 = bubbles(frame.first);
    const auto o2 = bubbles(frame.second);
    for (Mask b : frame.refinable_first) {
        check_shape(std::find(o1.begin(), o1.end(), b) != o1.end(), "B_1 holds a set that is not a bubble of O_1");
        check_shape(inside_some(b, o2), "a bubble of B_1 is not inside a bubble of O_2");
        check_shape(std::find(frame.refinable_second.begin(), frame.refinable_second.end(), b) ==
                        frame.refinable_second.end(),
                    "B_1 and B_2 share a bubble");
    }
    for (Mask b : frame.refinable_second) {
        check_shape(std::find(o2.begin(), o2.end(), b) != o2.end(), "B_2 holds a set that is not a bubble of O_2");
        check_shape(inside_some(b, o1), "a bubble of B_2 is not inside a bubble of O_1");
    }
}

PreorderPair generate_pair(PairKind kind, const PairFrame& frame, const Preorder& refine_first,
                           const Preorder& refine_second) {
    validate_frame(kind, frame);
    if (refine_first.size() != frame.first.size() || !is_refinement_along(refine_first, frame.first, frame.refinable_first))
        throw Error(ErrorCode::NotARefinement, "first preorder is not a refinement of the frame along B_1");
    if (refine_second.size() != frame.second.size() ||
        !is_refinement_along(refine_second, frame.second, frame.refinable_second))
        throw Error(ErrorCode::NotARefinement, "second preorder is not a refinement of the frame along B_2");
    return PreorderPair{refine_first, refine_second, kind, false};
}

namespace {

std::vector<Mask> refined_bubbles(const Preorder& frame, const Preorder& p) {
    std::vector<Mask> out;
    const auto pb = bubbles(p);
    for (Mask b : bubbles(frame))
        if (std::find(pb.begin(), pb.end(), b) == pb.end()) out.push_back(b);
    return out;
}

}  // namespace

PairFrame reconstruct_frame(PairKind kind, const Preorder& p, const Preorder& q) {
    PairFrame f;
    f.first = kind == PairKind::CC ? minimal_total_refinement(p) : component_partition(p);
    f.second = kind == PairKind::NN ? component_partition(q) : minimal_total_refinement(q);
    f.refinable_first = refined_bubbles(f.first, p);
    f.refinable_second = refined_bubbles(f.second, q);
    return f;
}

std::vector<std::vector<int>> cc_matrix(const Preorder& t1, const Preorder& t2) {
    if (t1.size() != t2.size()) throw Error(ErrorCode::GroundMismatch, "matrix of pair on different grounds");
    const auto rows = ordered_bubbles(t1);
    const auto cols = ordered_bubbles(t2);
    std::vector<std::vector<int>> a(rows.size(), std::vector<int>(cols.size(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) a[i][j] = popcount(rows[i] & cols[j]);
    return a;
}

}  // namespace precut
