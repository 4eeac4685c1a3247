#include "chronkh/cube.hpp"

#include <ostream>

namespace chronkh {

ResolutionCube::ResolutionCube(PlanarDiagram d, int maxCrossings)
    : diagram_(std::move(d)), n_(diagram_.n()) {
    if (n_ > maxCrossings) throw TooLarge("diagram has too many crossings");

    const unsigned total = 1u << n_;
    vertices_.resize(total);
    std::vector<bool> xi(n_);
    for (unsigned mask = 0; mask < total; ++mask) {
        for (int i = 0; i < n_; ++i) xi[i] = (mask >> i) & 1;
        CubeVertex& v = vertices_[mask];
        v.mask = mask;
        v.weight = __builtin_popcount(mask);
        v.state = diagram_.resolve(xi);
    }
    ell0_ = vertices_[0].state.circleCount();
    for (auto& v : vertices_) {
        int num1 = v.weight - v.state.circleCount() + ell0_;
        int num2 = v.weight + v.state.circleCount() - ell0_;
        if (num1 % 2 || num2 % 2) throw std::logic_error("non-integral vertex shift");
        v.shift = {num1 / 2, num2 / 2};
    }

    edges_.resize(static_cast<std::size_t>(total) * std::max(n_, 1));
    eps_.resize(edges_.size());
    for (unsigned mask = 0; mask < total; ++mask)
        for (int dir = 0; dir < n_; ++dir) {
            if ((mask >> dir) & 1) continue;
            CubeEdge& e = edges_[edgeId(mask, dir)];
            e.source = mask;
            e.dir = dir;
            e.arc = diagram_.surgeryArc(vertices_[mask].state, dir);
        }
}

std::size_t ResolutionCube::countEdges() const {
    return n_ == 0 ? 0 : static_cast<std::size_t>(n_) << (n_ - 1);
}

UnitMonomial ResolutionCube::psi(unsigned base, int j, int k) const {
    if (j >= k || ((base >> j) & 1) || ((base >> k) & 1))
        throw std::logic_error("bad face coordinates");
    const SurgeryArc& a = edges_[edgeId(base, j)].arc;
    const SurgeryArc& b = edges_[edgeId(base, k)].arc;

    if (a.isMerge && b.isMerge) {
        bool samePair = (a.tailCircle == b.tailCircle && a.headCircle == b.headCircle) ||
                        (a.tailCircle == b.headCircle && a.headCircle == b.tailCircle);
        if (!samePair) return UnitMonomial::X();
        // two saddles between one pair of circles: value depends on alignment
        return a.tailCircle == b.tailCircle ? UnitMonomial::Y() : UnitMonomial::X();
    }
    if (!a.isMerge && !b.isMerge) {
        if (a.tailCircle != b.tailCircle) return UnitMonomial::Y();
        // both arcs on one circle
        const Circle& c = vertices_[base].state.circles[a.tailCircle];
        const int len = c.visitCount();
        auto inOpenArc = [&](int from, int to, int v) {
            // is v strictly inside the forward cyclic interval (from, to)?
            int d1 = (to - from + len) % len;
            int d2 = (v - from + len) % len;
            return d2 > 0 && d2 < d1;
        };
        bool tIn = inOpenArc(a.tailVisit, a.headVisit, b.tailVisit);
        bool hIn = inOpenArc(a.tailVisit, a.headVisit, b.headVisit);
        if (tIn == hIn) return UnitMonomial::Y();  // endpoints not interleaved

        // ladybug: the arcs sit on opposite sides of the circle
        if (a.tailLeft != a.headLeft || b.tailLeft != b.headLeft || a.tailLeft == b.tailLeft)
            throw UnclassifiableFace("inconsistent arc sides on a one-circle face");
        // walk around the circle, oriented so that arc a lies on the left,
        // starting from a's tail; which endpoint of b comes first decides
        bool forward = a.tailLeft;
        int step = forward ? 1 : len - 1;
        for (int v = (a.tailVisit + step) % len;; v = (v + step) % len) {
            if (v == b.tailVisit) return UnitMonomial::X() * UnitMonomial::Y();
            if (v == b.headVisit) return UnitMonomial::one();
            if (v == a.tailVisit) throw UnclassifiableFace("endpoint walk failed");
        }
    }
    // one merge, one split: the order convention — doing the merge first
    // (lower direction) gives Z^-1, doing the split first gives Z
    return a.isMerge ? UnitMonomial::Z(-1) : UnitMonomial::Z(1);
}

MonoMap ResolutionCube::edgeMap(unsigned mask, int dir) const {
    const CubeEdge& e = edges_[edgeId(mask, dir)];
    return edgeMonoMap(vertices_[mask].state, vertices_[mask | (1u << dir)].state, e.arc,
                       diagram_.crossings()[dir].arrowFlip);
}

void ResolutionCube::solveSigns() {
    for (auto& u : eps_) u = UnitMonomial::one();
    solveSubcube(n_, 0);
    signsSolved_ = true;
    verifySigns();
}

/// Signs all edges with direction < dim inside the subcube spanned by the
/// low dim coordinates at the fixed high coordinates. The two halves are
/// solved independently; the connecting edges are then propagated from the
/// sub-base vertex, whose edge is normalized to 1. The obstruction being a
/// cocycle makes the propagation consistent; verifySigns() is the oracle.
void ResolutionCube::solveSubcube(int dim, unsigned highMask) {
    if (dim == 0) return;
    const int d = dim - 1;
    const unsigned hi = 1u << d;
    solveSubcube(d, highMask);
    solveSubcube(d, highMask | hi);

    eps_[edgeId(highMask, d)] = UnitMonomial::one();
    // BFS in mask order: every nonzero mask has a predecessor with fewer bits
    for (unsigned m = 1; m < hi; ++m) {
        int j = __builtin_ctz(m);
        unsigned prev = m ^ (1u << j);
        unsigned rho = highMask | prev;
        UnitMonomial value = (-psi(rho, j, d).inverse()) * eps_[edgeId(rho | hi, j)] *
                             eps_[edgeId(rho, d)] * eps_[edgeId(rho, j)].inverse();
        eps_[edgeId(highMask | m, d)] = value;
    }
}

void ResolutionCube::verifySigns() const {
    for (unsigned base = 0; base < (1u << n_); ++base)
        for (int j = 0; j < n_; ++j) {
            if ((base >> j) & 1) continue;
            for (int k = j + 1; k < n_; ++k) {
                if ((base >> k) & 1) continue;
                UnitMonomial lhs =
                    psi(base, j, k) * eps_[edgeId(base | (1u << j), k)] * eps_[edgeId(base, j)];
                UnitMonomial rhs =
                    -(eps_[edgeId(base | (1u << k), j)] * eps_[edgeId(base, k)]);
                if (!(lhs == rhs))
                    throw InconsistentObstruction("face condition fails at base " +
                                                  std::to_string(base) + " dirs " +
                                                  std::to_string(j) + "," + std::to_string(k));
            }
        }
}

void ResolutionCube::dumpDebug(std::ostream& out) const {
    for (unsigned mask = 0; mask < (1u << n_); ++mask)
        for (int dir = 0; dir < n_; ++dir) {
            if ((mask >> dir) & 1) continue;
            const CubeEdge& e = edges_[edgeId(mask, dir)];
            out << mask << ' ' << dir << ' ' << (e.arc.isMerge ? "merge" : "split") << ' '
                << eps_[edgeId(mask, dir)].render() << '\n';
        }
    for (unsigned base = 0; base < (1u << n_); ++base)
        for (int j = 0; j < n_; ++j) {
            if ((base >> j) & 1) continue;
            for (int k = j + 1; k < n_; ++k) {
                if ((base >> k) & 1) continue;
                out << base << ' ' << j << ' ' << k << ' ' << psi(base, j, k).render() << '\n';
            }
        }
}

}  // namespace chronkh
