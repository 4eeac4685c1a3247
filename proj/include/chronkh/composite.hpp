#pragma once

#include <memory>
#include <vector>

#include "chronkh/complex.hpp"

namespace chronkh {

/// D followed by D' as one diagram: D' arc labels are shifted past D's,
/// crossings appended, free loops added. Cube directions 0..n-1 belong to D
/// and n..n+n'-1 to D'.
PlanarDiagram disjointUnion(const PlanarDiagram& d, const PlanarDiagram& dPrime);

/// The cube of the disjoint union carrying the combined sign assignment:
/// D-direction edges keep the first factor's signs, D'-direction edges get
/// the second factor's signs twisted by a unit depending on the D-vertex's
/// weight and bidegree shift. The result passes the full face verification.
std::unique_ptr<ResolutionCube> unionCube(const PlanarDiagram& d, const PlanarDiagram& dPrime);

/// The complex of the disjoint union diagram, signed via unionCube.
GradedChainComplex unionComplex(const PlanarDiagram& d, const PlanarDiagram& dPrime);

/// The tensor product of two assembled complexes with the graded-calculus
/// differential: d(x (x) y) = dx (x) y + (sign and unit twist) x (x) dy.
/// `twisted = false` drops the unit-monomial twist (plain alternating signs
/// only) and serves as the negative control.
class TensorComplex {
public:
    struct Gen {
        unsigned maskA = 0;
        Word wordA = 0;
        unsigned maskB = 0;
        Word wordB = 0;
    };

    TensorComplex(const GradedChainComplex& a, const GradedChainComplex& b, bool twisted = true);

    int n() const { return nA_ + nB_; }
    const std::vector<Gen>& group(int w) const { return groups_[w]; }
    const std::vector<std::vector<std::pair<int, RingElement>>>& diff(int w) const {
        return diffs_[w];
    }
    int indexOf(int w, unsigned maskA, Word wordA, unsigned maskB, Word wordB) const;

    DSquaredReport checkDSquared() const;

private:
    const GradedChainComplex* a_;
    const GradedChainComplex* b_;
    int nA_ = 0, nB_ = 0;
    std::vector<std::vector<Gen>> groups_;
    std::vector<std::vector<std::vector<std::pair<int, RingElement>>>> diffs_;
    std::vector<std::map<std::pair<unsigned, unsigned>, int>> offsets_;  // (maskA,maskB) -> base
};

/// The generator-wise comparison between the tensor product of the factor
/// complexes and the complex of the disjoint union: a bijection sending each
/// product generator to a unit multiple of a union generator (the unit comes
/// from reordering the two factors' circles into the union state's canonical
/// order).
struct ComparisonMap {
    // per weight, per tensor generator: (union generator index, unit scalar)
    std::vector<std::vector<std::pair<int, UnitMonomial>>> entries;

    bool bijective(const GradedChainComplex& unionC) const;
    /// Checks commutation with the differentials over the full ring.
    bool chainMap(const TensorComplex& t, const GradedChainComplex& unionC) const;
};

ComparisonMap comparisonMap(const GradedChainComplex& a, const GradedChainComplex& b,
                            const TensorComplex& t, const GradedChainComplex& unionC);

/// The connected sum of two based diagrams: both basepoint arcs are cut and
/// cross-joined respecting orientation; arc labels are canonically renumbered.
/// A crossingless based unknot acts as the identity.
PlanarDiagram connectedSum(const PlanarDiagram& d, const PlanarDiagram& dPrime);

}  // namespace chronkh
