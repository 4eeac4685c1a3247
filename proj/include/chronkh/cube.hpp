#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "chronkh/diagram.hpp"
#include "chronkh/scalars.hpp"
#include "chronkh/tqft.hpp"

namespace chronkh {

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnclassifiableFace : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentObstruction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CubeVertex {
    unsigned mask = 0;
    int weight = 0;
    ResolutionState state;
    BiDegree shift;  // ((w - l + l0)/2, (w + l - l0)/2)
};

struct CubeEdge {
    unsigned source = 0;  // bit dir is 0
    int dir = 0;
    SurgeryArc arc;
};

/// The cube of resolutions of a diagram: all 2^n states with their grading
/// shifts, all saddle edges, the commutativity obstruction psi on 2-faces,
/// and a solved sign assignment eps with coboundary -psi.
class ResolutionCube {
public:
    explicit ResolutionCube(PlanarDiagram d, int maxCrossings = 20);

    const PlanarDiagram& diagram() const { return diagram_; }
    int n() const { return n_; }
    int ell0() const { return ell0_; }
    const CubeVertex& vertex(unsigned mask) const { return vertices_[mask]; }
    const CubeEdge& edge(unsigned mask, int dir) const { return edges_[edgeId(mask, dir)]; }
    std::size_t edgeCount() const { return edges_.size() > 0 ? countEdges() : 0; }

    /// The obstruction on the face at base mask (bits j and k clear), j < k:
    /// composing the direction-j saddle first differs from the other order
    /// by exactly this unit.
    UnitMonomial psi(unsigned base, int j, int k) const;

    /// Edge map of the underlying TQFT, without the sign correction.
    MonoMap edgeMap(unsigned mask, int dir) const;

    void solveSigns();
    /// Accepts an externally assigned eps after verifying it.
    void adoptSigns() {
        verifySigns();
        signsSolved_ = true;
    }
    bool signsSolved() const { return signsSolved_; }
    const UnitMonomial& eps(unsigned mask, int dir) const { return eps_[edgeId(mask, dir)]; }
    void setEps(unsigned mask, int dir, const UnitMonomial& u) { eps_[edgeId(mask, dir)] = u; }

    /// Checks psi eps(1*)eps(*0) = -eps(*1)eps(0*) on every face, the exact
    /// condition that makes the two signed composites around a face cancel.
    void verifySigns() const;

    /// One line per edge `mask dir kind eps` then per face `mask j k psi`.
    void dumpDebug(std::ostream& out) const;

private:
    PlanarDiagram diagram_;
    int n_ = 0;
    int ell0_ = 0;
    std::vector<CubeVertex> vertices_;
    std::vector<CubeEdge> edges_;  // indexed by edgeId; unused ids are inert
    std::vector<UnitMonomial> eps_;
    bool signsSolved_ = false;

    std::size_t edgeId(unsigned mask, int dir) const {
        return static_cast<std::size_t>(mask) * n_ + dir;
    }
    std::size_t countEdges() const;
    void solveSubcube(int dim, unsigned highMask);
};

}  // namespace chronkh
