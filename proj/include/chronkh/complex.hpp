#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chronkh/cube.hpp"
#include "chronkh/homology.hpp"

namespace chronkh {

struct ChainGenerator {
    unsigned mask = 0;
    Word word = 0;
    BiDegree bideg;  // vertex shift plus word degree (bracket level, integral)
};

/// Laurent polynomial in one variable q.
struct LaurentPoly {
    std::map<int, long long> coeffs;

    void add(int exp, long long c);
    LaurentPoly operator*(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const = default;
    /// substitute q -> q^-1
    LaurentPoly inverted() const;
    std::string render() const;
};

/// Laurent polynomial in two variables; exponents are doubled so that the
/// possibly half-integral global shift stays integral.
struct LaurentPoly2 {
    std::map<std::pair<int, int>, long long> coeffs;

    void add(int p2, int q2, long long c);
    bool operator==(const LaurentPoly2& o) const = default;
    LaurentPoly collapsed() const;  // exponent (p2+q2)/2
};

struct DSquaredReport {
    bool ok = true;
    std::string firstFailure;
};

/// The chain complex of a diagram over the full ring: chain groups indexed
/// by cube weight, with the solved sign assignment folded into the
/// differential. Homological degree is weight minus nMinus; the global
/// bidegree shift is kept as metadata (it can be half-integral).
class GradedChainComplex {
public:
    static GradedChainComplex assemble(const PlanarDiagram& d, int maxCrossings = 20);
    /// Assembles from an already-signed cube (used by the composite
    /// constructions, whose sign assignments are not the solver's).
    static GradedChainComplex assembleWithCube(std::unique_ptr<ResolutionCube> cube);

    int n() const { return cube_->n(); }
    int nPlus() const { return nPlus_; }
    int nMinus() const { return nMinus_; }
    int ell0() const { return cube_->ell0(); }
    const ResolutionCube& cube() const { return *cube_; }
    const PlanarDiagram& diagram() const { return cube_->diagram(); }

    const std::vector<ChainGenerator>& group(int w) const { return groups_[w]; }
    /// Differential out of weight w: per source generator, sorted pairs
    /// (index into group(w+1), coefficient).
    const std::vector<std::vector<std::pair<int, RingElement>>>& diff(int w) const {
        return diffs_[w];
    }

    int homDegree(int w) const { return w - nMinus_; }
    /// Doubled components of the global bidegree shift.
    int shiftP2() const { return nPlus_ - ell0() - 2 * nMinus_; }
    int shiftQ2() const { return nPlus_ + ell0() - 2 * nMinus_; }
    std::pair<int, int> outBidegree2(const ChainGenerator& g) const {
        return {2 * g.bideg.a + shiftP2(), 2 * g.bideg.b + shiftQ2()};
    }

    DSquaredReport checkDSquared() const;
    bool bidegreeHomogeneous() const;
    LaurentPoly2 eulerCharacteristic() const;

    // mutable access for fault-injection tests and composite constructions
    std::vector<std::vector<std::pair<int, RingElement>>>& mutableDiff(int w) { return diffs_[w]; }

    /// Index of a generator within its weight group.
    int indexOf(int w, unsigned mask, Word word) const;

private:
    std::unique_ptr<ResolutionCube> cube_;
    int nPlus_ = 0, nMinus_ = 0;
    std::vector<std::vector<ChainGenerator>> groups_;      // by weight 0..n
    std::vector<std::vector<std::vector<std::pair<int, RingElement>>>> diffs_;
    std::vector<std::map<unsigned, int>> offsets_;         // weight -> mask -> first index

    GradedChainComplex() = default;
    void buildGroups();
};

/// Integer coefficients obtained by one of the eight specializations.
struct SpecializedComplex {
    Specialization spec;
    int nMinus = 0;
    int shiftP2 = 0, shiftQ2 = 0;
    std::vector<std::vector<ChainGenerator>> groups;
    std::vector<std::vector<std::vector<std::pair<int, Int>>>> diffs;

    DSquaredReport checkDSquared() const;
};

SpecializedComplex specializeComplex(const GradedChainComplex& c, const Specialization& s);

/// Homology of a specialized complex: over Z (rank + torsion) when field is
/// empty, over Q when field == 0, over F_p when field == p.
HomologyTable homology(const SpecializedComplex& c, std::optional<long> field = std::nullopt);

LaurentPoly eulerFromTable(const HomologyTable& t);

/// Kauffman-bracket state sum normalized so the unknot gives q + q^-1.
LaurentPoly jonesOracle(const PlanarDiagram& d);

}  // namespace chronkh
