#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chronkh/complex.hpp"

namespace chronkh {

using Rational = boost::multiprecision::cpp_rational;
/// Dense rational matrix, row major.
using RatMat = std::vector<std::vector<Rational>>;

/// Multiplication table of the shifted circle algebra after a
/// specialization. Letters are indexed 0 = v+, 1 = v-; coeff[i][j][k] is the
/// coefficient of letter k in the product (letter i) * (letter j). The shift
/// conjugation cancels the merge coefficients exactly, so the table is the
/// classical one for every specialization.
struct AlgebraTable {
    Int coeff[2][2][2];
};

AlgebraTable algebraProduct(const Specialization& s);
bool algebraAssociative(const AlgebraTable& t);
bool algebraUnital(const AlgebraTable& t);
/// mul composed with the graded swap equals mul; the swap scalar is trivial
/// on every pair with a nonzero product.
bool algebraSymmetric(const AlgebraTable& t, const Specialization& s);

/// Row-sparse linear map between weight groups: per source generator, sorted
/// pairs (target index, coefficient).
using SparseRows = std::vector<std::vector<std::pair<int, RingElement>>>;

SparseRows composeRows(const SparseRows& second, const SparseRows& first);
bool rowsZero(const SparseRows& r);
bool rowsEqual(const SparseRows& a, const SparseRows& b);
/// a == sign * b after specializing every coefficient.
bool rowsEqualSpecialized(const SparseRows& a, const SparseRows& b, const Specialization& s,
                          int sign);

/// The two-letter action of the shifted circle algebra on a complex through
/// one basepoint: a fresh algebra letter is inserted as the leftmost (left
/// action) or rightmost (right action) tensor factor, bubbled next to the
/// basepoint circle's letter and merged into it. A per-vertex unit
/// compensation (the inverse twist of the letter degree against the vertex
/// shift) makes both letter actions commute with the differential over the
/// full ring.
struct ModuleAction {
    bool left = true;
    Basepoint basepoint;
    std::vector<SparseRows> plus;   // per weight
    std::vector<SparseRows> minus;  // per weight
};

/// Index of the circle carrying the basepoint in a resolved state.
int basepointCircle(const PlanarDiagram& d, const ResolutionState& st, const Basepoint& bp);

ModuleAction buildAction(const GradedChainComplex& c, const Basepoint& bp, bool left);

/// Strict commutation of both letter actions with the differential over the
/// full ring.
bool actionIsChainMap(const ModuleAction& a, const GradedChainComplex& c);

/// One left action per basepoint of the complex's diagram.
std::vector<ModuleAction> multiBasepointActions(const GradedChainComplex& c);

/// The basepoint-slide correction endomorphism of the specialized algebra:
/// phi(v+) = v+ - specialize(1 + XY) v-, phi(v-) = v-. m[r][c] is the
/// coefficient of letter r in phi(letter c).
struct SlideMatrix {
    Int m[2][2];

    Int det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    bool isIdentity() const { return m[0][0] == 1 && m[1][1] == 1 && m[0][1] == 0 && m[1][0] == 0; }
};

SlideMatrix slideMatrix(const Specialization& s);

/// Rational homology of a specialized complex together with a canonical
/// deterministic basis of cycle representatives, supporting the computation
/// of induced matrices of chain endomorphisms.
class RationalHomologyBasis {
public:
    RationalHomologyBasis(const GradedChainComplex& c, const Specialization& s);

    int n() const { return static_cast<int>(reps_.size()) - 1; }
    long dim(int w) const { return static_cast<long>(reps_[w].size()); }
    /// Induced matrix on weight-w homology of a chain endomorphism given by
    /// its weight-w rows (must be a cycle-preserving map).
    RatMat induce(int w, const SparseRows& rows, const Specialization& s) const;

private:
    // per weight: chosen representatives (chain vectors) and a reduced basis
    // of the image of the incoming differential, both over Q
    std::vector<std::vector<std::vector<Rational>>> reps_;
    std::vector<std::vector<std::vector<Rational>>> image_;
};

/// Comparison of the two basepoint actions for a basepoint slid across a
/// crossing (arcA and arcB consecutive arcs of the same component), on
/// homology over Q in the canonical basis.
struct SlideReport {
    bool oddEqual = false;        // odd theory: induced matrices literally equal
    bool evenLiteral = false;     // even theory: literally equal already
    bool evenIsomorphic = false;  // matched under the bounded conjugation search
    bool evenNeededCorrection = false;  // matching used the slide correction map
    std::string note;
};

SlideReport slideInvarianceCheck(const PlanarDiagram& d, int arcA, int arcB);

/// The tensor product of two based complexes over the shifted circle
/// algebra: product generators with the second factor's basepoint letter
/// pinned to v+, and v- letters arriving there rewritten through the first
/// factor's right action. Gradings use synthetic metadata compatible with
/// the homology machinery.
struct FusedComplex {
    int nMinus = 0;
    int shiftP2 = 0, shiftQ2 = 0;
    std::vector<std::vector<ChainGenerator>> groups;  // bideg meaningful; mask/word synthetic
    std::vector<SparseRows> diffs;

    DSquaredReport checkDSquared() const;
};

FusedComplex tensorOverAlgebra(const GradedChainComplex& a, const GradedChainComplex& b);

SpecializedComplex specializeFused(const FusedComplex& f, const Specialization& s);

}  // namespace chronkh
