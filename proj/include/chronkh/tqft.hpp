#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "chronkh/diagram.hpp"
#include "chronkh/scalars.hpp"

namespace chronkh {

/// A basis word over {v+, v-}, one letter per circle in the state's
/// canonical order. Bit i set means letter i is v-.
using Word = std::uint32_t;

inline constexpr BiDegree kPlusDeg{1, 0};
inline constexpr BiDegree kMinusDeg{0, -1};

inline BiDegree letterDegree(bool minus) { return minus ? kMinusDeg : kPlusDeg; }

/// Sum of letter degrees of bits [0, len).
BiDegree wordDegree(Word w, int len);

/// A linear map between word modules whose matrix entries are all unit
/// monomials, at most a few per row. Rows are indexed densely by source
/// word; this is the workhorse representation while maps are being built
/// from elementary pieces.
struct MonoMap {
    int srcLen = 0;
    int dstLen = 0;
    BiDegree deg{};
    int births = 0, merges = 0, deaths = 0, splits = 0;
    std::vector<std::vector<std::pair<Word, UnitMonomial>>> rows;

    static MonoMap identity(int len);
    void scale(const UnitMonomial& u);
};

/// Post-compose with the swap of adjacent factors i, i+1 (scalar
/// lambda(deg m_i, deg m_{i+1})).
void applyTwist(MonoMap& m, int i);
/// Post-compose with the elementary merge of factors i, i+1, extended over
/// the prefix by the graded tensor rule.
void applyMergeAt(MonoMap& m, int i);
/// Post-compose with the elementary split of factor i.
void applySplitAt(MonoMap& m, int i);
/// Post-compose with a birth inserted at position i.
void applyBirthAt(MonoMap& m, int i);
/// Post-compose with the insertion of a fixed letter (v- if minus, else v+)
/// at position i, with the letter's graded twist over the prefix. Unlike a
/// birth this is module-level plumbing, not a cobordism generator.
void applyInsertAt(MonoMap& m, int i, bool minus);
/// Post-compose with the death of factor i.
void applyDeathAt(MonoMap& m, int i);

/// General-position map entries with ring coefficients; used for composites
/// and differentials.
struct SparseMap {
    int srcLen = 0;
    int dstLen = 0;
    std::map<Word, std::map<Word, RingElement>> rows;

    static SparseMap fromMono(const MonoMap& m);
    static SparseMap identity(int len);
    bool isZero() const;
    SparseMap compose(const SparseMap& inner) const;  // this after inner
    SparseMap& operator+=(const SparseMap& o);
    SparseMap scaled(const UnitMonomial& u) const;
    bool operator==(const SparseMap& o) const;
    /// Finds a unit monomial u with *this == u * other, if one exists and
    /// both maps are nonzero.
    std::optional<UnitMonomial> ratioTo(const SparseMap& other) const;
};

/// Elementary two-to-one merge as a standalone map: v+v+ -> v+,
/// v+v- -> v-, v-v+ -> XZ v-, v-v- -> 0.
SparseMap elementaryMerge();
/// Elementary one-to-two split: v+ -> v-v+ + YZ v+v-, v- -> v-v-.
SparseMap elementarySplit();
SparseMap elementaryBirth();
SparseMap elementaryDeath();
/// Adjacent-factor swap on a state of the given length.
SparseMap twistMap(int len, int i);

/// The full edge map of a saddle between two resolution states: elementary
/// merge/split on the circles named by the surgery arc, conjugated by
/// twists that bring the factors adjacent and restore the target state's
/// canonical circle order.
MonoMap edgeMonoMap(const ResolutionState& src, const ResolutionState& dst, const SurgeryArc& arc,
                    bool arrowFlipped);

}  // namespace chronkh
