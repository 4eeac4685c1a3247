#pragma once

#include <optional>
#include <vector>

#include "chronkh/scalars.hpp"

namespace chronkh {

/// Dense integer matrix, row major.
using IntMat = std::vector<std::vector<Int>>;

/// Nonzero invariant factors d1 | d2 | ... of an integer matrix.
std::vector<Int> smithInvariants(IntMat a);

long rankOverQ(IntMat a);
long rankModP(IntMat a, long p);

/// One homology group: homological degree i and the doubled output bidegree
/// (p2, q2) = twice the (p, q) labels, kept doubled because the global shift
/// can be half-integral componentwise.
struct HomologyEntry {
    int i = 0;
    int p2 = 0, q2 = 0;
    long rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, divisibility chain

    int collapsed() const { return (p2 + q2) / 2; }
    bool operator==(const HomologyEntry& o) const = default;
};

struct HomologyTable {
    std::vector<HomologyEntry> entries;  // sorted by (i, p2, q2); empty groups omitted

    bool operator==(const HomologyTable& o) const = default;
    bool sameBetti(const HomologyTable& o) const;  // ranks only, ignoring torsion
};

}  // namespace chronkh
