#include "chronkh/tqft.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace chronkh {

namespace {

// Count of v- letters among bits [0, i).
inline int minusBelow(Word w, int i) {
    return std::popcount(w & ((Word{1} << i) - 1));
}

// lambda(d, degree of the prefix [0,i) of w)
inline UnitMonomial prefixTwist(BiDegree d, Word w, int i) {
    int m = minusBelow(w, i);
    int p = i - m;
    return lambda(d, BiDegree{p, -m});
}

inline Word swapBits(Word w, int i) {
    Word bi = (w >> i) & 1, bj = (w >> (i + 1)) & 1;
    if (bi == bj) return w;
    return w ^ (Word{0b11} << i);
}

// Remove bit i, shifting higher bits down.
inline Word dropBit(Word w, int i) {
    Word low = w & ((Word{1} << i) - 1);
    return low | ((w >> (i + 1)) << i);
}

// Insert a bit with the given value at position i, shifting higher bits up.
inline Word insertBit(Word w, int i, Word value) {
    Word low = w & ((Word{1} << i) - 1);
    return low | (value << i) | ((w >> i) << (i + 1));
}

}  // namespace

BiDegree wordDegree(Word w, int len) {
    int m = minusBelow(w, len);
    return {len - m, -m};
}

MonoMap MonoMap::identity(int len) {
    MonoMap m;
    m.srcLen = m.dstLen = len;
    m.rows.resize(Word{1} << len);
    for (Word w = 0; w < (Word{1} << len); ++w) m.rows[w].push_back({w, UnitMonomial::one()});
    return m;
}

void MonoMap::scale(const UnitMonomial& u) {
    for (auto& row : rows)
        for (auto& [w, c] : row) c = c * u;
}

void applyTwist(MonoMap& m, int i) {
    assert(i + 1 < m.dstLen);
    for (auto& row : m.rows)
        for (auto& [w, c] : row) {
            bool bi = (w >> i) & 1, bj = (w >> (i + 1)) & 1;
            c = c * lambda(letterDegree(bi), letterDegree(bj));
            w = swapBits(w, i);
        }
}

void applyMergeAt(MonoMap& m, int i) {
    assert(i + 1 < m.dstLen);
    for (auto& row : m.rows) {
        std::vector<std::pair<Word, UnitMonomial>> out;
        out.reserve(row.size());
        for (auto& [w, c] : row) {
            bool bi = (w >> i) & 1, bj = (w >> (i + 1)) & 1;
            if (bi && bj) continue;  // v- v- -> 0
            UnitMonomial u = c * prefixTwist({-1, 0}, w, i);
            if (bi && !bj) u = u * UnitMonomial::X() * UnitMonomial::Z();
            Word nw = dropBit(w, i + 1);
            if (bi || bj)
                nw |= Word{1} << i;
            else
                nw &= ~(Word{1} << i);
            out.push_back({nw, u});
        }
        row = std::move(out);
    }
    m.dstLen -= 1;
    m.deg = m.deg + BiDegree{-1, 0};
    m.merges += 1;
}

void applySplitAt(MonoMap& m, int i) {
    assert(i < m.dstLen);
    for (auto& row : m.rows) {
        std::vector<std::pair<Word, UnitMonomial>> out;
        out.reserve(row.size() * 2);
        for (auto& [w, c] : row) {
            UnitMonomial u = c * prefixTwist({0, -1}, w, i);
            bool bi = (w >> i) & 1;
            if (bi) {
                // v- -> v- v-
                out.push_back({insertBit(w, i, 1), u});
            } else {
                // v+ -> v- v+ + YZ v+ v-
                Word base = w & ~(Word{1} << i);
                Word withPair = insertBit(base, i, 1);          // v- at i, v+ at i+1
                out.push_back({withPair, u});
                Word other = insertBit(base, i + 1, 1);         // v+ at i, v- at i+1
                out.push_back({other, u * UnitMonomial::Y() * UnitMonomial::Z()});
            }
        }
        row = std::move(out);
    }
    m.dstLen += 1;
    m.deg = m.deg + BiDegree{0, -1};
    m.splits += 1;
}

void applyBirthAt(MonoMap& m, int i) {
    assert(i <= m.dstLen);
    for (auto& row : m.rows)
        for (auto& [w, c] : row) {
            c = c * prefixTwist({1, 0}, w, i);
            w = insertBit(w, i, 0);
        }
    m.dstLen += 1;
    m.deg = m.deg + BiDegree{1, 0};
    m.births += 1;
}

void applyInsertAt(MonoMap& m, int i, bool minus) {
    assert(i <= m.dstLen);
    BiDegree d = letterDegree(minus);
    for (auto& row : m.rows)
        for (auto& [w, c] : row) {
            c = c * prefixTwist(d, w, i);
            w = insertBit(w, i, minus ? 1 : 0);
        }
    m.dstLen += 1;
    m.deg = m.deg + d;
}

void applyDeathAt(MonoMap& m, int i) {
    assert(i < m.dstLen);
    for (auto& row : m.rows) {
        std::vector<std::pair<Word, UnitMonomial>> out;
        out.reserve(row.size());
        for (auto& [w, c] : row) {
            if (!((w >> i) & 1)) continue;  // death of v+ is zero
            out.push_back({dropBit(w, i), c * prefixTwist({0, 1}, w, i)});
        }
        row = std::move(out);
    }
    m.dstLen -= 1;
    m.deg = m.deg + BiDegree{0, 1};
    m.deaths += 1;
}

SparseMap SparseMap::fromMono(const MonoMap& m) {
    SparseMap s;
    s.srcLen = m.srcLen;
    s.dstLen = m.dstLen;
    for (Word w = 0; w < m.rows.size(); ++w)
        for (const auto& [t, u] : m.rows[w]) {
            auto& e = s.rows[w][t];
            e += RingElement(u);
            if (e.isZero()) s.rows[w].erase(t);
        }
    for (auto it = s.rows.begin(); it != s.rows.end();)
        it = it->second.empty() ? s.rows.erase(it) : std::next(it);
    return s;
}

SparseMap SparseMap::identity(int len) {
    SparseMap s;
    s.srcLen = s.dstLen = len;
    for (Word w = 0; w < (Word{1} << len); ++w) s.rows[w][w] = RingElement::unit();
    return s;
}

bool SparseMap::isZero() const {
    for (const auto& [w, row] : rows)
        for (const auto& [t, e] : row)
            if (!e.isZero()) return false;
    return true;
}

SparseMap SparseMap::compose(const SparseMap& inner) const {
    if (inner.dstLen != srcLen) throw std::logic_error("compose: length mismatch");
    SparseMap out;
    out.srcLen = inner.srcLen;
    out.dstLen = dstLen;
    for (const auto& [s, row] : inner.rows)
        for (const auto& [m, e1] : row) {
            auto it = rows.find(m);
            if (it == rows.end()) continue;
            for (const auto& [t, e2] : it->second) {
                auto& acc = out.rows[s][t];
                acc += e1 * e2;
                if (acc.isZero()) out.rows[s].erase(t);
            }
        }
    for (auto it = out.rows.begin(); it != out.rows.end();)
        it = it->second.empty() ? out.rows.erase(it) : std::next(it);
    return out;
}

SparseMap& SparseMap::operator+=(const SparseMap& o) {
    for (const auto& [s, row] : o.rows)
        for (const auto& [t, e] : row) {
            auto& acc = rows[s][t];
            acc += e;
            if (acc.isZero()) rows[s].erase(t);
        }
    for (auto it = rows.begin(); it != rows.end();)
        it = it->second.empty() ? rows.erase(it) : std::next(it);
    return *this;
}

SparseMap SparseMap::scaled(const UnitMonomial& u) const {
    SparseMap out;
    out.srcLen = srcLen;
    out.dstLen = dstLen;
    for (const auto& [s, row] : rows)
        for (const auto& [t, e] : row) out.rows[s][t] = e * u;
    return out;
}

bool SparseMap::operator==(const SparseMap& o) const {
    return srcLen == o.srcLen && dstLen == o.dstLen && rows == o.rows;
}

std::optional<UnitMonomial> SparseMap::ratioTo(const SparseMap& other) const {
    if (srcLen != other.srcLen || dstLen != other.dstLen) return std::nullopt;
    if (isZero() || other.isZero()) return std::nullopt;
    // candidate scalars from the first nonzero entry pair
    const auto& [s, row] = *rows.begin();
    const auto& [t, e] = *row.begin();
    auto oit = other.rows.find(s);
    if (oit == other.rows.end()) return std::nullopt;
    auto eit = oit->second.find(t);
    if (eit == oit->second.end()) return std::nullopt;
    const auto& [k1, c1] = *e.terms().begin();
    for (const auto& [k2, c2] : eit->second.terms()) {
        if (c1 != c2 && c1 != -c2) continue;
        UnitMonomial cand{c1 == c2 ? +1 : -1, (std::get<0>(k1) + std::get<0>(k2)) & 1,
                          (std::get<1>(k1) + std::get<1>(k2)) & 1,
                          std::get<2>(k1) - std::get<2>(k2)};
        if (*this == other.scaled(cand)) return cand;
    }
    return std::nullopt;
}

SparseMap elementaryMerge() {
    MonoMap m = MonoMap::identity(2);
    applyMergeAt(m, 0);
    return SparseMap::fromMono(m);
}

SparseMap elementarySplit() {
    MonoMap m = MonoMap::identity(1);
    applySplitAt(m, 0);
    return SparseMap::fromMono(m);
}

SparseMap elementaryBirth() {
    MonoMap m = MonoMap::identity(0);
    applyBirthAt(m, 0);
    return SparseMap::fromMono(m);
}

SparseMap elementaryDeath() {
    MonoMap m = MonoMap::identity(1);
    applyDeathAt(m, 0);
    return SparseMap::fromMono(m);
}

SparseMap twistMap(int len, int i) {
    MonoMap m = MonoMap::identity(len);
    applyTwist(m, i);
    return SparseMap::fromMono(m);
}

namespace {

// dst circle index of a given src circle that the surgery does not touch;
// free loops (empty seq) are matched by their order among free loops.
int untouchedTarget(const ResolutionState& src, const ResolutionState& dst, int srcCircle) {
    const Circle& c = src.circles[srcCircle];
    if (!c.seq.empty()) return dst.circleOfPos[c.seq[0]];
    int loopRank = 0;
    for (int i = 0; i < srcCircle; ++i)
        if (src.circles[i].seq.empty()) ++loopRank;
    for (int j = 0; j < dst.circleCount(); ++j)
        if (dst.circles[j].seq.empty() && loopRank-- == 0) return j;
    throw std::logic_error("free loop mismatch between states");
}

// Bubble-sort `cur` into ascending order, mirroring each adjacent swap as a
// twist on the map.
void restoreOrder(MonoMap& m, std::vector<int>& cur) {
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t j = 0; j + 1 < cur.size(); ++j)
            if (cur[j] > cur[j + 1]) {
                applyTwist(m, static_cast<int>(j));
                std::swap(cur[j], cur[j + 1]);
                moved = true;
            }
    }
}

}  // namespace

MonoMap edgeMonoMap(const ResolutionState& src, const ResolutionState& dst, const SurgeryArc& arc,
                    bool arrowFlipped) {
    const int k = arc.crossing;
    MonoMap m = MonoMap::identity(src.circleCount());

    std::vector<int> cur;  // dst circle index of each current factor
    if (arc.isMerge) {
        int i1 = std::min(arc.tailCircle, arc.headCircle);
        int i2 = std::max(arc.tailCircle, arc.headCircle);
        for (int c = 0; c < src.circleCount(); ++c)
            if (c != i1 && c != i2) cur.push_back(untouchedTarget(src, dst, c));
        // bring factor i2 next to i1
        for (int j = i2 - 1; j > i1; --j) applyTwist(m, j);
        applyMergeAt(m, i1);
        // the arrow pointing from the first factor to the second costs X
        if (arc.tailCircle == i1) m.scale(UnitMonomial::X());
        cur.insert(cur.begin() + i1, dst.circleOfPos[4 * k]);
    } else {
        int i = arc.tailCircle;
        for (int c = 0; c < src.circleCount(); ++c)
            if (c != i) cur.push_back(untouchedTarget(src, dst, c));
        applySplitAt(m, i);
        // first output is the circle through slot 0; a flipped arrow costs Y
        if (arrowFlipped) m.scale(UnitMonomial::Y());
        cur.insert(cur.begin() + i, dst.circleOfPos[4 * k + 2]);
        cur.insert(cur.begin() + i, dst.circleOfPos[4 * k]);
    }
    restoreOrder(m, cur);
    for (std::size_t j = 0; j < cur.size(); ++j)
        if (cur[j] != static_cast<int>(j)) throw std::logic_error("restoration failed");
    return m;
}

}  // namespace chronkh
