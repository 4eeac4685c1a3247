#include "chronkh/composite.hpp"

#include <algorithm>
#include <sstream>

namespace chronkh {

namespace {

std::string crossingText(const std::array<int, 4>& s) {
    std::ostringstream out;
    out << "X(" << s[0] << "," << s[1] << "," << s[2] << "," << s[3] << ")";
    return out.str();
}

}  // namespace

PlanarDiagram disjointUnion(const PlanarDiagram& d, const PlanarDiagram& dPrime) {
    int shift = d.arcCount();
    std::ostringstream text;
    for (const auto& c : d.crossings()) text << crossingText(c.slots) << ' ';
    for (const auto& c : dPrime.crossings()) {
        std::array<int, 4> s = c.slots;
        for (int& x : s) x += shift;
        text << crossingText(s) << ' ';
    }
    int loops = d.freeLoops() + dPrime.freeLoops();
    if (loops) text << "loops=" << loops;
    auto out = PlanarDiagram::parse(text.str());
    for (int k = 0; k < d.n(); ++k) out.setArrowFlip(k, d.crossings()[k].arrowFlip);
    for (int k = 0; k < dPrime.n(); ++k)
        out.setArrowFlip(d.n() + k, dPrime.crossings()[k].arrowFlip);
    for (const auto& bp : d.basepoints())
        if (bp.arcId > 0) out.addBasepoint(bp.arcId);
    for (const auto& bp : dPrime.basepoints())
        if (bp.arcId > 0) out.addBasepoint(bp.arcId + shift);
    return out;
}

std::unique_ptr<ResolutionCube> unionCube(const PlanarDiagram& d, const PlanarDiagram& dPrime) {
    ResolutionCube cubeA(d);
    cubeA.solveSigns();
    ResolutionCube cubeB(dPrime);
    cubeB.solveSigns();

    auto cube = std::make_unique<ResolutionCube>(disjointUnion(d, dPrime));
    const int nA = d.n(), nB = dPrime.n();
    for (unsigned mask = 0; mask < (1u << (nA + nB)); ++mask) {
        unsigned xi = mask & ((1u << nA) - 1);
        unsigned zeta = mask >> nA;
        for (int dir = 0; dir < nA + nB; ++dir) {
            if ((mask >> dir) & 1) continue;
            if (dir < nA) {
                cube->setEps(mask, dir, cubeA.eps(xi, dir));
            } else {
                // twist the second factor's sign by the first vertex's data:
                // the weight parity and the unit lambda(edge degree, shift)
                const BiDegree& s = cubeA.vertex(xi).shift;
                bool isMerge = cubeB.edge(zeta, dir - nA).arc.isMerge;
                UnitMonomial t = isMerge ? UnitMonomial{+1, s.a & 1, 0, -s.b}
                                         : UnitMonomial{+1, 0, s.b & 1, s.a};
                if (__builtin_popcount(xi) % 2) t = -t;
                cube->setEps(mask, dir, t * cubeB.eps(zeta, dir - nA));
            }
        }
    }
    cube->adoptSigns();
    return cube;
}

GradedChainComplex unionComplex(const PlanarDiagram& d, const PlanarDiagram& dPrime) {
    return GradedChainComplex::assembleWithCube(unionCube(d, dPrime));
}

TensorComplex::TensorComplex(const GradedChainComplex& a, const GradedChainComplex& b,
                             bool twisted)
    : a_(&a), b_(&b), nA_(a.n()), nB_(b.n()) {
    const int n = nA_ + nB_;
    groups_.assign(n + 1, {});
    offsets_.assign(n + 1, {});

    // per factor: generators of a weight grouped by mask, words in order
    auto vertexLen = [](const GradedChainComplex& c, unsigned mask) {
        return c.cube().vertex(mask).state.circleCount();
    };
    for (int w = 0; w <= n; ++w) {
        for (int wa = std::max(0, w - nB_); wa <= std::min(nA_, w); ++wa) {
            int wb = w - wa;
            for (unsigned ma = 0; ma < (1u << nA_); ++ma) {
                if (__builtin_popcount(ma) != wa) continue;
                for (unsigned mb = 0; mb < (1u << nB_); ++mb) {
                    if (__builtin_popcount(mb) != wb) continue;
                    int la = vertexLen(*a_, ma), lb = vertexLen(*b_, mb);
                    offsets_[w][{ma, mb}] = static_cast<int>(groups_[w].size());
                    for (Word wordB = 0; wordB < (Word{1} << lb); ++wordB)
                        for (Word wordA = 0; wordA < (Word{1} << la); ++wordA)
                            groups_[w].push_back({ma, wordA, mb, wordB});
                }
            }
        }
    }

    diffs_.assign(n + 1, {});
    for (int w = 0; w < n; ++w) {
        diffs_[w].resize(groups_[w].size());
        for (std::size_t s = 0; s < groups_[w].size(); ++s) {
            const Gen& g = groups_[w][s];
            int wa = __builtin_popcount(g.maskA), wb = __builtin_popcount(g.maskB);
            int la = vertexLen(*a_, g.maskA);
            int srcA = a_->indexOf(wa, g.maskA, g.wordA);
            int srcB = b_->indexOf(wb, g.maskB, g.wordB);
            // first-factor differential, second factor untouched
            for (const auto& [t, e] : a_->diff(wa)[srcA]) {
                const ChainGenerator& tg = a_->group(wa + 1)[t];
                int idx = indexOf(w + 1, tg.mask, tg.word, g.maskB, g.wordB);
                diffs_[w][s].push_back({idx, e});
            }
            // second-factor differential, twisted past the first factor
            UnitMonomial sign = (wa % 2) ? UnitMonomial::minusOne() : UnitMonomial::one();
            const BiDegree& shiftA = a_->cube().vertex(g.maskA).shift;
            BiDegree degA = shiftA + wordDegree(g.wordA, la);
            for (const auto& [t, e] : b_->diff(wb)[srcB]) {
                const ChainGenerator& tg = b_->group(wb + 1)[t];
                int idx = indexOf(w + 1, g.maskA, g.wordA, tg.mask, tg.word);
                RingElement coeff = e * sign;
                if (twisted) {
                    unsigned dirBit = tg.mask ^ g.maskB;
                    bool isMerge =
                        b_->cube().edge(g.maskB, __builtin_ctz(dirBit)).arc.isMerge;
                    BiDegree edgeDeg = isMerge ? BiDegree{-1, 0} : BiDegree{0, -1};
                    coeff = coeff * lambda(edgeDeg, degA);
                }
                diffs_[w][s].push_back({idx, std::move(coeff)});
            }
            std::sort(diffs_[w][s].begin(), diffs_[w][s].end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
        }
    }
    diffs_[n].resize(groups_[n].size());
}

int TensorComplex::indexOf(int w, unsigned maskA, Word wordA, unsigned maskB, Word wordB) const {
    int la = a_->cube().vertex(maskA).state.circleCount();
    return offsets_[w].at({maskA, maskB}) +
           static_cast<int>((wordB << la) | wordA);
}

DSquaredReport TensorComplex::checkDSquared() const {
    for (std::size_t w = 0; w + 1 < diffs_.size(); ++w) {
        std::map<std::pair<int, int>, RingElement> acc;
        for (std::size_t s = 0; s < diffs_[w].size(); ++s)
            for (const auto& [m, e1] : diffs_[w][s])
                for (const auto& [t, e2] : diffs_[w + 1][m])
                    acc[{static_cast<int>(s), t}] += e1 * e2;
        for (const auto& [key, e] : acc)
            if (!e.isZero()) {
                std::ostringstream msg;
                msg << "weight " << w << " generator " << key.first << " -> " << key.second;
                return {false, msg.str()};
            }
    }
    return {};
}

bool ComparisonMap::bijective(const GradedChainComplex& unionC) const {
    for (std::size_t w = 0; w < entries.size(); ++w) {
        if (entries[w].size() != unionC.group(static_cast<int>(w)).size()) return false;
        std::vector<bool> hit(entries[w].size(), false);
        for (const auto& [t, u] : entries[w]) {
            if (t < 0 || t >= static_cast<int>(hit.size()) || hit[t]) return false;
            hit[t] = true;
        }
    }
    return true;
}

bool ComparisonMap::chainMap(const TensorComplex& t, const GradedChainComplex& unionC) const {
    for (int w = 0; w + 1 < static_cast<int>(entries.size()); ++w) {
        for (std::size_t s = 0; s < entries[w].size(); ++s) {
            std::map<int, RingElement> lhs, rhs;
            for (const auto& [m, e] : t.diff(w)[s]) {
                const auto& [tt, u] = entries[w + 1][m];
                lhs[tt] += e * u;
            }
            const auto& [us, u0] = entries[w][s];
            for (const auto& [tt, e] : unionC.diff(w)[us]) rhs[tt] += e * u0;
            for (auto& [k, e] : lhs)
                if (!(e == rhs[k])) return false;
            for (auto& [k, e] : rhs)
                if (!(e == lhs[k])) return false;
        }
    }
    return true;
}

ComparisonMap comparisonMap(const GradedChainComplex& a, const GradedChainComplex& b,
                            const TensorComplex& t, const GradedChainComplex& unionC) {
    const int nA = a.n(), nB = b.n();
    const int n = nA + nB;
    ComparisonMap out;
    out.entries.resize(n + 1);

    // per union vertex: the permutation from [A circles][B circles] product
    // order to the union state's canonical order, realized as twists
    for (int w = 0; w <= n; ++w) {
        out.entries[w].resize(t.group(w).size());
        for (std::size_t s = 0; s < t.group(w).size(); ++s) {
            const TensorComplex::Gen& g = t.group(w)[s];
            unsigned mask = g.maskA | (g.maskB << nA);
            const auto& stA = a.cube().vertex(g.maskA).state;
            const auto& stB = b.cube().vertex(g.maskB).state;
            const auto& stU = unionC.cube().vertex(mask).state;
            int la = stA.circleCount(), lb = stB.circleCount();
            if (la + lb != stU.circleCount())
                throw std::logic_error("union state circle count mismatch");

            // identify each product-position circle inside the union state
            int posShift = 4 * nA;
            std::vector<int> target(la + lb);
            int loopRankU = 0;
            auto unionLoopIndex = [&](int rank) {
                int seen = 0;
                for (int j = 0; j < stU.circleCount(); ++j)
                    if (stU.circles[j].seq.empty() && seen++ == rank) return j;
                throw std::logic_error("free loop missing in union state");
            };
            for (int c = 0; c < la; ++c)
                target[c] = stA.circles[c].seq.empty()
                                ? unionLoopIndex(loopRankU++)
                                : stU.circleOfPos[stA.circles[c].seq[0]];
            for (int c = 0; c < lb; ++c)
                target[la + c] = stB.circles[c].seq.empty()
                                     ? unionLoopIndex(loopRankU++)
                                     : stU.circleOfPos[stB.circles[c].seq[0] + posShift];

            Word concat = g.wordA | (g.wordB << la);
            MonoMap perm = MonoMap::identity(la + lb);
            std::vector<int> cur = target;
            bool moved = true;
            while (moved) {
                moved = false;
                for (int j = 0; j + 1 < la + lb; ++j)
                    if (cur[j] > cur[j + 1]) {
                        applyTwist(perm, j);
                        std::swap(cur[j], cur[j + 1]);
                        moved = true;
                    }
            }
            const auto& row = perm.rows[concat];
            if (row.size() != 1) throw std::logic_error("permutation map not monomial");
            out.entries[w][s] = {unionC.indexOf(w, mask, row[0].first), row[0].second};
        }
    }
    return out;
}

PlanarDiagram connectedSum(const PlanarDiagram& d, const PlanarDiagram& dPrime) {
    if (d.basepoints().empty() || dPrime.basepoints().empty())
        throw InvalidBasepoint("connected sum requires a basepoint on each factor");
    // a crossingless based unknot is the identity
    if (d.n() == 0 && d.freeLoops() == 1) return dPrime;
    if (dPrime.n() == 0 && dPrime.freeLoops() == 1) return d;
    int a = d.basepoints()[0].arcId;
    int bOrig = dPrime.basepoints()[0].arcId;
    if (a <= 0 || bOrig <= 0)
        throw InvalidBasepoint("connected sum requires arc basepoints");

    const int nA = d.n();
    const int A = d.arcCount(), B = dPrime.arcCount();
    int b = bOrig + A;

    // combined slot grid: D crossings then D' crossings with labels shifted
    std::vector<std::array<int, 4>> slots;
    for (const auto& c : d.crossings()) slots.push_back(c.slots);
    for (const auto& c : dPrime.crossings()) {
        std::array<int, 4> s = c.slots;
        for (int& x : s) x += A;
        slots.push_back(s);
    }

    // successor map on combined labels, rerouted through the two cut arcs
    std::vector<int> succ(A + B + 1, 0);
    for (int x = 1; x <= A; ++x) succ[x] = d.nextArc(x);
    for (int x = 1; x <= B; ++x) succ[x + A] = dPrime.nextArc(x) + A;
    succ[a] = dPrime.nextArc(bOrig) + A;
    succ[b] = d.nextArc(a);

    // the head occurrence of an arc: where it enters a crossing
    auto headPos = [&](const PlanarDiagram& dia, int arc) {
        for (int k = 0; k < dia.n(); ++k) {
            if (dia.crossings()[k].slots[0] == arc) return 4 * k;
            int oi = dia.overInSlot(k);
            if (dia.crossings()[k].slots[oi] == arc) return 4 * k + oi;
        }
        throw InvalidBasepoint("basepoint arc has no head crossing");
    };
    // swap the head occurrences: each bridge arc keeps its tail and adopts
    // the other factor's entry point
    int aH = headPos(d, a);
    int bH = headPos(dPrime, bOrig) + 4 * nA;
    slots[aH / 4][aH % 4] = b;
    slots[bH / 4][bH % 4] = a;

    // canonical renumbering: walk components from their smallest labels
    std::vector<int> newLabel(A + B + 1, 0);
    int next = 1;
    for (int start = 1; start <= A + B; ++start) {
        if (newLabel[start]) continue;
        int x = start;
        do {
            newLabel[x] = next++;
            x = succ[x];
        } while (x != start);
    }

    std::ostringstream text;
    for (const auto& s : slots)
        text << "X(" << newLabel[s[0]] << "," << newLabel[s[1]] << "," << newLabel[s[2]] << ","
             << newLabel[s[3]] << ") ";
    int loops = d.freeLoops() + dPrime.freeLoops();
    if (loops) text << "loops=" << loops;
    auto out = PlanarDiagram::parse(text.str());
    for (int k = 0; k < nA; ++k) out.setArrowFlip(k, d.crossings()[k].arrowFlip);
    for (int k = 0; k < dPrime.n(); ++k)
        out.setArrowFlip(nA + k, dPrime.crossings()[k].arrowFlip);
    out.addBasepoint(newLabel[a]);
    return out;
}

}  // namespace chronkh
