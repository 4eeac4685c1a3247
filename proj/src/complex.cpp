#include "chronkh/complex.hpp"

#include <algorithm>
#include <sstream>

namespace chronkh {

void LaurentPoly::add(int exp, long long c) {
    if (c == 0) return;
    auto [it, fresh] = coeffs.emplace(exp, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : coeffs)
        for (const auto& [e2, c2] : o.coeffs) r.add(e1 + e2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::inverted() const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs) r.add(-e, c);
    return r;
}

std::string LaurentPoly::render() const {
    if (coeffs.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : coeffs) {
        long long v = c;
        if (!first) {
            out << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        if (v != 1 || e == 0) out << v;
        if (e != 0) {
            if (v != 1) out << '*';
            out << 'q';
            if (e != 1) out << '^' << e;
        }
    }
    return out.str();
}

void LaurentPoly2::add(int p2, int q2, long long c) {
    if (c == 0) return;
    auto key = std::pair{p2, q2};
    auto [it, fresh] = coeffs.emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

LaurentPoly LaurentPoly2::collapsed() const {
    LaurentPoly r;
    for (const auto& [k, c] : coeffs) r.add((k.first + k.second) / 2, c);
    return r;
}

GradedChainComplex GradedChainComplex::assemble(const PlanarDiagram& d, int maxCrossings) {
    auto cube = std::make_unique<ResolutionCube>(d, maxCrossings);
    cube->solveSigns();
    return assembleWithCube(std::move(cube));
}

GradedChainComplex GradedChainComplex::assembleWithCube(std::unique_ptr<ResolutionCube> cube) {
    GradedChainComplex c;
    c.cube_ = std::move(cube);
    auto [np, nm] = c.diagram().crossingSigns();
    c.nPlus_ = np;
    c.nMinus_ = nm;
    c.buildGroups();
    return c;
}

void GradedChainComplex::buildGroups() {
    const int n = this->n();
    groups_.assign(n + 1, {});
    offsets_.assign(n + 1, {});
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const CubeVertex& v = cube_->vertex(mask);
        int l = v.state.circleCount();
        offsets_[v.weight][mask] = static_cast<int>(groups_[v.weight].size());
        for (Word w = 0; w < (Word{1} << l); ++w)
            groups_[v.weight].push_back({mask, w, v.shift + wordDegree(w, l)});
    }

    diffs_.assign(n + 1, {});
    for (int w = 0; w < n; ++w) {
        diffs_[w].resize(groups_[w].size());
        for (const auto& [mask, base] : offsets_[w]) {
            for (int dir = 0; dir < n; ++dir) {
                if ((mask >> dir) & 1) continue;
                unsigned tmask = mask | (1u << dir);
                int tbase = offsets_[w + 1].at(tmask);
                MonoMap m = cube_->edgeMap(mask, dir);
                UnitMonomial sign = cube_->eps(mask, dir);
                for (Word s = 0; s < m.rows.size(); ++s)
                    for (const auto& [t, u] : m.rows[s])
                        diffs_[w][base + s].push_back(
                            {tbase + static_cast<int>(t), RingElement(sign * u)});
            }
        }
        for (auto& row : diffs_[w])
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    if (n >= 0) diffs_.resize(n + 1);
    diffs_[n].resize(groups_[n].size());
}

int GradedChainComplex::indexOf(int w, unsigned mask, Word word) const {
    return offsets_[w].at(mask) + static_cast<int>(word);
}

DSquaredReport GradedChainComplex::checkDSquared() const {
    for (int w = 0; w + 2 <= n(); ++w) {
        std::map<std::pair<int, int>, RingElement> acc;
        for (std::size_t s = 0; s < diffs_[w].size(); ++s)
            for (const auto& [m, e1] : diffs_[w][s])
                for (const auto& [t, e2] : diffs_[w + 1][m])
                    acc[{static_cast<int>(s), t}] += e1 * e2;
        for (const auto& [key, e] : acc)
            if (!e.isZero()) {
                std::ostringstream msg;
                msg << "weight " << w << " generator " << key.first << " -> " << key.second
                    << ": " << e.render();
                return {false, msg.str()};
            }
    }
    return {};
}

bool GradedChainComplex::bidegreeHomogeneous() const {
    for (int w = 0; w < n(); ++w)
        for (std::size_t s = 0; s < diffs_[w].size(); ++s)
            for (const auto& [t, e] : diffs_[w][s])
                if (!(groups_[w][s].bideg == groups_[w + 1][t].bideg)) return false;
    return true;
}

LaurentPoly2 GradedChainComplex::eulerCharacteristic() const {
    LaurentPoly2 chi;
    for (int w = 0; w <= n(); ++w) {
        long long sgn = (homDegree(w) % 2 == 0) ? 1 : -1;
        for (const auto& g : groups_[w]) {
            auto [p2, q2] = outBidegree2(g);
            chi.add(p2, q2, sgn);
        }
    }
    return chi;
}

SpecializedComplex specializeComplex(const GradedChainComplex& c, const Specialization& s) {
    SpecializedComplex out;
    out.spec = s;
    out.nMinus = c.nMinus();
    out.shiftP2 = c.shiftP2();
    out.shiftQ2 = c.shiftQ2();
    out.groups.resize(c.n() + 1);
    out.diffs.resize(c.n() + 1);
    for (int w = 0; w <= c.n(); ++w) {
        out.groups[w] = c.group(w);
        out.diffs[w].resize(c.diff(w).size());
        for (std::size_t i = 0; i < c.diff(w).size(); ++i)
            for (const auto& [t, e] : c.diff(w)[i]) {
                Int v = e.specialize(s);
                if (v != 0) out.diffs[w][i].push_back({t, std::move(v)});
            }
    }
    return out;
}

DSquaredReport SpecializedComplex::checkDSquared() const {
    for (std::size_t w = 0; w + 2 < diffs.size() + 1 && w + 1 < diffs.size(); ++w) {
        std::map<std::pair<int, int>, Int> acc;
        for (std::size_t s = 0; s < diffs[w].size(); ++s)
            for (const auto& [m, e1] : diffs[w][s])
                for (const auto& [t, e2] : diffs[w + 1][m]) acc[{static_cast<int>(s), t}] += e1 * e2;
        for (const auto& [key, v] : acc)
            if (v != 0) {
                std::ostringstream msg;
                msg << "weight " << w << " generator " << key.first << " -> " << key.second;
                return {false, msg.str()};
            }
    }
    return {};
}

HomologyTable homology(const SpecializedComplex& c, std::optional<long> field) {
    const int top = static_cast<int>(c.groups.size()) - 1;
    // block key: (weight, bracket bidegree)
    using Key = std::tuple<int, int, int>;
    std::map<Key, std::vector<int>> blocks;
    for (int w = 0; w <= top; ++w)
        for (std::size_t i = 0; i < c.groups[w].size(); ++i) {
            const auto& g = c.groups[w][i];
            blocks[{w, g.bideg.a, g.bideg.b}].push_back(static_cast<int>(i));
        }

    auto blockMatrix = [&](int w, int a, int b) -> IntMat {
        // differential from weight w into weight w+1 within the bidegree block
        auto sit = blocks.find({w, a, b});
        auto tit = blocks.find({w + 1, a, b});
        if (sit == blocks.end() || tit == blocks.end() || w >= top) return {};
        const auto& srcs = sit->second;
        const auto& tgts = tit->second;
        std::map<int, int> tpos;
        for (std::size_t j = 0; j < tgts.size(); ++j) tpos[tgts[j]] = static_cast<int>(j);
        IntMat m(tgts.size(), std::vector<Int>(srcs.size(), 0));
        for (std::size_t j = 0; j < srcs.size(); ++j)
            for (const auto& [t, v] : c.diffs[w][srcs[j]]) {
                auto p = tpos.find(t);
                if (p != tpos.end()) m[p->second][j] = v;
            }
        return m;
    };
    // invariant factors (or plain rank over a field) of each differential
    // block, computed once and shared between its source and target weights
    std::map<Key, std::vector<Int>> invCache;
    auto invariantsOf = [&](int w, int a, int b) -> const std::vector<Int>& {
        Key k{w, a, b};
        auto it = invCache.find(k);
        if (it != invCache.end()) return it->second;
        IntMat m = blockMatrix(w, a, b);
        std::vector<Int> inv;
        if (!m.empty()) {
            if (!field)
                inv = smithInvariants(m);
            else
                inv.assign(static_cast<std::size_t>(*field == 0 ? rankOverQ(m)
                                                                : rankModP(m, *field)),
                           Int(1));
        }
        return invCache.emplace(k, std::move(inv)).first->second;
    };

    HomologyTable table;
    for (const auto& [key, idxs] : blocks) {
        auto [w, a, b] = key;
        long rankOut = static_cast<long>(invariantsOf(w, a, b).size());
        const auto& invIn = invariantsOf(w - 1, a, b);
        long rankIn = static_cast<long>(invIn.size());
        std::vector<Int> torsion;
        if (!field)
            for (const auto& f : invIn)
                if (f > 1) torsion.push_back(f);
        long freeRank = static_cast<long>(idxs.size()) - rankOut - rankIn;
        if (freeRank == 0 && torsion.empty()) continue;
        HomologyEntry e;
        e.i = w - c.nMinus;
        e.p2 = 2 * a + c.shiftP2;
        e.q2 = 2 * b + c.shiftQ2;
        e.rank = freeRank;
        e.torsion = std::move(torsion);
        table.entries.push_back(std::move(e));
    }
    std::sort(table.entries.begin(), table.entries.end(), [](const auto& x, const auto& y) {
        return std::tie(x.i, x.p2, x.q2) < std::tie(y.i, y.p2, y.q2);
    });
    return table;
}

LaurentPoly eulerFromTable(const HomologyTable& t) {
    LaurentPoly chi;
    for (const auto& e : t.entries) chi.add(e.collapsed(), (e.i % 2 == 0 ? 1 : -1) * e.rank);
    return chi;
}

LaurentPoly jonesOracle(const PlanarDiagram& d) {
    const int n = d.n();
    auto [np, nm] = d.crossingSigns();
    LaurentPoly qq;  // q + q^-1
    qq.add(1, 1);
    qq.add(-1, 1);
    LaurentPoly sum;
    std::vector<bool> xi(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        for (int i = 0; i < n; ++i) xi[i] = (mask >> i) & 1;
        int l = d.resolve(xi).circleCount();
        int w = __builtin_popcount(mask);
        LaurentPoly term;
        term.add(w, (w % 2 == 0) ? 1 : -1);
        for (int i = 0; i < l; ++i) term = term * qq;
        for (const auto& [e, c] : term.coeffs) sum.add(e, c);
    }
    LaurentPoly shift;
    shift.add(np - 2 * nm, (nm % 2 == 0) ? 1 : -1);
    return sum * shift;
}

}  // namespace chronkh
