#include "chronkh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace chronkh {

namespace {

constexpr int kRoleIn = 0;    // the strand enters the crossing here
constexpr int kRoleOut = 1;   // the strand leaves the crossing here
constexpr int kRoleUnset = -1;

}  // namespace

PlanarDiagram PlanarDiagram::parse(const std::string& text) {
    PlanarDiagram d;
    std::string clean;
    clean.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            clean.push_back('\n');
        } else {
            clean.push_back(text[i]);
        }
    }

    std::vector<int> basepointArcs;
    std::istringstream in(clean);
    std::string tok;
    while (in >> tok) {
        if (tok.rfind("loops=", 0) == 0) {
            std::size_t used = 0;
            int k = -1;
            try {
                k = std::stoi(tok.substr(6), &used);
            } catch (...) {
                throw MalformedInput("bad loops directive: " + tok);
            }
            if (used != tok.size() - 6 || k < 0) throw MalformedInput("bad loops directive: " + tok);
            d.freeLoops_ += k;
        } else if (tok.rfind("basepoint=", 0) == 0) {
            std::size_t used = 0;
            int a = -1;
            try {
                a = std::stoi(tok.substr(10), &used);
            } catch (...) {
                throw MalformedInput("bad basepoint directive: " + tok);
            }
            if (used != tok.size() - 10 || a < 0) throw MalformedInput("bad basepoint directive: " + tok);
            basepointArcs.push_back(a);
        } else if (tok[0] == 'X') {
            // Slurp until the closing parenthesis (spaces inside are legal).
            std::string term = tok;
            while (term.find(')') == std::string::npos && in >> tok) term += tok;
            if (term.size() < 3 || term[1] != '(' || term.back() != ')')
                throw MalformedInput("bad crossing term: " + term);
            Crossing c;
            std::istringstream ts(term.substr(2, term.size() - 3));
            std::string field;
            int idx = 0;
            while (std::getline(ts, field, ',')) {
                if (idx >= 4) throw MalformedInput("too many slots: " + term);
                try {
                    std::size_t used = 0;
                    c.slots[idx] = std::stoi(field, &used);
                    if (used != field.size()) throw MalformedInput("bad slot: " + term);
                } catch (MalformedInput&) {
                    throw;
                } catch (...) {
                    throw MalformedInput("bad slot: " + term);
                }
                if (c.slots[idx] < 1) throw InvalidDiagram("arc labels must be positive: " + term);
                ++idx;
            }
            if (idx != 4) throw MalformedInput("crossing needs 4 slots: " + term);
            d.crossings_.push_back(c);
        } else {
            throw MalformedInput("unrecognized token: " + tok);
        }
    }

    d.finalize();
    for (int a : basepointArcs) d.addBasepoint(a);
    return d;
}

void PlanarDiagram::finalize() {
    const int n = this->n();
    arcCount_ = 2 * n;
    std::vector<int> count(arcCount_ + 1, 0);
    for (const auto& c : crossings_)
        for (int a : c.slots) {
            if (a < 1 || a > arcCount_) throw InvalidDiagram("arc label out of range");
            ++count[a];
        }
    for (int a = 1; a <= arcCount_; ++a)
        if (count[a] != 2) throw InvalidDiagram("arc label appears " + std::to_string(count[a]) + " times");

    // Positions of each arc's two occurrences.
    std::vector<std::array<int, 2>> occ(arcCount_ + 1, {-1, -1});
    for (int p = 0; p < 4 * n; ++p) {
        int a = arcAtPos(p);
        if (occ[a][0] < 0) occ[a][0] = p;
        else occ[a][1] = p;
    }

    // Infer in/out roles of every slot occurrence. Constraints: slot 0 is the
    // incoming and slot 2 the outgoing under-strand; the two over-slots of a
    // crossing have opposite roles; an arc's two occurrences have opposite
    // roles. Propagation may leave components passing only over crossings
    // undetermined; their orientation is fixed afterwards.
    std::vector<int> role(4 * n, kRoleUnset);
    auto oppositeOf = [&](int p) {
        std::vector<int> out;
        int a = arcAtPos(p);
        out.push_back(occ[a][0] == p ? occ[a][1] : occ[a][0]);
        if (p % 4 == 1) out.push_back(p + 2);
        if (p % 4 == 3) out.push_back(p - 2);
        return out;
    };
    auto propagate = [&](int start) {
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            for (int q : oppositeOf(p)) {
                int want = 1 - role[p];
                if (role[q] == kRoleUnset) {
                    role[q] = want;
                    stack.push_back(q);
                } else if (role[q] != want) {
                    throw InvalidDiagram("inconsistent orientation");
                }
            }
        }
    };
    for (int p = 0; p < 4 * n; ++p) {
        if (p % 4 == 0 && role[p] == kRoleUnset) {
            role[p] = kRoleIn;
            propagate(p);
        } else if (p % 4 == 2 && role[p] == kRoleUnset) {
            role[p] = kRoleOut;
            propagate(p);
        }
    }

    // Builds succ over a set of arcs; returns false if some cycle is not an
    // ascending run of consecutive labels (with a single wrap).
    auto buildSucc = [&](std::vector<int>& succ) {
        for (int k = 0; k < n; ++k) {
            succ[crossings_[k].slots[0]] = crossings_[k].slots[2];
            int oin = role[4 * k + 1] == kRoleIn ? 1 : 3;
            succ[crossings_[k].slots[oin]] = crossings_[k].slots[oin == 1 ? 3 : 1];
        }
    };
    auto validateCycles = [&](const std::vector<int>& succ, const std::vector<bool>& care) {
        std::vector<bool> seen(arcCount_ + 1, false);
        for (int l = 1; l <= arcCount_; ++l) {
            if (seen[l] || !care[l]) continue;
            int a = l;
            while (true) {
                seen[a] = true;
                int nx = succ[a];
                if (nx == l) break;
                if (nx != a + 1 || nx > arcCount_ || seen[nx]) return false;
                a = nx;
            }
        }
        return true;
    };

    // Fix undetermined clusters (components that only pass over crossings):
    // try both orientations, preferring the one that makes the seed crossing
    // positive; keep whichever yields valid ascending numbering.
    for (int p = 0; p < 4 * n; ++p) {
        if (role[p] == kRoleUnset) {
            // collect the cluster reachable from p
            std::vector<int> cluster;
            {
                std::vector<int> stack{p};
                std::vector<bool> mark(4 * n, false);
                mark[p] = true;
                while (!stack.empty()) {
                    int q = stack.back();
                    stack.pop_back();
                    cluster.push_back(q);
                    for (int r : oppositeOf(q))
                        if (!mark[r]) {
                            mark[r] = true;
                            stack.push_back(r);
                        }
                }
            }
            std::sort(cluster.begin(), cluster.end());
            int seed = cluster.front();
            std::vector<bool> care(arcCount_ + 1, false);
            for (int q : cluster) care[arcAtPos(q)] = true;
            for (int attempt = 0; attempt < 2; ++attempt) {
                // attempt 0: over-strand enters the seed crossing at slot 1
                int want = (seed % 4 == 1) == (attempt == 0) ? kRoleIn : kRoleOut;
                role[seed] = want;
                propagate(seed);
                std::vector<int> succ(arcCount_ + 1, 0);
                buildSucc(succ);
                if (validateCycles(succ, care)) break;
                if (attempt == 1) throw InvalidDiagram("inconsistent arc numbering");
                for (int q : cluster) role[q] = kRoleUnset;
            }
        }
    }

    succ_.assign(arcCount_ + 1, 0);
    buildSucc(succ_);
    {
        std::vector<bool> care(arcCount_ + 1, true);
        if (!validateCycles(succ_, care)) throw InvalidDiagram("inconsistent arc numbering");
    }

    overIn_.resize(n);
    signs_.resize(n);
    for (int k = 0; k < n; ++k) {
        overIn_[k] = role[4 * k + 1] == kRoleIn ? 1 : 3;
        signs_[k] = overIn_[k] == 1 ? +1 : -1;
    }

    // Components: ascending intervals of arc labels, then free loops.
    componentOf_.assign(arcCount_ + 1, -1);
    int comp = 0;
    for (int l = 1; l <= arcCount_; ++l) {
        if (componentOf_[l] >= 0) continue;
        int a = l;
        while (componentOf_[a] < 0) {
            componentOf_[a] = comp;
            a = succ_[a];
        }
        ++comp;
    }
    componentCount_ = comp + freeLoops_;
}

void PlanarDiagram::addBasepoint(int arcId) {
    Basepoint b;
    if (arcId == 0) {
        if (freeLoops_ < 1) throw InvalidBasepoint("basepoint=0 requires a free loop");
        b = {componentCount_ - freeLoops_, 0, 0};
    } else {
        if (arcId > arcCount_) throw InvalidBasepoint("basepoint arc out of range");
        b = {componentOf_[arcId], arcId, -1};
    }
    for (const auto& old : basepoints_)
        if (old.componentId == b.componentId)
            throw InvalidBasepoint("component already has a basepoint");
    basepoints_.push_back(b);
}

std::string PlanarDiagram::render() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& c : crossings_) {
        if (!first) out << ' ';
        first = false;
        out << "X(" << c.slots[0] << ',' << c.slots[1] << ',' << c.slots[2] << ',' << c.slots[3] << ')';
    }
    if (freeLoops_ > 0) {
        if (!first) out << ' ';
        first = false;
        out << "loops=" << freeLoops_;
    }
    for (const auto& b : basepoints_) {
        if (!first) out << ' ';
        first = false;
        out << "basepoint=" << b.arcId;
    }
    return out.str();
}

std::pair<int, int> PlanarDiagram::crossingSigns() const {
    int plus = 0, minus = 0;
    for (int s : signs_) (s > 0 ? plus : minus)++;
    return {plus, minus};
}

PlanarDiagram PlanarDiagram::mirror() const {
    PlanarDiagram m;
    for (std::size_t k = 0; k < crossings_.size(); ++k) {
        const auto& s = crossings_[k].slots;
        Crossing c;
        if (overIn_[k] == 1)
            c.slots = {s[1], s[2], s[3], s[0]};
        else
            c.slots = {s[3], s[0], s[1], s[2]};
        m.crossings_.push_back(c);
    }
    m.freeLoops_ = freeLoops_;
    m.finalize();
    for (const auto& b : basepoints_) m.addBasepoint(b.arcId);
    return m;
}

ResolutionState PlanarDiagram::resolve(const std::vector<bool>& xi) const {
    const int n = this->n();
    if (static_cast<int>(xi.size()) != n) throw std::logic_error("xi length mismatch");

    ResolutionState st;
    st.xi = xi;
    st.circleOfPos.assign(4 * n, -1);
    st.seqIndexOfPos.assign(4 * n, -1);

    // The 0-smoothing pairs slots (0,3) and (1,2); the 1-smoothing pairs
    // (0,1) and (2,3). (Turning left along the under-strand gives 0.)
    auto strandMate = [&](int p) {
        int k = p / 4, s = p % 4;
        static constexpr int mate0[4] = {3, 2, 1, 0};
        static constexpr int mate1[4] = {1, 0, 3, 2};
        return 4 * k + (xi[k] ? mate1[s] : mate0[s]);
    };
    std::vector<std::array<int, 2>> occ(arcCount_ + 1, {-1, -1});
    for (int p = 0; p < 4 * n; ++p) {
        int a = arcAtPos(p);
        if (occ[a][0] < 0) occ[a][0] = p;
        else occ[a][1] = p;
    }
    auto arcMate = [&](int p) {
        int a = arcAtPos(p);
        return occ[a][0] == p ? occ[a][1] : occ[a][0];
    };

    std::vector<bool> seen(4 * n, false);
    for (int start = 0; start < 4 * n; ++start) {
        if (seen[start]) continue;
        Circle c;
        c.minArc = std::numeric_limits<int>::max();
        int cur = start;
        while (true) {
            c.seq.push_back(cur);
            seen[cur] = true;
            int mate = strandMate(cur);
            c.seq.push_back(mate);
            seen[mate] = true;
            c.minArc = std::min({c.minArc, arcAtPos(cur), arcAtPos(mate)});
            int nxt = arcMate(mate);
            if (nxt == start) break;
            cur = nxt;
        }
        st.circles.push_back(std::move(c));
    }
    std::sort(st.circles.begin(), st.circles.end(),
              [](const Circle& a, const Circle& b) { return a.minArc < b.minArc; });
    for (int l = 0; l < freeLoops_; ++l) {
        Circle c;
        c.minArc = std::numeric_limits<int>::max();
        st.circles.push_back(std::move(c));
    }
    for (int ci = 0; ci < st.circleCount(); ++ci)
        for (int i = 0; i < static_cast<int>(st.circles[ci].seq.size()); ++i) {
            st.circleOfPos[st.circles[ci].seq[i]] = ci;
            st.seqIndexOfPos[st.circles[ci].seq[i]] = i;
        }
    return st;
}

SurgeryArc PlanarDiagram::surgeryArc(const ResolutionState& state, int k) const {
    if (state.xi.at(k)) throw std::logic_error("surgeryArc requires a 0-smoothed crossing");

    SurgeryArc arc;
    arc.crossing = k;
    // The two 0-smoothing strands: one through slots {0,3}, one through
    // {1,2}. The default arrow runs from the slot-0 strand to the slot-2
    // strand; arrowFlip reverses it.
    struct End {
        int circle, visit;
        bool left;
    };
    auto strandEnd = [&](bool slot03) {
        int p = 4 * k + (slot03 ? 0 : 1);
        int i = state.seqIndexOfPos[p];
        bool entered = (i % 2) == 0;
        End e;
        e.circle = state.circleOfPos[p];
        e.visit = i / 2;
        // Strand {0,3} traversed 0->3 keeps the arc endpoint on the right;
        // strand {1,2} traversed 1->2 keeps it on the left.
        e.left = slot03 ? !entered : entered;
        return e;
    };
    End tail = strandEnd(true), head = strandEnd(false);
    if (crossings_[k].arrowFlip) std::swap(tail, head);
    arc.tailCircle = tail.circle;
    arc.headCircle = head.circle;
    arc.tailVisit = tail.visit;
    arc.headVisit = head.visit;
    arc.tailLeft = tail.left;
    arc.headLeft = head.left;
    arc.isMerge = arc.tailCircle != arc.headCircle;
    return arc;
}

}  // namespace chronkh
