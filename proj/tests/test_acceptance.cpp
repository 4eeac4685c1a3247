// Acceptance harness: runs the twelve top-level checks over the bundled
// corpus and prints one pass/fail line per criterion. Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "chronkh/composite.hpp"
#include "chronkh/modstruct.hpp"
#include "classical_oracle.hpp"
#include "sweep.hpp"

using namespace chronkh;

namespace {

int failures = 0;
std::vector<std::string> notes;

void criterion(int number, const std::string& what, const std::function<bool()>& check) {
    bool ok = false;
    std::string error;
    try {
        ok = check();
    } catch (const std::exception& e) {
        error = e.what();
    }
    if (!ok) ++failures;
    std::printf("criterion %2d: %s  %s%s%s\n", number, ok ? "PASS" : "FAIL", what.c_str(),
                error.empty() ? "" : " -- ", error.c_str());
    for (const auto& n : notes) std::printf("              %s\n", n.c_str());
    notes.clear();
    std::fflush(stdout);
}

PlanarDiagram fromCorpus(const std::string& dir, const std::string& name) {
    return PlanarDiagram::parse(sweep::readFile(dir + "/" + name));
}

double secondsSince(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool tablesEqualEvenOdd(const GradedChainComplex& a, const GradedChainComplex& b) {
    for (const auto& s : {Specialization::even(), Specialization::odd()})
        if (!(homology(specializeComplex(a, s)) == homology(specializeComplex(b, s))))
            return false;
    return true;
}

/// A basepoint on the smallest arc of every arc component.
std::vector<int> componentArcs(const PlanarDiagram& d) {
    std::vector<int> firsts;
    std::vector<bool> seen;
    for (int arc = 1; arc <= d.arcCount(); ++arc) {
        int c = d.componentOf(arc);
        if (c >= static_cast<int>(seen.size())) seen.resize(c + 1, false);
        if (!seen[c]) {
            seen[c] = true;
            firsts.push_back(arc);
        }
    }
    return firsts;
}

}  // namespace

int main(int argc, char** argv) {
    std::string corpusDir = argc > 1 ? argv[1] : "corpus";
    auto files = sweep::corpusFiles(corpusDir);
    if (files.empty()) {
        std::fprintf(stderr, "no corpus at %s\n", corpusDir.c_str());
        return 1;
    }

    // one shared pass over the corpus feeds criteria 1, 2, 3, 6, 11, 12
    auto sweepResult = sweep::runSweep(corpusDir, 20);
    const auto& ds = sweepResult.diagrams;

    criterion(1, "sign assignment satisfies the face condition and d^2 = 0 over the full ring", [&] {
        for (const auto& r : ds)
            if (!r.signsOk || !r.dSquaredOk || r.secStructure >= 5.0) return false;
        return !ds.empty();
    });

    criterion(2, "homology supported on the diagonal p = q in all eight specializations", [&] {
        for (const auto& r : ds)
            if (!r.diagonalOk) return false;
        return true;
    });

    criterion(3, "euler characteristic equals the bracket-polynomial state sum", [&] {
        for (const auto& r : ds)
            if (!r.eulerOk || !r.eulerSpecOk || r.secEuler >= 1.0) return false;
        return true;
    });

    criterion(4, "equivalent diagrams of the trefoil and figure-eight give equal homology", [&] {
        auto t3 = GradedChainComplex::assemble(fromCorpus(corpusDir, "trefoil_3.pd"));
        auto t4 = GradedChainComplex::assemble(fromCorpus(corpusDir, "trefoil_4.pd"));
        auto f4 = GradedChainComplex::assemble(fromCorpus(corpusDir, "figure_eight_4.pd"));
        auto f6 = GradedChainComplex::assemble(fromCorpus(corpusDir, "figure_eight_6.pd"));
        return tablesEqualEvenOdd(t3, t4) && tablesEqualEvenOdd(f4, f6);
    });

    criterion(5, "even homology matches the independent reference, torsion included", [&] {
        auto t0 = std::chrono::steady_clock::now();
        for (const char* name : {"unknot_crossingless.pd", "hopf.pd", "trefoil_3.pd",
                                 "figure_eight_4.pd"}) {
            auto d = fromCorpus(corpusDir, name);
            auto c = GradedChainComplex::assemble(d);
            auto mine = classical::tableFrom(homology(specializeComplex(c, Specialization::even())));
            if (!(mine == classical::homologyTable(d))) return false;
        }
        return secondsSince(t0) < 10.0;
    });

    criterion(6, "even and odd theories agree mod 2, with equal F2 Betti numbers", [&] {
        for (const auto& r : ds)
            if (!r.mod2Ok || !r.f2Ok) return false;
        return true;
    });

    criterion(7, "disjoint union: twisted comparison map is a chain isomorphism; plain one is not",
              [&] {
                  auto tre = fromCorpus(corpusDir, "trefoil_3.pd");
                  auto unknot = fromCorpus(corpusDir, "unknot_crossingless.pd");
                  auto hopf = fromCorpus(corpusDir, "hopf.pd");
                  for (const auto& other : {unknot, hopf}) {
                      auto a = GradedChainComplex::assemble(tre);
                      auto b = GradedChainComplex::assemble(other);
                      auto u = unionComplex(tre, other);
                      if (!u.checkDSquared().ok) return false;
                      TensorComplex t(a, b);
                      auto cmp = comparisonMap(a, b, t, u);
                      if (!cmp.bijective(u) || !cmp.chainMap(t, u)) return false;
                  }
                  // negative control: dropping the unit twists breaks commutation
                  auto a = GradedChainComplex::assemble(tre);
                  auto b = GradedChainComplex::assemble(hopf);
                  auto u = unionComplex(tre, hopf);
                  TensorComplex untwisted(a, b, false);
                  auto cmp = comparisonMap(a, b, TensorComplex(a, b), u);
                  ComparisonMap naive;
                  naive.entries.resize(cmp.entries.size());
                  for (std::size_t w = 0; w < cmp.entries.size(); ++w)
                      for (const auto& [t, s] : cmp.entries[w])
                          naive.entries[w].push_back({t, UnitMonomial::one()});
                  return naive.bijective(u) && !naive.chainMap(untwisted, u);
              });

    criterion(8, "tensor product over the circle algebra realizes both composite knots", [&] {
        auto t0 = std::chrono::steady_clock::now();
        auto tre = fromCorpus(corpusDir, "trefoil_3.pd");
        tre.addBasepoint(1);
        auto mir = tre.mirror();
        mir.clearBasepoints();
        mir.addBasepoint(1);
        auto cTre = GradedChainComplex::assemble(tre);
        auto cMir = GradedChainComplex::assemble(mir);
        auto granny = GradedChainComplex::assemble(fromCorpus(corpusDir, "granny.pd"));
        auto square = GradedChainComplex::assemble(fromCorpus(corpusDir, "square.pd"));
        auto fGranny = tensorOverAlgebra(cTre, cTre);
        auto fSquare = tensorOverAlgebra(cTre, cMir);
        if (!fGranny.checkDSquared().ok || !fSquare.checkDSquared().ok) return false;
        for (const auto& s : {Specialization::even(), Specialization::odd()}) {
            if (!(homology(specializeFused(fGranny, s)) == homology(specializeComplex(granny, s))))
                return false;
            if (!(homology(specializeFused(fSquare, s)) == homology(specializeComplex(square, s))))
                return false;
        }
        return secondsSince(t0) < 60.0;
    });

    criterion(9, "circle algebra axioms hold and every basepoint action is a commuting chain map",
              [&] {
                  for (const auto& s : Specialization::all8()) {
                      auto t = algebraProduct(s);
                      if (!algebraAssociative(t) || !algebraUnital(t) || !algebraSymmetric(t, s))
                          return false;
                  }
                  for (const auto& p : files) {
                      auto d = PlanarDiagram::parse(sweep::readFile(p));
                      d.clearBasepoints();
                      auto arcs = componentArcs(d);
                      if (arcs.empty()) {
                          d.addBasepoint(0);  // crossingless unknot: mark the free loop
                      } else {
                          for (int arc : arcs) d.addBasepoint(arc);
                      }
                      auto c = GradedChainComplex::assemble(d);
                      const auto& bp = d.basepoints()[0];
                      auto left = buildAction(c, bp, true);
                      auto right = buildAction(c, bp, false);
                      if (!actionIsChainMap(left, c) || !actionIsChainMap(right, c)) return false;
                      for (int w = 0; w <= c.n(); ++w) {
                          // v- twice through one basepoint dies either way round;
                          // the other pairs commute literally in the even theory
                          if (!rowsZero(composeRows(left.minus[w], right.minus[w])) ||
                              !rowsZero(composeRows(right.minus[w], left.minus[w])))
                              return false;
                          for (const auto* x : {&left.plus, &left.minus})
                              for (const auto* y : {&right.plus, &right.minus}) {
                                  if (x == &left.minus && y == &right.minus) continue;
                                  if (!rowsEqualSpecialized(composeRows((*x)[w], (*y)[w]),
                                                            composeRows((*y)[w], (*x)[w]),
                                                            Specialization::even(), 1))
                                      return false;
                              }
                      }
                      if (d.basepoints().size() > 1) {
                          auto actions = multiBasepointActions(c);
                          for (std::size_t i = 0; i < actions.size(); ++i)
                              for (std::size_t j = i + 1; j < actions.size(); ++j)
                                  for (int w = 0; w <= c.n(); ++w) {
                                      auto ab = composeRows(actions[i].minus[w],
                                                            actions[j].minus[w]);
                                      auto ba = composeRows(actions[j].minus[w],
                                                            actions[i].minus[w]);
                                      if (!rowsEqualSpecialized(ab, ba, Specialization::even(), 1))
                                          return false;
                                      if (!rowsEqualSpecialized(ab, ba, Specialization::odd(), 1) &&
                                          !rowsEqualSpecialized(ab, ba, Specialization::odd(), -1))
                                          return false;
                                  }
                      }
                  }
                  return true;
              });

    criterion(10, "basepoint slides: odd actions literally invariant, even ones isomorphic", [&] {
        for (const auto& s : Specialization::all8())
            if (slideMatrix(s).det() != 1) return false;
        if (!slideMatrix(Specialization::odd()).isIdentity()) return false;
        std::pair<const char*, std::pair<int, int>> cases[] = {
            {"unknot_kink_positive.pd", {1, 2}},
            {"hopf.pd", {1, 2}},
            {"trefoil_3.pd", {1, 2}},
        };
        bool ok = true;
        for (const auto& [name, arcs] : cases) {
            auto rep = slideInvarianceCheck(fromCorpus(corpusDir, name), arcs.first, arcs.second);
            ok = ok && rep.oddEqual && rep.evenIsomorphic;
            if (!rep.evenLiteral)
                notes.push_back("report [" + std::string(name) + "]: even action matched " +
                                std::string(rep.evenNeededCorrection
                                                ? "only after the slide correction"
                                                : "by a diagonal sign change") +
                                "; " + rep.note);
        }
        return ok;
    });

    criterion(11, "degree bookkeeping holds on every saddle, face composite, and differential",
              [&] {
                  for (const auto& r : ds)
                      if (!r.degreesOk) return false;
                  // composite cobordisms around every face of the small diagrams
                  for (const auto& p : files) {
                      auto d = PlanarDiagram::parse(sweep::readFile(p));
                      if (d.n() > 6) continue;
                      ResolutionCube cube(d);
                      for (unsigned base = 0; base < (1u << d.n()); ++base)
                          for (int j = 0; j < d.n(); ++j)
                              for (int k = j + 1; k < d.n(); ++k) {
                                  if ((base >> j) & 1 || (base >> k) & 1) continue;
                                  auto first = SparseMap::fromMono(cube.edgeMap(base, j));
                                  auto second =
                                      SparseMap::fromMono(cube.edgeMap(base | (1u << j), k));
                                  auto comp = second.compose(first);
                                  BiDegree want = cube.edgeMap(base, j).deg +
                                                  cube.edgeMap(base | (1u << j), k).deg;
                                  for (const auto& [src, row] : comp.rows)
                                      for (const auto& [dst, coeff] : row)
                                          if (!coeff.isZero() &&
                                              wordDegree(dst, comp.dstLen) -
                                                      wordDegree(src, comp.srcLen) !=
                                                  want)
                                              return false;
                              }
                  }
                  return true;
              });

    criterion(12, "full corpus verification sweep finishes within five minutes", [&] {
        notes.push_back("sweep took " + std::to_string(sweepResult.totalSeconds) + " s over " +
                        std::to_string(ds.size()) + " diagrams");
        return sweepResult.allOk() && sweepResult.totalSeconds < 300.0;
    });

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
