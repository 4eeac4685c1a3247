#pragma once

// Full invariant sweep over a directory of diagram files. Shared between the
// command-line `verify` command and the acceptance harness so the expensive
// pass runs only once.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chronkh/complex.hpp"

namespace chronkh::sweep {

struct DiagramResult {
    std::string name;
    int crossings = 0;
    bool signsOk = false;      // face condition on the sign assignment
    bool dSquaredOk = false;   // d^2 = 0 over the full ring
    bool degreesOk = false;    // saddle degrees and bidegree homogeneity
    bool eulerOk = false;      // euler characteristic = bracket state sum
    bool diagonalOk = false;   // homology supported on p = q, all 8 specializations
    bool eulerSpecOk = false;  // euler from homology = euler of complex, all 8
    bool mod2Ok = false;       // even and odd differentials congruent mod 2
    bool f2Ok = false;         // equal F2 Betti numbers
    double secStructure = 0;   // parse + signs + d^2 + degrees
    double secEuler = 0;       // bracket oracle + comparison
    double secHomology = 0;    // all-8 homology work
    std::string failure;       // first failing invariant, empty when clean

    bool ok() const { return failure.empty(); }
};

struct SweepResult {
    std::vector<DiagramResult> diagrams;
    double totalSeconds = 0;

    bool allOk() const {
        return std::all_of(diagrams.begin(), diagrams.end(),
                           [](const DiagramResult& r) { return r.ok(); });
    }
    std::string firstFailure() const {
        for (const auto& r : diagrams)
            if (!r.ok()) return r.name + ": " + r.failure;
        return {};
    }
};

inline double seconds(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

/// Runs every invariant on one diagram. `injectFault` corrupts one edge sign
/// before assembly and serves as the negative control for the verifier.
inline DiagramResult checkDiagram(const std::string& name, const PlanarDiagram& d,
                                  int maxCrossings, bool injectFault = false) {
    DiagramResult r;
    r.name = name;
    r.crossings = d.n();
    auto fail = [&](const std::string& what) {
        if (r.failure.empty()) r.failure = what;
    };

    auto t0 = std::chrono::steady_clock::now();
    auto cube = std::make_unique<ResolutionCube>(d, maxCrossings);
    cube->solveSigns();
    if (injectFault && d.n() > 0) cube->setEps(0, 0, cube->eps(0, 0) * UnitMonomial::X());
    try {
        cube->verifySigns();
        r.signsOk = true;
    } catch (const std::exception&) {
        fail("sign assignment violates the face condition");
    }

    // degree bookkeeping on every saddle
    r.degreesOk = true;
    for (unsigned mask = 0; mask < (1u << d.n()); ++mask)
        for (int dir = 0; dir < d.n(); ++dir) {
            if ((mask >> dir) & 1) continue;
            auto m = cube->edgeMap(mask, dir);
            BiDegree want = cube->edge(mask, dir).arc.isMerge ? BiDegree{-1, 0} : BiDegree{0, -1};
            if (m.deg != want) r.degreesOk = false;
            for (Word w = 0; w < (Word{1} << m.srcLen); ++w)
                for (const auto& [t, u] : m.rows[w])
                    if (wordDegree(t, m.dstLen) - wordDegree(w, m.srcLen) != m.deg)
                        r.degreesOk = false;
        }

    auto c = GradedChainComplex::assembleWithCube(std::move(cube));
    r.dSquaredOk = c.checkDSquared().ok;
    if (!r.dSquaredOk) fail("d^2 != 0 over the full ring");
    if (!c.bidegreeHomogeneous()) r.degreesOk = false;
    if (!r.degreesOk) fail("degree bookkeeping broken");
    r.secStructure = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    auto chi = c.eulerCharacteristic().collapsed();
    r.eulerOk = chi == jonesOracle(d);
    if (!r.eulerOk) fail("euler characteristic differs from the bracket state sum");
    r.secEuler = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    r.diagonalOk = r.eulerSpecOk = true;
    for (const auto& s : Specialization::all8()) {
        auto sc = specializeComplex(c, s);
        if (!sc.checkDSquared().ok) {
            r.dSquaredOk = false;
            fail("d^2 != 0 after specialization " + s.name());
        }
        auto table = homology(sc);
        for (const auto& e : table.entries)
            if (e.p2 != e.q2) r.diagonalOk = false;
        if (eulerFromTable(table) != chi) r.eulerSpecOk = false;
    }
    if (!r.diagonalOk) fail("homology not supported on the diagonal p = q");
    if (!r.eulerSpecOk) fail("euler characteristic not preserved by homology");

    auto ev = specializeComplex(c, Specialization::even());
    auto od = specializeComplex(c, Specialization::odd());
    r.mod2Ok = true;
    for (std::size_t w = 0; w < ev.diffs.size(); ++w)
        for (std::size_t i = 0; i < ev.diffs[w].size(); ++i) {
            if (ev.diffs[w][i].size() != od.diffs[w][i].size()) {
                r.mod2Ok = false;
                continue;
            }
            for (std::size_t k = 0; k < ev.diffs[w][i].size(); ++k)
                if (ev.diffs[w][i][k].first != od.diffs[w][i][k].first ||
                    (ev.diffs[w][i][k].second - od.diffs[w][i][k].second) % 2 != 0)
                    r.mod2Ok = false;
        }
    if (!r.mod2Ok) fail("even and odd differentials not congruent mod 2");
    r.f2Ok = homology(ev, 2) == homology(od, 2);
    if (!r.f2Ok) fail("F2 Betti numbers differ between even and odd");
    r.secHomology = seconds(t0);

    return r;
}

inline std::string readFile(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw MalformedInput("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// All *.pd files of a directory in name order.
inline std::vector<std::filesystem::path> corpusFiles(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".pd") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

inline SweepResult runSweep(const std::filesystem::path& dir, int maxCrossings,
                            bool injectFault = false, unsigned jobs = 0) {
    SweepResult out;
    auto t0 = std::chrono::steady_clock::now();
    auto files = corpusFiles(dir);
    // parse up front so malformed input surfaces as an exception (invalid
    // input) rather than as a verification failure
    std::vector<PlanarDiagram> parsed;
    for (const auto& p : files) parsed.push_back(PlanarDiagram::parse(readFile(p)));
    out.diagrams.resize(files.size());
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, std::max<std::size_t>(files.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
            try {
                out.diagrams[i] = checkDiagram(files[i].filename().string(), parsed[i],
                                               maxCrossings, injectFault);
            } catch (const std::exception& e) {
                out.diagrams[i].name = files[i].filename().string();
                out.diagrams[i].failure = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    out.totalSeconds = seconds(t0);
    return out;
}

}  // namespace chronkh::sweep
