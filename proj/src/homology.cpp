#include "chronkh/homology.hpp"

#include <algorithm>
#include <cstdlib>

namespace chronkh {

namespace {

Int absInt(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

std::vector<Int> smithInvariants(IntMat a) {
    std::vector<Int> out;
    if (a.empty() || a[0].empty()) return out;
    std::size_t rows = a.size(), cols = a[0].size();
    std::size_t top = 0, left = 0;
    while (top < rows && left < cols) {
        // find the smallest nonzero entry as pivot; a unit is always best,
        // so stop scanning as soon as one turns up
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = top; i < rows && pr == rows; ++i)
            for (std::size_t j = left; j < cols; ++j)
                if (absInt(a[i][j]) == 1) {
                    pr = i, pc = j;
                    break;
                }
        if (pr == rows)
            for (std::size_t i = top; i < rows; ++i)
                for (std::size_t j = left; j < cols; ++j)
                    if (a[i][j] != 0 &&
                        (pr == rows || absInt(a[i][j]) < absInt(a[pr][pc])))
                        pr = i, pc = j;
        if (pr == rows) break;  // all zero
        std::swap(a[top], a[pr]);
        for (std::size_t i = top; i < rows; ++i) std::swap(a[i][left], a[i][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = top + 1; i < rows; ++i) {
                if (a[i][left] == 0) continue;
                Int q = a[i][left] / a[top][left];
                if (q != 0)
                    for (std::size_t j = left; j < cols; ++j) a[i][j] -= q * a[top][j];
                if (a[i][left] != 0) {  // remainder smaller than pivot: swap up
                    std::swap(a[top], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = left + 1; j < cols; ++j) {
                if (a[top][j] == 0) continue;
                Int q = a[top][j] / a[top][left];
                if (q != 0)
                    for (std::size_t i = top; i < rows; ++i) a[i][j] -= q * a[i][left];
                if (a[top][j] != 0) {
                    for (std::size_t i = top; i < rows; ++i) std::swap(a[i][left], a[i][j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            if (absInt(a[top][left]) == 1) break;  // a unit divides everything
            // enforce divisibility of the remaining block by the pivot
            for (std::size_t i = top + 1; i < rows && clean; ++i)
                for (std::size_t j = left + 1; j < cols && clean; ++j)
                    if (a[i][j] % a[top][left] != 0) {
                        for (std::size_t jj = left; jj < cols; ++jj) a[top][jj] += a[i][jj];
                        clean = false;
                    }
        }
        out.push_back(absInt(a[top][left]));
        ++top;
        ++left;
    }
    return out;
}

long rankOverQ(IntMat a) {
    if (a.empty() || a[0].empty()) return 0;
    std::size_t rows = a.size(), cols = a[0].size();
    long rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pr = row;
        while (pr < rows && a[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(a[row], a[pr]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if (a[i][col] == 0) continue;
            // fraction-free elimination
            Int p = a[row][col], q = a[i][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] = a[i][j] * p - a[row][j] * q;
        }
        ++row;
        ++rank;
    }
    return rank;
}

long rankModP(IntMat a, long p) {
    if (a.empty() || a[0].empty()) return 0;
    std::size_t rows = a.size(), cols = a[0].size();
    std::vector<std::vector<long>> m(rows, std::vector<long>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            Int r = a[i][j] % p;
            if (r < 0) r += p;
            m[i][j] = static_cast<long>(r);
        }
    auto inv = [&](long x) {
        long r = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    long rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pr = row;
        while (pr < rows && m[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[row], m[pr]);
        long iv = inv(m[row][col]);
        for (std::size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * iv % p;
        for (std::size_t i = row + 1; i < rows; ++i) {
            long f = m[i][col];
            if (f == 0) continue;
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = ((m[i][j] - f * m[row][j]) % p + p) % p;
        }
        ++row;
        ++rank;
    }
    return rank;
}

bool HomologyTable::sameBetti(const HomologyTable& o) const {
    auto strip = [](const HomologyTable& t) {
        std::vector<HomologyEntry> es;
        for (auto e : t.entries) {
            e.torsion.clear();
            if (e.rank != 0) es.push_back(e);
        }
        return es;
    };
    return strip(*this) == strip(o);
}

}  // namespace chronkh
