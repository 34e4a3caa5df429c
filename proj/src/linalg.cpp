#include "projsig/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace projsig {

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMat r(n, RatVec(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        assert(a[i].size() == k);
        for (std::size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (std::size_t l = 0; l < m; ++l) r[i][l] += a[i][j] * b[j][l];
        }
    }
    return r;
}

RatVec mat_apply(const RatMat& a, const RatVec& v) {
    RatVec r(a.size(), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        assert(a[i].size() == v.size());
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    }
    return r;
}

Rat det(RatMat m) {
    std::size_t n = m.size();
    Rat d(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != k) {
            std::swap(m[p], m[k]);
            d = -d;
        }
        d *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return d;
}

std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rat inv = Rat(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(int(c));
        ++r;
    }
    return pivots;
}

int rank(RatMat m) { return int(rref(m).size()); }

std::vector<RatVec> nullspace(const RatMat& m_in, int cols) {
    RatMat m = m_in;
    for ([[maybe_unused]] auto& row : m) assert(int(row.size()) == cols);
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = rref(a);
    // Inconsistent iff a pivot lands in the appended column.
    if (!pivots.empty() && pivots.back() == int(cols)) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

std::optional<RatMat> inverse(RatMat m) {
    std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("inverse: not square");
        for (std::size_t j = 0; j < n; ++j) m[i].push_back(i == j ? Rat(1) : Rat(0));
    }
    auto pivots = rref(m);
    // Invertible iff all n pivots land in the left block.
    std::size_t left_pivots = 0;
    for (int c : pivots)
        if (c < int(n)) ++left_pivots;
    if (left_pivots != n) return std::nullopt;
    RatMat inv(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

} // namespace projsig
