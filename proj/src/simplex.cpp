#include "wpw/simplex.hpp"

#include "wpw/errors.hpp"

namespace wpw {

LpResult simplex_max(const std::vector<std::vector<BigRat>>& A, const std::vector<BigRat>& b,
                     const std::vector<BigRat>& c) {
    const std::size_t m = b.size();
    const std::size_t n = c.size();
    const std::size_t cols = n + m;
    std::vector<std::vector<BigRat>> T(m, std::vector<BigRat>(cols + 1));
    std::vector<BigRat> obj(cols + 1);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) throw PreconditionViolated("simplex_max needs b >= 0");
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][cols] = b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) obj[j] = -c[j];

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        BigRat best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            BigRat ratio = T[i][cols] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) {
            LpResult r;
            r.status = LpResult::Unbounded;
            return r;
        }
        BigRat piv = T[leave][enter];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= cols; ++j) {
            if (T[leave][j] != 0) {
                T[leave][j] /= piv;
                nz.push_back(j);
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            BigRat f = T[i][enter];
            for (std::size_t j : nz) T[i][j] -= f * T[leave][j];
        }
        if (obj[enter] != 0) {
            BigRat f = obj[enter];
            for (std::size_t j : nz) obj[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }

    LpResult r;
    r.x.assign(n, BigRat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) r.x[basis[i]] = T[i][cols];
    r.dual.resize(m);
    for (std::size_t i = 0; i < m; ++i) r.dual[i] = obj[n + i];
    r.objective = obj[cols];
    return r;
}

}  // namespace wpw
