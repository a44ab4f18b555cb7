#include "tate/matrix.hpp"

namespace tate {

Int det(const IntMat& a) {
    assert(a.rows() == a.cols());
    int n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

namespace {

// Row echelon reduction over Q; returns pivot (row, col) list. Destructive.
std::vector<std::pair<int, int>> row_echelon(RatMat& m) {
    std::vector<std::pair<int, int>> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        Rat inv = Rat(1) / m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back({r, c});
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const RatMat& a) {
    RatMat m = a;
    return int(row_echelon(m).size());
}

RatMat kernel(const RatMat& a) {
    RatMat m = a;
    auto pivots = row_echelon(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto& [r, c] : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RatMat k(a.cols(), int(free_cols.size()));
    for (int idx = 0; idx < int(free_cols.size()); ++idx) {
        int fc = free_cols[idx];
        k(fc, idx) = 1;
        for (auto& [r, c] : pivots) k(c, idx) = -m(r, fc);
    }
    return k;
}

std::optional<RatMat> solve(const RatMat& a, const RatMat& b) {
    assert(a.rows() == b.rows());
    RatMat m = a.hcat(b);
    auto pivots = row_echelon(m);
    // Inconsistent if a pivot lands in the b-block.
    for (auto& [r, c] : pivots)
        if (c >= a.cols()) return std::nullopt;
    RatMat x(a.cols(), b.cols());
    for (auto& [r, c] : pivots)
        for (int j = 0; j < b.cols(); ++j) x(c, j) = m(r, a.cols() + j);
    return x;
}

std::optional<RatMat> inverse(const RatMat& a) {
    assert(a.rows() == a.cols());
    RatMat m = a.hcat(RatMat::identity(a.rows()));
    auto pivots = row_echelon(m);
    if (int(pivots.size()) != a.rows()) return std::nullopt;
    for (auto& [r, c] : pivots)
        if (c >= a.cols()) return std::nullopt;
    RatMat inv(a.rows(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.rows(); ++j) inv(i, j) = m(i, a.cols() + j);
    return inv;
}

RatMat column_space(const RatMat& a) {
    RatMat m = a;
    auto pivots = row_echelon(m);
    std::vector<int> cols;
    for (auto& [r, c] : pivots) cols.push_back(c);
    return a.cols_subset(cols);
}

bool same_column_space(const RatMat& a, const RatMat& b) {
    assert(a.rows() == b.rows());
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return false;
    return rank(a.hcat(b)) == ra;
}

int rank_mod_p(const IntMat& a, long p) {
    std::vector<std::vector<long>> m(a.rows(), std::vector<long>(a.cols()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m[i][j] = long(mod_floor(a(i, j), Int(p)));
    auto inv_mod = [&](long x) {
        long res = 1, base = x % p, e = p - 2;
        while (e) {
            if (e & 1) res = res * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return res;
    };
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i)
            if (m[i][c] % p != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        long f = inv_mod(m[r][c]);
        for (int j = c; j < a.cols(); ++j) m[r][j] = m[r][j] * f % p;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            long g = m[i][c] % p;
            if (!g) continue;
            for (int j = c; j < a.cols(); ++j)
                m[i][j] = ((m[i][j] - g * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

}  // namespace tate
