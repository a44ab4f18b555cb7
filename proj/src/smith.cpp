#include "tate/smith.hpp"

namespace tate {

namespace {

struct Worker {
    IntMat a, u, uinv, v, vinv;

    explicit Worker(const IntMat& m)
        : a(m),
          u(IntMat::identity(m.rows())),
          uinv(IntMat::identity(m.rows())),
          v(IntMat::identity(m.cols())),
          vinv(IntMat::identity(m.cols())) {}

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < a.cols(); ++k) std::swap(a(i, k), a(j, k));
        for (int k = 0; k < u.cols(); ++k) std::swap(u(i, k), u(j, k));
        for (int k = 0; k < uinv.rows(); ++k) std::swap(uinv(k, i), uinv(k, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
        for (int k = 0; k < v.rows(); ++k) std::swap(v(k, i), v(k, j));
        for (int k = 0; k < vinv.cols(); ++k) std::swap(vinv(i, k), vinv(j, k));
    }
    // row_i -= q * row_j
    void row_sub(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int k = 0; k < a.cols(); ++k) a(i, k) -= q * a(j, k);
        for (int k = 0; k < u.cols(); ++k) u(i, k) -= q * u(j, k);
        for (int k = 0; k < uinv.rows(); ++k) uinv(k, j) += q * uinv(k, i);
    }
    // col_i -= q * col_j
    void col_sub(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int k = 0; k < a.rows(); ++k) a(k, i) -= q * a(k, j);
        for (int k = 0; k < v.rows(); ++k) v(k, i) -= q * v(k, j);
        for (int k = 0; k < vinv.cols(); ++k) vinv(j, k) += q * vinv(i, k);
    }
    void negate_row(int i) {
        for (int k = 0; k < a.cols(); ++k) a(i, k) = -a(i, k);
        for (int k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
        for (int k = 0; k < uinv.rows(); ++k) uinv(k, i) = -uinv(k, i);
    }

    // Smallest |entry| != 0 in the trailing block; false if block is zero.
    bool find_pivot(int t, int& pi, int& pj) {
        bool found = false;
        Int best;
        for (int i = t; i < a.rows(); ++i)
            for (int j = t; j < a.cols(); ++j) {
                if (a(i, j) == 0) continue;
                Int m = abs(a(i, j));
                if (!found || m < best) {
                    found = true;
                    best = m;
                    pi = i;
                    pj = j;
                    if (best == 1) return true;
                }
            }
        return found;
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& m) {
    Worker w(m);
    int n = std::min(m.rows(), m.cols());
    for (int t = 0; t < n; ++t) {
        int pi, pj;
        if (!w.find_pivot(t, pi, pj)) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        for (;;) {
            // Clear column t below the pivot.
            bool dirty = false;
            for (int i = t + 1; i < m.rows(); ++i) {
                if (w.a(i, t) == 0) continue;
                Int q = div_nearest(w.a(i, t), w.a(t, t));
                w.row_sub(i, t, q);
                if (w.a(i, t) != 0) {
                    w.swap_rows(t, i);  // remainder is strictly smaller
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (int j = t + 1; j < m.cols(); ++j) {
                if (w.a(t, j) == 0) continue;
                Int q = div_nearest(w.a(t, j), w.a(t, t));
                w.col_sub(j, t, q);
                if (w.a(t, j) != 0) {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Divisibility: pivot must divide the remaining block.
            bool fixed = true;
            for (int i = t + 1; i < m.rows() && fixed; ++i)
                for (int j = t + 1; j < m.cols() && fixed; ++j)
                    if (w.a(i, j) % w.a(t, t) != 0) {
                        w.row_sub(t, i, Int(-1));  // row_t += row_i
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (w.a(t, t) < 0) w.negate_row(t);
    }
    SmithDecomposition d;
    d.U = std::move(w.u);
    d.Uinv = std::move(w.uinv);
    d.V = std::move(w.v);
    d.Vinv = std::move(w.vinv);
    d.S = std::move(w.a);
    for (int t = 0; t < n; ++t)
        if (d.S(t, t) != 0) d.invariant_factors.push_back(d.S(t, t));
    return d;
}

IntMat int_kernel(const IntMat& a) {
    if (a.rows() == 0) return IntMat::identity(a.cols());
    SmithDecomposition d = smith_normal_form(a);
    std::vector<int> idx;
    for (int j = d.rank(); j < a.cols(); ++j) idx.push_back(j);
    return d.V.cols_subset(idx);
}

std::optional<IntMat> int_solve(const IntMat& a, const IntMat& b) {
    assert(a.rows() == b.rows());
    SmithDecomposition d = smith_normal_form(a);
    IntMat ub = d.U * b;
    IntMat y(a.cols(), b.cols());
    int r = d.rank();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            if (i < r) {
                if (ub(i, j) % d.S(i, i) != 0) return std::nullopt;
                if (i < a.cols()) y(i, j) = ub(i, j) / d.S(i, i);
            } else if (ub(i, j) != 0) {
                return std::nullopt;
            }
        }
    return d.V * y;
}

IntMat int_image(const IntMat& a) {
    SmithDecomposition d = smith_normal_form(a);
    int r = d.rank();
    IntMat img(a.rows(), r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < a.rows(); ++i) img(i, j) = d.Uinv(i, j) * d.S(j, j);
    return img;
}

bool same_lattice(const IntMat& a, const IntMat& b) {
    assert(a.rows() == b.rows());
    return int_solve(a, b).has_value() && int_solve(b, a).has_value();
}

}  // namespace tate
