#include "tate/chain.hpp"

namespace tate {

std::vector<Int> HomologyZ::coords(const std::vector<Int>& cycle) const {
    IntMat z(int(cycle.size()), 1);
    for (int i = 0; i < z.rows(); ++i) z(i, 0) = cycle[i];
    auto y = int_solve(kernel_basis_, z);
    if (!y) throw TateError("NotACycle", "vector is not in the kernel lattice");
    IntMat c = ux_ * (*y);
    std::vector<Int> out;
    out.reserve(live_.size());
    for (int i : live_) {
        if (all_orders_[i] > 1) out.push_back(mod_floor(c(i, 0), all_orders_[i]));
        else out.push_back(c(i, 0));
    }
    return out;
}

bool HomologyZ::class_is_zero(const std::vector<Int>& cycle) const {
    for (auto& c : coords(cycle))
        if (c != 0) return false;
    return true;
}

bool HomologyZ::is_cycle(const std::vector<Int>& chain) const {
    IntMat z(int(chain.size()), 1);
    for (int i = 0; i < z.rows(); ++i) z(i, 0) = chain[i];
    return int_solve(kernel_basis_, z).has_value();
}

HomologyZ homology_of_pair_z(const IntMat& d_in, const IntMat& d_out) {
    assert(d_in.rows() == d_out.cols());
    if (!(d_out * d_in).is_zero())
        throw TateError("CompositionNonzero", "d_out * d_in != 0");
    HomologyZ h;
    h.kernel_basis_ = int_kernel(d_out);
    int k = h.kernel_basis_.cols();
    auto x = int_solve(h.kernel_basis_, d_in);
    assert(x);  // im(d_in) lies in the kernel lattice by the chain condition
    SmithDecomposition sd = smith_normal_form(*x);
    h.ux_ = sd.U;
    h.all_orders_.assign(k, Int(0));
    for (int i = 0; i < sd.rank(); ++i) h.all_orders_[i] = sd.S(i, i);
    std::vector<Int> torsion;
    for (int i = 0; i < k; ++i) {
        if (h.all_orders_[i] == 1) continue;
        h.live_.push_back(i);
        if (h.all_orders_[i] > 1) torsion.push_back(h.all_orders_[i]);
    }
    long free_rank = 0;
    for (int i : h.live_)
        if (h.all_orders_[i] == 0) ++free_rank;
    h.group = FgAbGroup(free_rank, torsion);
    h.orders.clear();
    for (int i : h.live_) h.orders.push_back(h.all_orders_[i] > 1 ? h.all_orders_[i] : Int(0));
    IntMat basis = h.kernel_basis_ * sd.Uinv;  // columns are the b-basis in ambient coords
    h.reps = basis.cols_subset(h.live_);
    return h;
}

std::vector<Rat> HomologyQ::coords(const std::vector<Rat>& cycle) const {
    RatMat z(int(cycle.size()), 1);
    for (int i = 0; i < z.rows(); ++i) z(i, 0) = cycle[i];
    auto y = solve(kernel_basis_, z);
    if (!y) throw TateError("NotACycle", "vector is not in the kernel");
    RatMat c = winv_ * (*y);
    std::vector<Rat> out;
    out.reserve(size_t(dim));
    for (int i = img_rank_; i < c.rows(); ++i) out.push_back(c(i, 0));
    return out;
}

bool HomologyQ::class_is_zero(const std::vector<Rat>& cycle) const {
    for (auto& c : coords(cycle))
        if (c != 0) return false;
    return true;
}

bool HomologyQ::is_cycle(const std::vector<Rat>& chain) const {
    RatMat z(int(chain.size()), 1);
    for (int i = 0; i < z.rows(); ++i) z(i, 0) = chain[i];
    return solve(kernel_basis_, z).has_value();
}

HomologyQ homology_of_pair_q(const RatMat& d_in, const RatMat& d_out) {
    assert(d_in.rows() == d_out.cols());
    if (!(d_out * d_in).is_zero())
        throw TateError("CompositionNonzero", "d_out * d_in != 0");
    HomologyQ h;
    h.kernel_basis_ = kernel(d_out);
    int k = h.kernel_basis_.cols();
    auto m = solve(h.kernel_basis_, d_in);
    assert(m);
    RatMat img = column_space(*m);  // k x rho
    h.img_rank_ = img.cols();
    // Complete the image basis to a basis of Q^k by unit vectors.
    RatMat w = img;
    std::vector<int> comp;
    for (int j = 0; j < k && w.cols() < k; ++j) {
        RatMat e(k, 1);
        e(j, 0) = 1;
        RatMat cand = w.hcat(e);
        if (rank(cand) == cand.cols()) {
            w = cand;
            comp.push_back(j);
        }
    }
    h.dim = k - h.img_rank_;
    if (k > 0) {
        auto winv = inverse(w);
        assert(winv);
        h.winv_ = *winv;
    } else {
        h.winv_ = RatMat(0, 0);
    }
    RatMat sel(k, int(comp.size()));
    for (int j = 0; j < int(comp.size()); ++j) sel(comp[j], j) = 1;
    h.reps = h.kernel_basis_ * sel;
    return h;
}

bool AbGroupMap::injective() const {
    int t = matrix.rows(), s = matrix.cols();
    // Lattice of (x, y) with M x = R_t y, R_t the diagonal target relations.
    int nt = 0;
    for (auto& o : target_orders)
        if (o > 1) ++nt;
    IntMat sys(t, s + nt);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < s; ++j) sys(i, j) = matrix(i, j);
    {
        int c = s;
        for (int i = 0; i < t; ++i)
            if (target_orders[i] > 1) sys(i, c++) = -target_orders[i];
    }
    IntMat ker = int_kernel(sys);
    // Projection to x must be 0 modulo the source relations.
    for (int j = 0; j < ker.cols(); ++j)
        for (int i = 0; i < s; ++i) {
            const Int& xi = ker(i, j);
            if (source_orders[i] > 1) {
                if (xi % source_orders[i] != 0) return false;
            } else if (source_orders[i] == 0) {
                if (xi != 0) return false;
            }
        }
    return true;
}

bool AbGroupMap::surjective() const {
    int t = matrix.rows();
    int nt = 0;
    for (auto& o : target_orders)
        if (o > 1) ++nt;
    IntMat sys(t, matrix.cols() + nt);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < matrix.cols(); ++j) sys(i, j) = matrix(i, j);
    {
        int c = matrix.cols();
        for (int i = 0; i < t; ++i)
            if (target_orders[i] > 1) sys(i, c++) = target_orders[i];
    }
    SmithDecomposition sd = smith_normal_form(sys);
    if (sd.rank() < t) return false;
    for (auto& d : sd.invariant_factors)
        if (d != 1) return false;
    return true;
}

bool AbGroupMap::is_zero() const { return matrix.is_zero(); }

std::vector<Int> AbGroupMap::apply(const std::vector<Int>& x) const {
    assert(int(x.size()) == matrix.cols());
    std::vector<Int> y(matrix.rows(), Int(0));
    for (int i = 0; i < matrix.rows(); ++i) {
        for (int j = 0; j < matrix.cols(); ++j) y[i] += matrix(i, j) * x[j];
        if (target_orders[i] > 1) y[i] = mod_floor(y[i], target_orders[i]);
    }
    return y;
}

AbGroupMap induced_map_z(const HomologyZ& src, const HomologyZ& tgt, const IntMat& f) {
    AbGroupMap m;
    m.source = src.group;
    m.target = tgt.group;
    m.source_orders = src.orders;
    m.target_orders = tgt.orders;
    m.matrix = IntMat(int(tgt.orders.size()), int(src.orders.size()));
    for (int j = 0; j < src.reps.cols(); ++j) {
        std::vector<Int> w = f.apply(src.reps.col(j));
        if (!tgt.is_cycle(w))
            throw TateError("NotChainMap", "image of a cycle representative is not a cycle");
        auto c = tgt.coords(w);
        for (int i = 0; i < int(c.size()); ++i) m.matrix(i, j) = c[i];
        // Well-definedness on torsion summands.
        if (src.orders[j] > 1) {
            for (int i = 0; i < int(c.size()); ++i) {
                Int v = c[i] * src.orders[j];
                if (tgt.orders[i] > 1) v = mod_floor(v, tgt.orders[i]);
                if (v != 0)
                    throw TateError("NotChainMap", "induced map not well-defined on torsion");
            }
        }
    }
    return m;
}

VectorSpaceMap induced_map_q(const HomologyQ& src, const HomologyQ& tgt, const RatMat& f) {
    VectorSpaceMap m;
    m.source_dim = src.dim;
    m.target_dim = tgt.dim;
    m.matrix = RatMat(int(tgt.dim), int(src.dim));
    for (int j = 0; j < src.reps.cols(); ++j) {
        std::vector<Rat> w = f.apply(src.reps.col(j));
        if (!tgt.is_cycle(w))
            throw TateError("NotChainMap", "image of a cycle representative is not a cycle");
        auto c = tgt.coords(w);
        for (int i = 0; i < int(c.size()); ++i) m.matrix(i, j) = c[i];
    }
    return m;
}

bool commutes_z(const IntMat& f_low, const IntMat& d_src, const IntMat& d_tgt, const IntMat& f_high) {
    return f_low * d_src == d_tgt * f_high;
}

}  // namespace tate
