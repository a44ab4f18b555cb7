#include "tate/window.hpp"

#include <sstream>

namespace tate {

int WindowComplex::find(int d, const InstGen& ig) const {
    auto it = gens.find(d);
    if (it == gens.end()) return -1;
    for (int i = 0; i < int(it->second.size()); ++i)
        if (it->second[i] == ig) return i;
    return -1;
}

std::string WindowComplex::label(int d, int i) const {
    const InstGen& ig = gens_at(d).at(i);
    std::ostringstream os;
    os << source->generators[ig.gen].id << "@" << ig.shift;
    return os.str();
}

bool WindowComplex::d_squared_is_zero() const {
    for (auto& [d, m] : diff) {
        auto up = diff.find(d + 1);
        if (up == diff.end()) continue;
        if (!(m * up->second).is_zero()) return false;
    }
    return true;
}

WindowComplex instantiate_window(const std::shared_ptr<const EquivariantComplex>& c,
                                 const TruncationSpec& spec) {
    require_valid(*c);
    if (spec.d_low > spec.d_high)
        throw TateError("InvalidComplex", "degree window is empty");
    WindowComplex w;
    w.spec = spec;
    w.source = c;

    auto admit = [&](int gen_idx, int k) {
        const BaseGenerator& g = c->generators[gen_idx];
        int level = g.mu_level + k;
        if (spec.a_mu_level && level < *spec.a_mu_level) return false;
        if (spec.b_mu_level && level > *spec.b_mu_level) return false;
        if (spec.b_action && g.h_action > *spec.b_action) return false;
        return true;
    };

    for (int d = spec.d_low - 1; d <= spec.d_high + 1; ++d) {
        std::vector<InstGen> row;
        for (int gi = 0; gi < int(c->generators.size()); ++gi) {
            int delta = d - c->generators[gi].degree;
            if (delta % 2 != 0) continue;
            int k = delta / 2;
            if (admit(gi, k)) row.push_back({gi, k});
        }
        w.gens[d] = std::move(row);
    }

    for (int d = spec.d_low; d <= spec.d_high + 1; ++d) {
        const auto& src_row = w.gens_at(d);
        IntMat m(w.dim(d - 1), int(src_row.size()));
        for (int j = 0; j < int(src_row.size()); ++j) {
            const InstGen& ig = src_row[j];
            const BaseGenerator& g = c->generators[ig.gen];
            for (auto& t : c->terms(g.id)) {
                InstGen tgt{c->index_of(t.target), ig.shift + t.u_shift};
                int i = w.find(d - 1, tgt);
                if (i < 0) {
                    // the only admissible reason to drop a term is the a-cut
                    const BaseGenerator& tg = c->generators[tgt.gen];
                    int level = tg.mu_level + tgt.shift;
                    assert(spec.a_mu_level && level < *spec.a_mu_level);
                    (void)level;
                    (void)tg;
                    continue;
                }
                m(i, j) += t.coeff;
            }
        }
        w.diff[d] = std::move(m);
    }
    assert(w.d_squared_is_zero());
    return w;
}

WindowComplex u_shift(const WindowComplex& w) {
    WindowComplex s = instantiate_window(w.source, w.spec.shifted_by_u());
    for (auto& [d, row] : w.gens) {
        const auto& target_row = s.gens_at(d + 2);
        if (int(target_row.size()) != int(row.size()))
            throw TateError("WindowMismatch", "u-shift does not biject generators");
        for (int i = 0; i < int(row.size()); ++i) {
            InstGen expect{row[i].gen, row[i].shift + 1};
            if (!(target_row[i] == expect))
                throw TateError("WindowMismatch", "u-shift misaligns " + w.label(d, i));
        }
    }
    for (auto& [d, m] : w.diff) {
        auto it = s.diff.find(d + 2);
        if (it == s.diff.end() || !(it->second == m))
            throw TateError("WindowMismatch", "u-shift does not intertwine boundaries");
    }
    return s;
}

std::map<int, IntMat> chain_embedding(const WindowComplex& sub, const WindowComplex& super) {
    std::map<int, IntMat> f;
    for (auto& [d, row] : sub.gens) {
        IntMat m(super.dim(d), int(row.size()));
        for (int j = 0; j < int(row.size()); ++j) {
            int i = super.find(d, row[j]);
            if (i < 0)
                throw TateError("WindowMismatch",
                                "generator " + sub.label(d, j) + " missing from supercomplex");
            m(i, j) = 1;
        }
        f[d] = std::move(m);
    }
    if (!is_chain_map(f, sub, super))
        throw TateError("NotChainMap", "window embedding fails to commute with boundaries");
    return f;
}

std::map<int, IntMat> chain_projection(const WindowComplex& from, const WindowComplex& to) {
    std::map<int, IntMat> f;
    for (auto& [d, row] : from.gens) {
        IntMat m(to.dim(d), int(row.size()));
        for (int j = 0; j < int(row.size()); ++j) {
            int i = to.find(d, row[j]);
            if (i >= 0) m(i, j) = 1;
        }
        f[d] = std::move(m);
    }
    if (!is_chain_map(f, from, to))
        throw TateError("NotChainMap", "window projection fails to commute with boundaries");
    return f;
}

bool is_chain_map(const std::map<int, IntMat>& f, const WindowComplex& from,
                  const WindowComplex& to) {
    for (int d = from.spec.d_low; d <= from.spec.d_high + 1; ++d) {
        auto flo = f.find(d - 1);
        auto fhi = f.find(d);
        if (flo == f.end() || fhi == f.end()) continue;
        if (!(flo->second * from.diff_or_zero(d) == to.diff_or_zero(d) * fhi->second))
            return false;
    }
    return true;
}

ChainComplexZ to_chain_complex(const WindowComplex& w) {
    ChainComplexZ c;
    c.d_low = w.spec.d_low - 1;
    c.d_high = w.spec.d_high + 1;
    for (auto& [d, row] : w.gens) {
        std::vector<std::string> names;
        for (int i = 0; i < int(row.size()); ++i) names.push_back(w.label(d, i));
        c.labels[d] = std::move(names);
    }
    c.diff = w.diff;
    return c;
}

ChainComplexQ to_rational(const ChainComplexZ& c) {
    ChainComplexQ q;
    q.d_low = c.d_low;
    q.d_high = c.d_high;
    q.labels = c.labels;
    for (auto& [d, m] : c.diff) q.diff[d] = to_rat(m);
    return q;
}

namespace {

template <class T>
bool is_unit(const T& v);
template <>
bool is_unit<Int>(const Int& v) {
    return v == 1 || v == -1;
}
template <>
bool is_unit<Rat>(const Rat& v) {
    return v != 0;
}

template <class T>
ChainComplex<T> reduce_impl(ChainComplex<T> c,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
    for (auto& [y_label, x_label] : pairs) {
        int dy = c.d_low;
        int yj = -1;
        for (int d = c.d_low; d <= c.d_high; ++d) {
            int idx = c.find(d, y_label);
            if (idx >= 0) {
                dy = d;
                yj = idx;
                break;
            }
        }
        if (yj < 0) throw TateError("UnknownGenerator", y_label);
        int dx = dy - 1;
        int xi = c.find(dx, x_label);
        if (xi < 0) throw TateError("UnknownGenerator", x_label + " one degree below " + y_label);

        Matrix<T>& dmat = c.diff.at(dy);
        T pivot = dmat(xi, yj);
        if (!is_unit(pivot))
            throw TateError("NonInvertiblePivot",
                            y_label + "/" + x_label + " pairing is not a unit");

        // Gaussian cancellation of the acyclic pair.
        int rows = dmat.rows(), cols = dmat.cols();
        Matrix<T> nd(rows - 1, cols - 1);
        for (int j = 0, jj = 0; j < cols; ++j) {
            if (j == yj) continue;
            for (int i = 0, ii = 0; i < rows; ++i) {
                if (i == xi) continue;
                nd(ii, jj) = dmat(i, j) - dmat(xi, j) * dmat(i, yj) / pivot;
                ++ii;
            }
            ++jj;
        }
        c.diff[dy] = std::move(nd);

        // Drop the y-row above and the x-column below.
        if (auto it = c.diff.find(dy + 1); it != c.diff.end()) {
            Matrix<T>& up = it->second;
            Matrix<T> nu(up.rows() - 1, up.cols());
            for (int i = 0, ii = 0; i < up.rows(); ++i) {
                if (i == yj) continue;
                for (int j = 0; j < up.cols(); ++j) nu(ii, j) = up(i, j);
                ++ii;
            }
            it->second = std::move(nu);
        }
        if (auto it = c.diff.find(dx); it != c.diff.end()) {
            Matrix<T>& down = it->second;
            Matrix<T> nl(down.rows(), down.cols() - 1);
            for (int j = 0, jj = 0; j < down.cols(); ++j) {
                if (j == xi) continue;
                for (int i = 0; i < down.rows(); ++i) nl(i, jj) = down(i, j);
                ++jj;
            }
            it->second = std::move(nl);
        }
        c.labels[dy].erase(c.labels[dy].begin() + yj);
        c.labels[dx].erase(c.labels[dx].begin() + xi);
        if (!c.d_squared_is_zero())
            throw TateError("InvalidComplex", "reduction broke d^2 = 0");
    }
    return c;
}

}  // namespace

ChainComplexZ reduce_complex(const ChainComplexZ& c,
                             const std::vector<std::pair<std::string, std::string>>& pairs) {
    return reduce_impl(c, pairs);
}

ChainComplexQ reduce_complex_q(const ChainComplexQ& c,
                               const std::vector<std::pair<std::string, std::string>>& pairs) {
    return reduce_impl(c, pairs);
}

}  // namespace tate
