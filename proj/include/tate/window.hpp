#pragma once

#include "tate/complex.hpp"

#include <memory>

namespace tate {

// Doubly-truncated window: keep u^k g with mu_level(g)+k >= a_mu_level (a cut,
// quotient from below), h_action(g) <= b_action (subcomplex from above), and
// optionally mu_level(g)+k <= b_mu_level for complexes whose upper filtration
// is A^mu itself. Degrees outside [d_low-1, d_high+1] are not instantiated;
// the extra degree on each side makes interior homology exact.
struct TruncationSpec {
    std::optional<int> a_mu_level;
    std::optional<Rat> b_action;
    std::optional<int> b_mu_level;
    int d_low = 0;
    int d_high = 0;

    TruncationSpec shifted_by_u() const {
        TruncationSpec s = *this;
        if (s.a_mu_level) s.a_mu_level = *s.a_mu_level + 1;
        if (s.b_mu_level) s.b_mu_level = *s.b_mu_level + 1;
        s.d_low += 2;
        s.d_high += 2;
        return s;
    }
};

struct InstGen {
    int gen = 0;    // index into source generators
    int shift = 0;  // u-power
    bool operator==(const InstGen& o) const { return gen == o.gen && shift == o.shift; }
};

class WindowComplex {
  public:
    TruncationSpec spec;
    std::shared_ptr<const EquivariantComplex> source;
    std::map<int, std::vector<InstGen>> gens;  // degrees d_low-1 .. d_high+1
    std::map<int, IntMat> diff;                // d -> (C_d -> C_{d-1}), d in [d_low, d_high+1]

    int dim(int d) const {
        auto it = gens.find(d);
        return it == gens.end() ? 0 : int(it->second.size());
    }
    const std::vector<InstGen>& gens_at(int d) const {
        static const std::vector<InstGen> empty;
        auto it = gens.find(d);
        return it == gens.end() ? empty : it->second;
    }
    IntMat diff_or_zero(int d) const {
        auto it = diff.find(d);
        if (it != diff.end()) return it->second;
        return IntMat(dim(d - 1), dim(d));
    }
    int find(int d, const InstGen& ig) const;
    std::string label(int d, int i) const;

    bool d_squared_is_zero() const;
};

WindowComplex instantiate_window(const std::shared_ptr<const EquivariantComplex>& c,
                                 const TruncationSpec& spec);

// The u-isomorphism onto the shifted window; throws WindowMismatch if the two
// instantiations fail to correspond generator-by-generator.
WindowComplex u_shift(const WindowComplex& w);

// Degreewise chain maps between windows of one complex, by generator identity.
// embedding: every generator of `sub` must appear in `super` (b-inclusions).
// projection: generators of `super` not present in `sub` map to zero (a-cuts).
std::map<int, IntMat> chain_embedding(const WindowComplex& sub, const WindowComplex& super);
std::map<int, IntMat> chain_projection(const WindowComplex& from, const WindowComplex& to);

// Checks f_{d-1} * diff_from_d == diff_to_d * f_d on all interior degrees.
bool is_chain_map(const std::map<int, IntMat>& f, const WindowComplex& from,
                  const WindowComplex& to);

// --- Plain chain complexes and reduction -------------------------------------

template <class T>
struct ChainComplex {
    int d_low = 0, d_high = 0;  // degrees carried, inclusive
    std::map<int, std::vector<std::string>> labels;
    std::map<int, Matrix<T>> diff;  // diff[d]: C_d -> C_{d-1}

    int dim(int d) const {
        auto it = labels.find(d);
        return it == labels.end() ? 0 : int(it->second.size());
    }
    Matrix<T> diff_or_zero(int d) const {
        auto it = diff.find(d);
        if (it != diff.end()) return it->second;
        return Matrix<T>(dim(d - 1), dim(d));
    }
    int find(int d, const std::string& label) const {
        auto it = labels.find(d);
        if (it == labels.end()) return -1;
        for (int i = 0; i < int(it->second.size()); ++i)
            if (it->second[i] == label) return i;
        return -1;
    }
    bool d_squared_is_zero() const {
        for (auto& [d, m] : diff) {
            auto up = diff.find(d + 1);
            if (up == diff.end()) continue;
            if (!(m * up->second).is_zero()) return false;
        }
        return true;
    }
};

using ChainComplexZ = ChainComplex<Int>;
using ChainComplexQ = ChainComplex<Rat>;

ChainComplexZ to_chain_complex(const WindowComplex& w);
ChainComplexQ to_rational(const ChainComplexZ& c);

// Cancel the acyclic pairs (y, x), y one degree above x, with <dy, x> a unit.
// Pairs are cancelled in order; throws NonInvertiblePivot when the pairing
// coefficient is not a unit in the coefficient ring.
ChainComplexZ reduce_complex(const ChainComplexZ& c,
                             const std::vector<std::pair<std::string, std::string>>& pairs);
ChainComplexQ reduce_complex_q(const ChainComplexQ& c,
                               const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace tate
