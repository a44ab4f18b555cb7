#include "tate/homology.hpp"

namespace tate {

GradedHomologyZ homology_z(const WindowComplex& w) {
    GradedHomologyZ g;
    g.d_low = w.spec.d_low;
    g.d_high = w.spec.d_high;
    for (int d = g.d_low; d <= g.d_high; ++d)
        g.at[d] = homology_of_pair_z(w.diff_or_zero(d + 1), w.diff_or_zero(d));
    return g;
}

GradedHomologyQ homology_q(const WindowComplex& w) {
    GradedHomologyQ g;
    g.d_low = w.spec.d_low;
    g.d_high = w.spec.d_high;
    for (int d = g.d_low; d <= g.d_high; ++d)
        g.at[d] = homology_of_pair_q(to_rat(w.diff_or_zero(d + 1)), to_rat(w.diff_or_zero(d)));
    return g;
}

GradedHomologyZ homology_z(const ChainComplexZ& c) {
    GradedHomologyZ g;
    g.d_low = c.d_low + 1;
    g.d_high = c.d_high - 1;
    for (int d = g.d_low; d <= g.d_high; ++d)
        g.at[d] = homology_of_pair_z(c.diff_or_zero(d + 1), c.diff_or_zero(d));
    return g;
}

GradedHomologyQ homology_q(const ChainComplexQ& c) {
    GradedHomologyQ g;
    g.d_low = c.d_low + 1;
    g.d_high = c.d_high - 1;
    for (int d = g.d_low; d <= g.d_high; ++d)
        g.at[d] = homology_of_pair_q(c.diff_or_zero(d + 1), c.diff_or_zero(d));
    return g;
}

HomologyMapZ induced_on_homology_z(const std::map<int, IntMat>& f, const GradedHomologyZ& src,
                                   const GradedHomologyZ& tgt) {
    HomologyMapZ m;
    for (auto& [d, h] : src.at) {
        if (!tgt.at.count(d)) continue;
        auto it = f.find(d);
        assert(it != f.end());
        m.at[d] = induced_map_z(h, tgt.at.at(d), it->second);
    }
    return m;
}

HomologyMapQ induced_on_homology_q(const std::map<int, IntMat>& f, const GradedHomologyQ& src,
                                   const GradedHomologyQ& tgt) {
    HomologyMapQ m;
    for (auto& [d, h] : src.at) {
        if (!tgt.at.count(d)) continue;
        auto it = f.find(d);
        assert(it != f.end());
        m.at[d] = induced_map_q(h, tgt.at.at(d), to_rat(it->second));
    }
    return m;
}

HomologyMapZ induced_inclusion_z(const WindowComplex& w1, const WindowComplex& w2,
                                 const GradedHomologyZ& h1, const GradedHomologyZ& h2) {
    if (w1.spec.a_mu_level != w2.spec.a_mu_level)
        throw TateError("WindowMismatch", "inclusion requires matching a-cuts");
    return induced_on_homology_z(chain_embedding(w1, w2), h1, h2);
}

HomologyMapZ induced_projection_z(const WindowComplex& w1, const WindowComplex& w2,
                                  const GradedHomologyZ& h1, const GradedHomologyZ& h2) {
    if (w1.spec.b_action != w2.spec.b_action)
        throw TateError("WindowMismatch", "projection requires matching b-cuts");
    return induced_on_homology_z(chain_projection(w1, w2), h1, h2);
}

namespace {

std::vector<Rat> to_vec(const RatMat& m, int col) { return m.col(col); }

}  // namespace

LesReport les_check(const WindowComplex& a, const WindowComplex& b, const WindowComplex& c,
                    const std::map<int, IntMat>& i, const std::map<int, IntMat>& p) {
    LesReport rep;
    int d_low = a.spec.d_low, d_high = a.spec.d_high;

    // Chain-level split exactness, degree by degree.
    for (int d = d_low - 1; d <= d_high + 1; ++d) {
        RatMat iq = to_rat(i.at(d)), pq = to_rat(p.at(d));
        bool ok = rank(iq) == a.dim(d) && rank(pq) == c.dim(d) && (pq * iq).is_zero() &&
                  a.dim(d) + c.dim(d) == b.dim(d);
        if (!ok) rep.chain_level_exact = false;
    }
    if (!rep.chain_level_exact)
        throw TateError("NotExactAtChainLevel", "0 -> A -> B -> C -> 0 is not degreewise exact");

    GradedHomologyQ ha = homology_q(a), hb = homology_q(b), hc = homology_q(c);
    HomologyMapQ mi = induced_on_homology_q(i, ha, hb);
    HomologyMapQ mp = induced_on_homology_q(p, hb, hc);

    // Connecting maps by the zig-zag on representatives.
    std::map<int, RatMat> delta;  // H_d(C) -> H_{d-1}(A)
    for (int d = d_low + 1; d <= d_high; ++d) {
        const HomologyQ& hcd = hc.at.at(d);
        const HomologyQ& had = ha.at.at(d - 1);
        RatMat dm(int(had.dim), int(hcd.dim));
        RatMat pq = to_rat(p.at(d));
        RatMat iq = to_rat(i.at(d - 1));
        RatMat bd = to_rat(b.diff_or_zero(d));
        for (int j = 0; j < hcd.reps.cols(); ++j) {
            RatMat cvec(c.dim(d), 1);
            for (int r = 0; r < c.dim(d); ++r) cvec(r, 0) = hcd.reps(r, j);
            auto lift = solve(pq, cvec);
            assert(lift);
            RatMat db = bd * *lift;
            auto avec = solve(iq, db);
            assert(avec);
            auto cls = had.coords(to_vec(*avec, 0));
            for (int r = 0; r < int(cls.size()); ++r) dm(r, j) = cls[r];
        }
        delta[d] = dm;
        rep.connecting_rank[d] = rank(dm);
    }

    auto node = [&](int d, const std::string& where, const RatMat& incoming,
                    const RatMat& outgoing, long dim_mid) {
        bool zero_comp = (outgoing * incoming).is_zero();
        long rk_in = rank(incoming), rk_out = rank(outgoing);
        bool exact = zero_comp && (rk_in + rk_out == dim_mid);
        rep.nodes.push_back({d, where, dim_mid - rk_out, rk_in, exact});
        if (!exact) rep.all_exact = false;
    };

    for (int d = d_low; d <= d_high; ++d) {
        const RatMat& mi_d = mi.at.at(d).matrix;
        const RatMat& mp_d = mp.at.at(d).matrix;
        // at H_d(B): im(i*) = ker(p*)
        node(d, "B", mi_d, mp_d, hb.at.at(d).dim);
        // at H_d(C): im(p*) = ker(delta), needs delta_d
        if (delta.count(d)) node(d, "C", mp_d, delta.at(d), hc.at.at(d).dim);
        // at H_d(A): im(delta_{d+1}) = ker(i*_d)
        if (delta.count(d + 1)) node(d, "A", delta.at(d + 1), mi_d, ha.at.at(d).dim);
    }
    return rep;
}

}  // namespace tate
