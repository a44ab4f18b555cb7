#include "tate/bundles.hpp"

#include <sstream>

namespace tate {

namespace {

std::shared_ptr<const EquivariantComplex> freeze(EquivariantComplex c) {
    require_valid(c);
    return std::make_shared<const EquivariantComplex>(std::move(c));
}

std::string istr(int v) { return std::to_string(v); }

}  // namespace

ExampleBundle rabinowitz_c(bool equivariant) {
    ExampleBundle b;
    b.name = equivariant ? "rabinowitz-c-equivariant" : "rabinowitz-c";
    b.int_scope = b.rat_scope = true;
    b.default_horizon = 8;
    if (equivariant) {
        b.build = [](int) {
            EquivariantComplex c;
            c.generators.push_back({"w", 0, 0, Rat(0), "critical circle class"});
            return freeze(std::move(c));
        };
        b.expected.push_back({"window-homology", "Z per even degree in the window",
                              "equivariant circle complex"});
    } else {
        b.build = [](int) {
            EquivariantComplex c;
            c.generators.push_back({"w+", 1, 0, Rat(0), "max on the critical circle"});
            c.generators.push_back({"w-", 0, 0, Rat(0), "min on the critical circle"});
            c.boundary["w-"] = {{Int(1), -1, "w+"}};
            return freeze(std::move(c));
        };
        b.expected.push_back({"fh(m,n)", "Z at 2m and at 2n+1", "filtered homology windows"});
        b.expected.push_back({"fh-lim-b(m)", "Z at 2m", "direct limit of the upper cut"});
        b.expected.push_back({"fh-lim-a(n)", "Z at 2n+1", "inverse limit of the lower cut"});
    }
    return b;
}

ExampleBundle cn_complex(int n) {
    if (n < 1) throw TateError("BadParams", "cn_complex needs n >= 1");
    ExampleBundle b;
    b.name = "cn";
    b.params["n"] = istr(n);
    b.default_horizon = 6;
    b.weight_rule = n == 1 ? IntSequence::k_plus(0) : IntSequence::repeat_naturals(n);
    b.build = [n](int horizon) {
        if (horizon < 2) throw TateError("BadParams", "horizon must be at least 2");
        EquivariantComplex c;
        c.generators.push_back({"w0+", 0, 0, Rat(0), "minimum of the Hamiltonian"});
        IntSequence a = n == 1 ? IntSequence::k_plus(0) : IntSequence::repeat_naturals(n);
        for (int k = 1; k <= horizon; ++k) {
            c.generators.push_back({"w" + istr(k) + "+", 2 * k, 0, Rat(k), "orbit max"});
            c.generators.push_back({"w" + istr(k) + "-", 2 * k - 1, 0, Rat(k), "orbit min"});
        }
        for (int k = 0; k + 1 <= horizon; ++k) {
            // d w_{k+1}^- = w_k^+ + a_{k+1} u^{-1} w_{k+1}^+
            c.boundary["w" + istr(k + 1) + "-"] = {
                {Int(1), 0, "w" + istr(k) + "+"},
                {a.at(k + 1), -1, "w" + istr(k + 1) + "+"}};
        }
        return freeze(std::move(c));
    };
    b.expected.push_back({"diagram-int", "top row colim ~ Q tensor Laurent, bottom row 0",
                          "staircase over the integers"});
    b.expected.push_back({"diagram-rat", "Q in even degrees on top, 0 below, rho iso",
                          "staircase over the rationals"});
    return b;
}

ExampleBundle t_star_s2(const std::vector<Int>& c_seq) {
    ExampleBundle b;
    b.name = "t-star-s2";
    b.default_horizon = 6;
    b.int_scope = true;
    b.rat_scope = true;
    std::vector<Int> weights = c_seq;
    if (!weights.empty()) {
        if (weights[0] != 2)
            throw TateError("InvalidWeights", "the first weight is forced to be 2");
        for (auto& w : weights)
            if (w == 0 || w % 2 != 0)
                throw TateError("InvalidWeights", "weights must be even and nonzero");
    }
    // multiplicity weights k on the u-arrows, c_k on the long horizontal ones
    b.weight_rule = IntSequence::k_plus(0);
    {
        std::ostringstream os;
        if (weights.empty()) os << "2,2,2,...";
        else {
            for (size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
            os << ",2,...";
        }
        b.params["c"] = os.str();
    }
    b.build = [weights](int horizon) {
        if (horizon < 2) throw TateError("BadParams", "horizon must be at least 2");
        auto c_at = [&](int k) -> Int {
            if (k <= int(weights.size())) return weights[k - 1];
            return 2;
        };
        EquivariantComplex c;
        c.generators.push_back({"min", 0, 0, Rat(0), "minimum on the zero section"});
        c.generators.push_back({"max", 2, 0, Rat(0), "maximum on the zero section"});
        for (int k = 1; k <= horizon; ++k) {
            c.generators.push_back({"r" + istr(k) + "-", 2 * k - 1, 0, Rat(k), "retrograde min"});
            c.generators.push_back({"r" + istr(k) + "+", 2 * k, 0, Rat(k), "retrograde max"});
            c.generators.push_back(
                {"d" + istr(k) + "-", 2 * k + 1, 0, Rat(2 * k + 1, 2), "direct min"});
            c.generators.push_back(
                {"d" + istr(k) + "+", 2 * k + 2, 0, Rat(2 * k + 1, 2), "direct max"});
        }
        for (int k = 1; k <= horizon; ++k) {
            c.boundary["r" + istr(k) + "-"] = {{Int(k), -1, "r" + istr(k) + "+"}};
            std::string dkm = "d" + istr(k) + "-";
            std::string prev_plus = k == 1 ? std::string("max") : "d" + istr(k - 1) + "+";
            c.boundary[dkm] = {{Int(2), 0, "r" + istr(k) + "+"},
                               {c_at(k), 0, prev_plus},
                               {Int(k), -1, "d" + istr(k) + "+"}};
        }
        return freeze(std::move(c));
    };
    b.expected.push_back(
        {"loop-homology", "Z, Z odd, Z+Z/2 even>0", "level-zero homology of the loop space model"});
    b.expected.push_back({"diagram-rat", "Q^2 top, Q bottom per even degree",
                          "rational four-group diagram"});
    return b;
}

ExampleBundle local_orbit(int n, bool good, int shift) {
    if (n < 1) throw TateError("BadParams", "covering number must be >= 1");
    if (!good && n % 2 != 0) throw TateError("BadParity", "bad orbits have even covering number");
    ExampleBundle b;
    b.name = "local-orbit";
    b.params["n"] = istr(n);
    b.params["parity"] = good ? "good" : "bad";
    b.params["shift"] = istr(shift);
    b.default_horizon = 1;
    b.build = [n, good, shift](int) {
        EquivariantComplex c;
        c.generators.push_back({"w-", shift, 0, Rat(1), "orbit min"});
        c.generators.push_back({"w+", shift + 1, 0, Rat(1), "orbit max"});
        if (good) {
            // d w_-^l = n w_+^{l-1}, d w_+ = 0
            c.boundary["w-"] = {{Int(n), -1, "w+"}};
        } else {
            // d w_+^l = 2 w_-^l, d w_- = 0
            c.boundary["w+"] = {{Int(2), 0, "w-"}};
        }
        return freeze(std::move(c));
    };
    if (n == 1) b.expected.push_back({"homology", "0 in all degrees", "simple orbit"});
    else if (good)
        b.expected.push_back({"homology", "Z/" + istr(n) + " per degree = shift+1 mod 2",
                              "good multiple orbit"});
    else
        b.expected.push_back({"homology", "Z/2 per degree = shift mod 2", "bad multiple orbit"});
    return b;
}

ExampleBundle torus(int n, int class_bound) {
    if (n < 1) throw TateError("BadParams", "torus dimension must be >= 1");
    ExampleBundle b;
    b.name = "torus";
    b.params["n"] = istr(n);
    b.params["classBound"] = istr(class_bound);
    b.int_scope = false;  // the orbit model is only faithful over the rationals
    b.rat_scope = true;
    b.default_horizon = 1;
    b.build = [n, class_bound](int) {
        EquivariantComplex c;
        // fixed locus: one zero-differential generator per subset (torus homology)
        for (int mask = 0; mask < (1 << n); ++mask) {
            int deg = 0;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) ++deg;
            c.generators.push_back(
                {"t" + istr(mask), deg, 0, Rat(0), "fixed-locus class"});
        }
        // one good local orbit per nonzero class, with the gcd as covering
        std::vector<std::vector<int>> classes;
        std::vector<int> cur(n, -class_bound);
        for (;;) {
            bool zero = true;
            for (int x : cur)
                if (x != 0) zero = false;
            if (!zero) classes.push_back(cur);
            int i = 0;
            while (i < n && ++cur[i] > class_bound) cur[i++] = -class_bound;
            if (i == n) break;
        }
        int idx = 0;
        for (auto& v : classes) {
            Int g = 0;
            Rat norm = 0;
            for (int x : v) {
                g = gcd(g, Int(x));
                norm += Rat(x < 0 ? -x : x);
            }
            std::string base = "o" + istr(idx++);
            // keep the action ordering consistent with the class size
            Rat act = norm + 1;
            c.generators.push_back({base + "-", 0, 0, act, "orbit min"});
            c.generators.push_back({base + "+", 1, 0, act, "orbit max"});
            c.boundary[base + "-"] = {{g, -1, base + "+"}};
        }
        return freeze(std::move(c));
    };
    b.expected.push_back({"four-groups", "torus homology tensor Laurent, per degree",
                          "flat torus diagram"});
    return b;
}

std::map<int, FgAbGroup> circle_filtered_groups(bool equivariant, CircleFiltration mode,
                                                std::optional<int> m, std::optional<int> n,
                                                int d_low, int d_high, int tower_depth) {
    auto cx = rabinowitz_c(equivariant).build(0);
    auto window = [&](std::optional<int> lo, std::optional<int> hi) {
        TruncationSpec s;
        s.a_mu_level = lo;
        s.b_mu_level = hi;
        s.d_low = d_low;
        s.d_high = d_high;
        return instantiate_window(cx, s);
    };

    std::map<int, FgAbGroup> out;
    if (mode == CircleFiltration::Window) {
        GradedHomologyZ h = homology_z(window(m, n));
        for (int d = d_low; d <= d_high; ++d) out[d] = h.group(d);
        return out;
    }

    std::vector<WindowComplex> cells;
    std::vector<GradedHomologyZ> hs;
    if (mode == CircleFiltration::LimitLower) {
        // deepen the lower cut at fixed n; tower entries shallow -> deep
        for (int i = 0; i <= tower_depth; ++i) cells.push_back(window(*n - i, n));
        for (auto& w : cells) hs.push_back(homology_z(w));
        for (int d = d_low; d <= d_high; ++d) {
            TowerZ t;
            t.dir = TowerDirection::ToInverse;
            for (size_t i = 0; i < cells.size(); ++i) {
                t.groups.push_back(hs[i].group(d));
                if (i + 1 < cells.size())
                    t.maps.push_back(induced_map_z(hs[i + 1].at.at(d), hs[i].at.at(d),
                                                   chain_projection(cells[i + 1], cells[i]).at(d)));
            }
            LimitResultZ r = inverse_limit(t);
            if (!r.stable()) throw TateError("GridTooSmall", "lower-cut tower undecided");
            out[d] = r.group;
        }
    } else {
        // raise the upper cut at fixed m; tower entries follow the inclusions
        for (int i = 0; i <= tower_depth; ++i) cells.push_back(window(m, *m + i));
        for (auto& w : cells) hs.push_back(homology_z(w));
        for (int d = d_low; d <= d_high; ++d) {
            TowerZ t;
            t.dir = TowerDirection::ToDirect;
            for (size_t i = 0; i < cells.size(); ++i) {
                t.groups.push_back(hs[i].group(d));
                if (i + 1 < cells.size())
                    t.maps.push_back(induced_map_z(hs[i].at.at(d), hs[i + 1].at.at(d),
                                                   chain_embedding(cells[i], cells[i + 1]).at(d)));
            }
            LimitResultZ r = direct_limit(t);
            if (!r.stable()) throw TateError("GridTooSmall", "upper-cut tower undecided");
            out[d] = r.group;
        }
    }
    return out;
}

XnReport xn_rank_report(int n) {
    if (n < 1) throw TateError("BadParams", "n must be >= 1");
    XnReport r;
    r.n = n;
    r.d_n = Int(n) * n + n + 2;
    r.two_n = Int(1) << n;
    // rank over a PID is additive: rank ker kappa >= d_n - 2^n, and
    // rank im kappa <= d_n, so:
    r.kappa_injective_possible = !(r.d_n > r.two_n);
    r.kappa_surjective_possible = !(r.d_n < r.two_n);
    if (!r.kappa_injective_possible) r.verdict = "kappa not injective";
    else if (!r.kappa_surjective_possible) r.verdict = "kappa not surjective";
    else r.verdict = "no verdict from ranks";
    return r;
}

const std::vector<std::string>& bundle_names() {
    static const std::vector<std::string> names = {
        "rabinowitz-c", "rabinowitz-c-equivariant", "cn", "t-star-s2", "local-orbit", "torus"};
    return names;
}

ExampleBundle bundle_by_name(const std::string& name,
                             const std::map<std::string, std::string>& opts) {
    auto get_int = [&](const std::string& key, int dflt) {
        auto it = opts.find(key);
        return it == opts.end() ? dflt : std::stoi(it->second);
    };
    if (name == "rabinowitz-c") return rabinowitz_c(false);
    if (name == "rabinowitz-c-equivariant") return rabinowitz_c(true);
    if (name == "cn") return cn_complex(get_int("n", 1));
    if (name == "t-star-s2") {
        std::vector<Int> weights;
        auto it = opts.find("c");
        if (it != opts.end()) {
            std::stringstream ss(it->second);
            std::string tok;
            while (std::getline(ss, tok, ',')) weights.push_back(Int(tok));
        }
        return t_star_s2(weights);
    }
    if (name == "local-orbit")
        return local_orbit(get_int("n", 2), opts.count("parity") ? opts.at("parity") == "good" : true,
                           get_int("shift", 0));
    if (name == "torus") return torus(get_int("n", 1), get_int("classBound", 1));
    throw TateError("BadParams", "unknown example: " + name);
}

}  // namespace tate
