#pragma once

#include "tate/tate_diagram.hpp"

namespace tate {

// A worked example: a horizon-parameterized complex builder together with the
// expected results it must reproduce, as machine-checkable records.
struct ExpectedEntry {
    std::string check;   // machine key understood by the bundle evaluator
    std::string value;   // canonical expected value
    std::string source;  // short provenance label for reports
};

struct ExampleBundle {
    std::string name;
    int default_horizon = 6;
    bool int_scope = true;
    bool rat_scope = true;
    ComplexBuilder build;
    std::optional<IntSequence> weight_rule;  // staircase multipliers, when present
    std::map<std::string, std::string> params;
    std::vector<ExpectedEntry> expected;
};

// The circle complex with one pair of generators per critical level; the
// upper filtration is the mu-filtration itself. equivariant = true keeps one
// generator per level with zero boundary.
ExampleBundle rabinowitz_c(bool equivariant = false);

// The staircase complex of complex n-space at horizon K (weights 1,2,3,... for
// n = 1; each natural number repeated n times for higher n).
ExampleBundle cn_complex(int n);

// Unit disk cotangent bundle of the 2-sphere; weights c_k must be even and
// nonzero with c_1 = 2.
ExampleBundle t_star_s2(const std::vector<Int>& c_seq = {});

// Local model of an n-fold covered critical circle.
ExampleBundle local_orbit(int n, bool good, int shift);

// Flat torus model: the fixed-locus homology plus one good local orbit per
// nonzero class of max-norm <= class_bound (rational coefficients only).
ExampleBundle torus(int n, int class_bound);

// Filtered homology of the circle complex: both cuts live on the mu-axis.
// Window: m <= level <= n. LimitLower: inverse limit of the lower cut at
// fixed n. LimitUpper: direct limit of the upper cut at fixed m. Returns the
// per-degree groups detected by the tower machinery.
enum class CircleFiltration { Window, LimitLower, LimitUpper };
std::map<int, FgAbGroup> circle_filtered_groups(bool equivariant, CircleFiltration mode,
                                                std::optional<int> m, std::optional<int> n,
                                                int d_low, int d_high, int tower_depth = 6);

// Rank arithmetic for the surgered 4-manifold family: d_n = n^2 + n + 2
// compared against 2^n, with the PID rank-formula verdicts on kappa.
struct XnReport {
    int n;
    Int d_n;
    Int two_n;
    bool kappa_injective_possible;   // false when d_n > 2^n
    bool kappa_surjective_possible;  // false when d_n < 2^n
    std::string verdict;
};
XnReport xn_rank_report(int n);

const std::vector<std::string>& bundle_names();
ExampleBundle bundle_by_name(const std::string& name, const std::map<std::string, std::string>& opts = {});

}  // namespace tate
