#pragma once

#include "tate/homology.hpp"
#include "tate/tower.hpp"

#include <functional>

namespace tate {

using ComplexBuilder = std::function<std::shared_ptr<const EquivariantComplex>(int)>;

struct GridSpec {
    std::vector<int> a_levels;  // descending from the reference level 0
    std::vector<Rat> b_values;  // ascending
};

struct DiagramConfig {
    Ring ring = Ring::Int;
    int d_low = -2;
    int d_high = 8;
    int horizon = 6;
    int horizon_probe = 0;  // 0: skip the probe; else K' > horizon
    std::optional<GridSpec> grid;
    std::optional<IntSequence> weight_rule;  // continuation of JP-tower multipliers
    int eventual_image_margin = 4;           // probe depth for degree -2 endomorphisms
    bool check_grid_commutation = true;
};

struct GroupValue {
    enum class Kind { Group, Colimit, Dim, Undecided } kind = Kind::Undecided;
    FgAbGroup group;
    TowerColimitZ colimit;
    long dim = 0;
    std::string note;

    bool is_zero() const {
        return (kind == Kind::Group && group.is_zero()) || (kind == Kind::Dim && dim == 0);
    }
    std::string str() const;
};

struct MapVerdict {
    bool defined = false;
    bool injective = false;
    bool surjective = false;
    std::string note;

    bool iso() const { return defined && injective && surjective; }
    std::string str() const;
};

struct DegreeDiagram {
    int degree = 0;
    // chain-first groups on the left, limit-first on the right;
    // top row: direct-of-inverse, bottom row: inverse-of-direct.
    GroupValue tl, tr, bl, br;
    MapVerdict rho, kappa, sigma, hk;
    bool square_commutes = false;
    bool square_checked = false;
    bool top_horizon_stable = false;
    bool bottom_horizon_stable = false;
    std::string horizon_note;
};

struct TateDiagram {
    DiagramConfig config;
    std::vector<DegreeDiagram> degrees;
    bool grid_commutes = true;      // homology-level square commutation on the grid
    bool chain_grid_commutes = true;
    bool u_periodicity_ok = true;   // diagram at d matches diagram at d+2
    std::string text_table() const;

    const DegreeDiagram& at(int d) const;
};

TateDiagram four_tate_groups(const ComplexBuilder& build, const DiagramConfig& config);
TateDiagram four_tate_groups(const std::shared_ptr<const EquivariantComplex>& c,
                             const DiagramConfig& config);

// Per-degree sigma surjectivity read off a computed diagram.
bool sigma_surjective_everywhere(const TateDiagram& d);

// Localization of a graded module over a field along a degree -2 endomorphism:
// per degree the eventual image with its induced bijection, or Undecided if
// the images did not stabilize within the probe depth.
struct LocalizedModule {
    std::map<int, long> dims;           // eventual image dimension per degree
    std::map<int, bool> decided;
    std::map<int, RatMat> induced;      // bijective action where decided
};

LocalizedModule localize_module(const std::map<int, long>& dims,
                                const std::map<int, RatMat>& t_maps, int d_low, int d_high,
                                int probe_depth);

// --- Backwards splitting -----------------------------------------------------

struct BackwardsReport {
    bool chain_exact = true;          // 0 -> CB -> CT -> Q -> 0 degreewise, per grid cell
    bool les_exact = true;            // long exact sequences over Q
    bool rho_isos = true;             // chain-first vs limit-first per column
    std::map<int, long> hb_dims;      // backwards homology per degree (JP order)
    std::map<int, long> ht_dims;      // full Tate groups per degree
    std::map<int, long> h0_dims;      // quotient column per degree
    std::string note;
};

BackwardsReport backwards_split(const std::shared_ptr<const EquivariantComplex>& c,
                                const DiagramConfig& config);

}  // namespace tate
