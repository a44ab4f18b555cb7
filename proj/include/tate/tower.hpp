#pragma once

#include "tate/chain.hpp"
#include "tate/group_q.hpp"

namespace tate {

// Presentation of the subgroup of Z^s/relations generated by given columns,
// in invariant-factor normal form with generator representatives.
struct SubquotientPresentation {
    FgAbGroup group;
    IntMat gen_reps;          // ambient coords, one column per summand
    std::vector<Int> orders;  // per summand (0 = Z)

    // Class coordinates of an ambient vector lying in the subgroup; nullopt if
    // the class is not in the subgroup.
    std::optional<std::vector<Int>> coords(const std::vector<Int>& x) const;

    IntMat lattice_;  // basis of the lattice <gens, relations>
    IntMat ux_;
    std::vector<Int> all_orders_;
    std::vector<int> live_;
};

SubquotientPresentation present_subgroup(const IntMat& gens, const std::vector<Int>& ambient_orders);

// Does x's class lie in the subgroup generated by B (mod diagonal relations)?
bool in_subgroup(const IntMat& b, const std::vector<Int>& ambient_orders, const std::vector<Int>& x);
bool same_subgroup(const IntMat& b1, const IntMat& b2, const std::vector<Int>& ambient_orders);

// Kernel of a normal-form group map, as subgroup generators in source coords.
IntMat kernel_subgroup(const AbGroupMap& m);

enum class TowerDirection { ToDirect, ToInverse };

// A sequence of f.g. abelian groups with transition maps. Entries are ordered
// with index increasing away from the limit for ToInverse (index 0 shallow)
// and toward the limit for ToDirect:
//   ToDirect : maps[i] : groups[i]   -> groups[i+1]
//   ToInverse: maps[i] : groups[i+1] -> groups[i]
struct TowerZ {
    TowerDirection dir = TowerDirection::ToDirect;
    std::vector<FgAbGroup> groups;
    std::vector<AbGroupMap> maps;

    size_t size() const { return groups.size(); }
};

struct TowerQ {
    TowerDirection dir = TowerDirection::ToDirect;
    std::vector<long> dims;
    std::vector<RatMat> maps;  // same orientation convention
};

// Rank-one free tower with injective multiplier transitions; its colimit is
// the group G_a of the multiplier sequence.
struct TowerColimitZ {
    std::vector<Int> multipliers;
    std::optional<IntSequence> extension;  // closed-form continuation if known

    IntSequence sequence() const;  // prefix = multipliers, tail = extension
    bool has_extension() const { return extension.has_value(); }
    QCriterionReport q_criterion(long prime_bound, long probe_depth) const;
};

struct LimitResultZ {
    enum class Kind { Stable, Colimit, Undecided } kind = Kind::Undecided;
    // Stable: the limit group, presented inside the tower entry `presented_at`
    // (the deep end for ToDirect; for ToInverse the shallowest entry from
    // which the stabilized images map isomorphically all the way down).
    FgAbGroup group;
    SubquotientPresentation presentation;
    long presented_at = 0;
    long settled_from = -1;
    // Colimit:
    TowerColimitZ colimit;
    std::string diagnostics;

    bool stable() const { return kind == Kind::Stable; }
    std::string value_str() const;
};

struct LimitResultQ {
    enum class Kind { Stable, Undecided } kind = Kind::Undecided;
    long dim = 0;
    RatMat basis;  // inside the tower entry `presented_at`
    long presented_at = 0;
    long settled_from = -1;
    std::string diagnostics;

    bool stable() const { return kind == Kind::Stable; }
};

// rule_hint: closed-form continuation of the multiplier sequence, aligned so
// that hint.at(i+1) is the multiplier of maps[start + i].
LimitResultZ direct_limit(const TowerZ& t, std::optional<IntSequence> rule_hint = std::nullopt);
LimitResultZ inverse_limit(const TowerZ& t);

LimitResultQ direct_limit(const TowerQ& t);
LimitResultQ inverse_limit(const TowerQ& t);

}  // namespace tate
