#pragma once

#include "tate/chain.hpp"

#include <map>
#include <string>
#include <vector>

namespace tate {

// One generator of the complex modulo the u-action. The full generator set is
// { u^k g : k in Z } with |u| = 2; u^k g sits at A^mu = pi*(mu_level + k) and
// keeps h_action.
struct BaseGenerator {
    std::string id;
    int degree = 0;
    int mu_level = 0;
    Rat h_action = 0;
    std::string label;
};

struct BoundaryTerm {
    Int coeff;
    int u_shift = 0;
    std::string target;
};

struct EquivariantComplex {
    std::vector<BaseGenerator> generators;
    std::map<std::string, std::vector<BoundaryTerm>> boundary;

    int index_of(const std::string& id) const;  // -1 if absent
    const BaseGenerator& gen(const std::string& id) const;
    const std::vector<BoundaryTerm>& terms(const std::string& id) const;
};

struct Violation {
    std::string kind;     // "duplicate-id", "missing-target", "zero-coeff",
                          // "degree", "mu-monotone", "h-monotone", "d-squared",
                          // "single-level-shift"
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

ValidationReport validate(const EquivariantComplex& c);

// Throws InvalidComplex if validation fails.
void require_valid(const EquivariantComplex& c);

}  // namespace tate
