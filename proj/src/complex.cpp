#include "tate/complex.hpp"

#include <set>
#include <sstream>

namespace tate {

int EquivariantComplex::index_of(const std::string& id) const {
    for (int i = 0; i < int(generators.size()); ++i)
        if (generators[i].id == id) return i;
    return -1;
}

const BaseGenerator& EquivariantComplex::gen(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw TateError("UnknownGenerator", id);
    return generators[i];
}

const std::vector<BoundaryTerm>& EquivariantComplex::terms(const std::string& id) const {
    static const std::vector<BoundaryTerm> empty;
    auto it = boundary.find(id);
    return it == boundary.end() ? empty : it->second;
}

std::string ValidationReport::str() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (auto& v : violations) os << "[" << v.kind << "] " << v.detail << "\n";
    return os.str();
}

ValidationReport validate(const EquivariantComplex& c) {
    ValidationReport r;
    auto add = [&](const std::string& kind, const std::string& detail) {
        r.violations.push_back({kind, detail});
    };

    std::set<std::string> ids;
    for (auto& g : c.generators) {
        if (!ids.insert(g.id).second) add("duplicate-id", g.id);
    }
    bool structure_ok = true;
    for (auto& [src, terms] : c.boundary) {
        if (!ids.count(src)) {
            add("missing-target", "boundary source " + src + " is not a generator");
            structure_ok = false;
            continue;
        }
        const BaseGenerator& s = c.gen(src);
        for (auto& t : terms) {
            if (t.coeff == 0) add("zero-coeff", src + " -> " + t.target);
            if (!ids.count(t.target)) {
                add("missing-target", src + " -> " + t.target);
                structure_ok = false;
                continue;
            }
            const BaseGenerator& g = c.gen(t.target);
            if (g.degree + 2 * t.u_shift != s.degree - 1) {
                std::ostringstream os;
                os << src << " -> u^" << t.u_shift << " " << t.target << ": deg "
                   << g.degree + 2 * t.u_shift << " != " << s.degree - 1;
                add("degree", os.str());
            }
            if (g.mu_level + t.u_shift > s.mu_level) {
                std::ostringstream os;
                os << src << " -> u^" << t.u_shift << " " << t.target << ": mu "
                   << g.mu_level + t.u_shift << " > " << s.mu_level;
                add("mu-monotone", os.str());
            }
            if (g.h_action > s.h_action) {
                add("h-monotone",
                    src + " -> " + t.target + ": " + rat_str(g.h_action) + " > " + rat_str(s.h_action));
            }
        }
    }
    if (!structure_ok) return r;

    // d(d(g)) must cancel as a Lambda-linear combination of u^k targets.
    for (auto& g : c.generators) {
        std::map<std::pair<std::string, int>, Int> acc;
        for (auto& t1 : c.terms(g.id))
            for (auto& t2 : c.terms(t1.target)) {
                auto key = std::make_pair(t2.target, t1.u_shift + t2.u_shift);
                acc[key] += t1.coeff * t2.coeff;
            }
        for (auto& [key, v] : acc)
            if (v != 0) {
                std::ostringstream os;
                os << "d^2(" << g.id << ") has coefficient " << v << " on u^" << key.second
                   << " " << key.first;
                add("d-squared", os.str());
            }
    }

    // When all generators share one mu level, shifts must be <= 0.
    bool single_level = true;
    for (auto& g : c.generators)
        if (g.mu_level != c.generators.front().mu_level) single_level = false;
    if (single_level && !c.generators.empty()) {
        for (auto& [src, terms] : c.boundary)
            for (auto& t : terms)
                if (t.u_shift > 0) {
                    std::ostringstream os;
                    os << src << " -> u^" << t.u_shift << " " << t.target;
                    add("single-level-shift", os.str());
                }
    }
    return r;
}

void require_valid(const EquivariantComplex& c) {
    ValidationReport r = validate(c);
    if (!r.ok()) throw TateError("InvalidComplex", r.str());
}

}  // namespace tate
