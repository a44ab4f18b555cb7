#pragma once

#include "tate/arith.hpp"

#include <sstream>
#include <vector>

namespace tate {

// Finitely generated abelian group in invariant-factor normal form.
// torsion entries are > 1 and form a divisibility chain d1 | d2 | ...
// Equality of groups is equality of fields.
struct FgAbGroup {
    long free_rank = 0;
    std::vector<Int> torsion;

    FgAbGroup() = default;
    FgAbGroup(long rank, std::vector<Int> tors) : free_rank(rank), torsion(std::move(tors)) {
        normalize();
    }
    static FgAbGroup free(long rank) { return FgAbGroup(rank, {}); }
    static FgAbGroup cyclic(const Int& n) {
        return n == 0 ? free(1) : FgAbGroup(0, {n});
    }
    static FgAbGroup zero() { return FgAbGroup(); }

    void normalize() {
        std::vector<Int> t;
        for (auto& d : torsion) {
            Int a = abs(d);
            if (a > 1) t.push_back(a);
        }
        std::sort(t.begin(), t.end());
        torsion = std::move(t);
#ifndef NDEBUG
        for (size_t i = 0; i + 1 < torsion.size(); ++i)
            assert(torsion[i + 1] % torsion[i] == 0);
#endif
    }

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_free() const { return torsion.empty(); }
    long num_summands() const { return free_rank + long(torsion.size()); }

    bool operator==(const FgAbGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const FgAbGroup& o) const { return !(*this == o); }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& d : torsion) {
            os << (first ? "" : " + ") << "Z/" << d;
            first = false;
        }
        if (free_rank == 1) os << (first ? "" : " + ") << "Z";
        else if (free_rank > 1) os << (first ? "" : " + ") << "Z^" << free_rank;
        return os.str();
    }
};

}  // namespace tate
