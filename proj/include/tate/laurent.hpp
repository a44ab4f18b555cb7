#pragma once

#include "tate/arith.hpp"

#include <map>
#include <sstream>

namespace tate {

// Integer Laurent polynomial in a degree-2 variable u; no zero coefficients stored.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Int& c) {
        if (c != 0) c_[0] = c;
    }
    static LaurentPoly monomial(const Int& c, int exp) {
        LaurentPoly p;
        if (c != 0) p.c_[exp] = c;
        return p;
    }
    static LaurentPoly u(int exp = 1) { return monomial(1, exp); }

    const std::map<int, Int>& coeffs() const { return c_; }
    Int coeff(int exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Int(0) : it->second;
    }
    bool is_zero() const { return c_.empty(); }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : o.c_) r.add_term(c, e);
        return r;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : o.c_) r.add_term(-c, e);
        return r;
    }
    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (auto& [e1, c1] : c_)
            for (auto& [e2, c2] : o.c_) r.add_term(c1 * c2, e1 + e2);
        return r;
    }

    // Multiplication by u^k.
    LaurentPoly shift(int k) const {
        LaurentPoly r;
        for (auto& [e, c] : c_) r.c_[e + k] = c;
        return r;
    }

    void add_term(const Int& c, int exp) {
        if (c == 0) return;
        auto it = c_.find(exp);
        if (it == c_.end()) {
            c_[exp] = c;
        } else {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : c_) {
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            Int a = abs(c);
            if (a != 1 || e == 0) os << a;
            if (e != 0) {
                if (a != 1) os << "*";
                os << "u";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

  private:
    std::map<int, Int> c_;
};

}  // namespace tate
