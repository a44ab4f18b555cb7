#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tate {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Ring { Int, Rat };

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

// Euclidean remainder in [0, |m|).
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

// Quotient minimizing the remainder, |a - q*b| <= |b|/2.
inline Int div_nearest(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r == 0) return q;
    Int two_r = 2 * abs(r);
    if (two_r > abs(b)) q += ((a < 0) == (b < 0)) ? 1 : -1;
    return q;
}

inline Rat make_rat(const Int& p, const Int& q) {
    if (q == 0) throw std::invalid_argument("make_rat: zero denominator");
    return Rat(p, q);
}

// Parses "p", "p/q" or a plain decimal-free integer string.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    return make_rat(p, q);
}

inline std::string rat_str(const Rat& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace tate
