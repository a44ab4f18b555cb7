#pragma once

#include "tate/arith.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tate {

// Sequence of positive integers a_1, a_2, ... given by a finite prefix plus a
// closed-form tail rule; evaluable at any index.
class IntSequence {
  public:
    enum class Rule { Constant, ArithmeticK, RepeatNaturals, PeriodicList };

    // tail after the prefix: Constant c; ArithmeticK: k |-> k + c (absolute
    // index); RepeatNaturals n: 1,1,..,2,2,.. each n times (absolute index);
    // PeriodicList: cycle through data.
    static IntSequence constant(const Int& c, std::vector<Int> prefix = {});
    static IntSequence k_plus(long c, std::vector<Int> prefix = {});
    static IntSequence repeat_naturals(long n, std::vector<Int> prefix = {});
    static IntSequence periodic(std::vector<Int> cycle, std::vector<Int> prefix = {});
    static IntSequence parse(const std::string& text);  // "k+1", "const:2", "2,3,2,3", "repeat:2"

    Int at(long k) const;  // 1-based
    std::vector<Int> first(long n) const;
    std::string str() const;

    bool all_positive_prefix(long upto) const;

  private:
    std::vector<Int> prefix_;
    Rule rule_ = Rule::Constant;
    Int c_ = 1;
    long n_ = 1;
    std::vector<Int> cycle_;
};

// Element d * x_k of G_a = < x_k | x_k - a_k x_{k+1} >; canonical form pulls
// the level down as far as the relations allow.
struct GaElement {
    Int d;
    long level = 1;

    bool is_zero() const { return d == 0; }
    std::string str() const;
};

GaElement ga_make(const Int& d, long level, const IntSequence& a);
bool ga_equal(const GaElement& u, const GaElement& v, const IntSequence& a);
GaElement ga_add(const GaElement& u, const GaElement& v, const IntSequence& a);
GaElement ga_neg(const GaElement& u);

// The associated prime sequence: drop 1s, expand a_k > 1 into its prime
// factors in nondecreasing order. Returns the first `upto` terms and a
// relabeling witness verifying G_a = G_{a'} on the computed range.
struct PrimeExpansion {
    std::vector<Int> primes;
    // x_k of G_a corresponds to x_{pos[k-1]} of G_{a'} (1-based positions):
    // the relation x_k = a_k x_{k+1} factors into the prime-step relations.
    std::vector<long> pos;
    bool verified = false;
};
PrimeExpansion prime_expand(const IntSequence& a, long upto);

enum class Verdict { True, False, Inconclusive };

// Is u divisible by n in G_a?  True iff n | d * a_k * ... * a_{l-1} for some
// l <= probe_depth (bounded probe).
Verdict divisible(const GaElement& u, const Int& n, const IntSequence& a, long probe_depth);

// The three-part Q-criterion at bounded probe depth: torsion-free, rank one,
// and every nonzero element divisible by every prime <= prime_bound.
struct QCriterionReport {
    bool torsion_free = false;
    bool rank_one = false;
    std::vector<long> divisible_primes;
    std::vector<long> failed_primes;
    bool holds() const { return torsion_free && rank_one && failed_primes.empty(); }
};
QCriterionReport q_criterion(const IntSequence& a, long prime_bound, long probe_depth);

// Explicit isomorphism h : G_a -> G_b between prime sequences, h(x_k) = c_k y_{m(k)}.
struct IsoHReport {
    bool ok = false;
    std::string failure;
    std::vector<long> m;       // m(1..K)
    std::vector<Int> c;        // c_1..c_K
    bool relations_ok = false;
    bool injective_sample_ok = false;
    bool surjective_sample_ok = false;
};
IsoHReport iso_h(const IntSequence& a, const IntSequence& b, long K, long search_bound = 4096);

// phi : Q -> G_{(k+1)}, p/q |-> p (q-1)! x_q.
GaElement phi_q(const Int& p, const Int& q);

// Verification grid for phi: well-defined, additive, injective on
// {p/q : |p| <= pmax, 1 <= q <= qmax}, and phi(1/q!) = x_q for q <= qsurj.
struct PhiReport {
    bool well_defined = true;
    bool additive = true;
    bool injective = true;
    bool surjective_on_generators = true;
    std::string failure;
};
PhiReport phi_q_check(long pmax, long qmax, long qsurj);

std::vector<Int> prime_factors(Int n);  // nondecreasing, with repetitions

}  // namespace tate
