#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codes.hpp"

namespace divis {

// Base numbers s_q(r,i) = q^i * [r-i+1]_q of the S_q(r)-adic positional
// system.
struct BaseSequence {
    unsigned q = 2, r = 0;
    std::vector<long long> s;  // s[0..r]
    static BaseSequence make(unsigned q, unsigned r);
};

// n = sum digits[i]*s_q(r,i) + leading*s_q(r,r) with digits in {0,...,q-1}.
struct Expansion {
    long long n = 0;
    unsigned q = 2, r = 0;
    std::vector<int> digits;  // e_0..e_{r-1}
    long long leading = 0;    // e_r
    bool feasible() const { return leading >= 0; }
};

uint64_t gauss(unsigned k, unsigned q);  // [k]_q

Expansion sqr_adic_expansion(long long n, unsigned q, unsigned r);
bool is_length_feasible(long long n, unsigned q, unsigned r);

// delta = p_power * d with p = char(F_q), gcd(p, d) = 1.
std::pair<uint64_t, uint64_t> ward_reduce(unsigned q, uint64_t delta);

// Largest r with q^r dividing p_power, and whether q^r == p_power exactly.
// The length theorem speaks about q^r-divisibility; for p-powers that are
// not q-powers the floor still gives a sound necessary condition.
std::pair<unsigned, bool> q_power_exponent(unsigned q, uint64_t p_power);

std::string expansion_json(const Expansion& e);

struct GammaResult {
    bool infinite = false;
    uint64_t value = 0;  // valid when !infinite
    std::optional<GeneratorMatrix> witness;
    std::optional<Expansion> certificate;  // infeasibility certificate
    bool partial = false;                  // search stopped by budget
    std::string note;
};

struct RequiresCensus : std::runtime_error {
    RequiresCensus(const std::string& what) : std::runtime_error(what) {}
};

// Minimum possible column multiplicity of Delta-divisible codes of length n
// over F_2, by table; covers Delta with 2-power part in {1,2,4,8} via the
// repetition reduction.  Other parameters throw RequiresCensus.
GammaResult gamma_lookup(unsigned q, uint64_t delta, long long n);

// Table value only (no witness construction); same domain as gamma_lookup.
std::optional<uint64_t> gamma_lookup_value(unsigned q, uint64_t delta, long long n);  // nullopt = infinite

}  // namespace divis
