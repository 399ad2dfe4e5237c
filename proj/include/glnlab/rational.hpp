#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace glnlab {

// Arbitrary-precision rational; every "exact" quantity in the library uses it.
using ExactProb = mpq_class;
using BigInt = mpz_class;

// GMP requires canonical operands, so every two-part construction goes through here.
inline ExactProb fraction(const BigInt& num, const BigInt& den) {
    ExactProb q(num, den);
    q.canonicalize();
    return q;
}

inline ExactProb make_rational(long num, unsigned long den) {
    ExactProb q(num, den);
    q.canonicalize();
    return q;
}

// 1 / base^exp as an exact rational.
inline ExactProb inverse_power(unsigned long base, unsigned long exp) {
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), base, exp);
    return ExactProb(BigInt(1), den);
}

inline BigInt big_pow(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Always "num/den", also for integers, so reports parse uniformly.
inline std::string rational_string(const ExactProb& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline ExactProb abs_value(const ExactProb& q) { return q < 0 ? ExactProb(-q) : q; }

inline double to_double(const ExactProb& q) { return q.get_d(); }

}  // namespace glnlab
