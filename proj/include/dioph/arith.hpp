#pragma once

// Integer and rational helpers shared by every module.

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace dioph {

using Factorization = std::vector<std::pair<mpz_class, int>>;

/// p-adic valuation of a nonzero integer.
int valuation_p(const mpz_class& n, const mpz_class& p);

/// Prime factorization of |n| (n != 0), primes ascending.
Factorization factor(const mpz_class& n);

bool is_probable_prime(const mpz_class& n);

/// Kronecker symbol (d / n).
int kronecker(const mpz_class& d, const mpz_class& n);

/// Square root of a modulo an odd prime p; a must be a quadratic residue.
mpz_class sqrt_mod_prime(const mpz_class& a, const mpz_class& p);

bool is_square(const mpz_class& n, mpz_class* root = nullptr);

/// Natural log of |n| for n != 0, accurate for arbitrarily large n.
long double log_abs(const mpz_class& n);
long double log_abs(const mpq_class& q);

/// Parses "p", "p/q" or a finite decimal such as "-0.25" into a canonical rational.
mpq_class parse_rational(const std::string& text);
std::string to_string(const mpq_class& q);

mpz_class binomial(long n, long k);
mpz_class factorial(long n);

/// Shortest round-trip representation, used by every text emitter.
std::string format_double(double v);

}  // namespace dioph
