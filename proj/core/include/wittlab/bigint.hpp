#ifndef WITTLAB_BIGINT_HPP
#define WITTLAB_BIGINT_HPP

/// Exact integer helpers on top of gmpxx: factorials, certified exact
/// division by prime powers, and integer-valued factorial ratios.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace wittlab {

using Int = mpz_class;

Int factorial(unsigned long n);

/// n / p^k, requiring exact divisibility. Throws errc::not_divisible otherwise;
/// a failure here signals a bug in a structural-polynomial derivation.
Int exact_div_p_power(const Int& n, const Int& p, unsigned k);

/// Quotient and divisibility check in one step. Throws errc::not_divisible.
Int exact_div(const Int& n, const Int& d);

/// prod(a! for a in num) / prod(b! for b in den), which must be an integer.
/// Throws errc::not_integer when the ratio is fractional.
Int factorial_ratio(const std::vector<unsigned long>& num, const std::vector<unsigned long>& den);

/// Largest k with p^k | n (n != 0).
unsigned p_adic_valuation(const Int& n, const Int& p);

Int binomial(unsigned long n, unsigned long k);

bool is_prime(const Int& n);

Int pow_int(const Int& base, unsigned long e);

} // namespace wittlab

#endif
