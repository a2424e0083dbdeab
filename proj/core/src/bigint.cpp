#include "wittlab/bigint.hpp"

#include "wittlab/error.hpp"

namespace wittlab {

const char* errc_name(errc c) {
    switch (c) {
        case errc::mixed_rings: return "MixedRings";
        case errc::level_mismatch: return "LevelMismatch";
        case errc::level_too_small: return "LevelTooSmall";
        case errc::not_a_unit: return "NotAUnit";
        case errc::not_divisible: return "NotDivisible";
        case errc::not_integer: return "NotInteger";
        case errc::not_composable: return "NotComposable";
        case errc::char_mismatch: return "CharMismatch";
        case errc::ring_too_large: return "RingTooLarge";
        case errc::not_p_nilpotent: return "NotPNilpotent";
        case errc::not_special_unit: return "NotSpecialUnit";
        case errc::not_in_kernel: return "NotInKernel";
        case errc::truncated: return "Truncated";
        case errc::no_solution: return "NoSolution";
        case errc::non_unique: return "NonUnique";
        case errc::not_eigenclass: return "NotEigenclass";
        case errc::config_invalid: return "ConfigInvalid";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::parse_error: return "ParseError";
        case errc::inconsistent: return "Inconsistent";
    }
    return "Error";
}

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int exact_div_p_power(const Int& n, const Int& p, unsigned k) {
    if (n == 0) return 0;
    Int d = pow_int(p, k);
    if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
        raise(errc::not_divisible, n.get_str() + " not divisible by " + p.get_str() + "^" + std::to_string(k));
    Int q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Int exact_div(const Int& n, const Int& d) {
    if (d == 0) raise(errc::not_divisible, "division by zero");
    if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
        raise(errc::not_divisible, n.get_str() + " not divisible by " + d.get_str());
    Int q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Int factorial_ratio(const std::vector<unsigned long>& num, const std::vector<unsigned long>& den) {
    Int n = 1, d = 1;
    for (auto a : num) n *= factorial(a);
    for (auto b : den) d *= factorial(b);
    if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
        raise(errc::not_integer, "factorial ratio is fractional");
    Int q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

unsigned p_adic_valuation(const Int& n, const Int& p) {
    if (n == 0) raise(errc::not_integer, "valuation of zero");
    Int m = n;
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

} // namespace wittlab
