#include "wittlab/ring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace wittlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Elem basics

bool Elem::operator==(const Elem& other) const {
    if (!owner_ || !other.owner_) return !owner_ && !other.owner_;
    if (!owner_->same_ring(*other.owner_)) return false;
    return z == other.z && poly == other.poly && terms == other.terms;
}

void Ring::check_owner(const Elem& a) const {
    if (!a.owner() || !a.owner()->same_ring(*this))
        raise(errc::mixed_rings, "element does not belong to this ring");
}

Elem Ring::pow(const Elem& a, unsigned long e) const {
    Elem result = one();
    Elem base = a;
    while (e > 0) {
        if (e & 1UL) result = mul(result, base);
        base = mul(base, base);
        e >>= 1UL;
    }
    return result;
}

Elem Ring::invert(const Elem& a) const {
    auto inv = try_invert(a);
    if (!inv) raise(errc::not_a_unit, "element has no inverse: " + to_string(a));
    return *inv;
}

bool Ring::equal(const Elem& a, const Elem& b) const {
    check_owner(a);
    check_owner(b);
    return a == b;
}

bool Ring::p_nilpotent(const Int& p) const {
    Int c = characteristic();
    if (c == 0) return false;
    while (c != 1) {
        if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) return false;
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    }
    return true;
}

std::optional<Int> Ring::additive_order_of_one(unsigned long cap) const {
    Elem acc = one();
    for (unsigned long k = 1; k <= cap; ++k) {
        if (is_zero(acc)) return Int(static_cast<long>(k - 1)) + 1;
        acc = add(acc, one());
    }
    return std::nullopt;
}

Elem Ring::element_at(const Int&) const {
    raise(errc::ring_too_large, "ring does not support enumeration");
}

Elem Ring::frobenius_root(const Elem&) const {
    raise(errc::char_mismatch, "p-th roots unavailable in this ring");
}

Elem Ring::var_elem(const std::string& name) const {
    raise(errc::parse_error, "unknown variable '" + name + "'");
}

Elem Ring::embed_scalar(const Elem& base_elem) const {
    if (base_elem.owner() && base_elem.owner()->same_ring(*this)) return base_elem;
    raise(errc::mixed_rings, "element does not embed into this ring");
}

Elem Ring::var_pow(const std::string& name, std::int64_t, std::int64_t) const {
    raise(errc::parse_error, "variable '" + name + "' does not admit exponents here");
}

Elem operator+(const Elem& a, const Elem& b) { return a.owner()->add(a, b); }
Elem operator-(const Elem& a, const Elem& b) { return a.owner()->sub(a, b); }
Elem operator*(const Elem& a, const Elem& b) { return a.owner()->mul(a, b); }
Elem operator-(const Elem& a) { return a.owner()->neg(a); }

// ---------------------------------------------------------------------------
// Z

class IntegerRing final : public Ring {
  public:
    RingKind kind() const override { return RingKind::integers; }
    Int characteristic() const override { return 0; }
    std::optional<Int> cardinality() const override { return std::nullopt; }

    Elem from_int(const Int& n) const override {
        Elem e = make();
        e.z = n;
        return e;
    }
    Elem add(const Elem& a, const Elem& b) const override {
        check_owner(a);
        check_owner(b);
        return from_int(a.z + b.z);
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_owner(a);
        check_owner(b);
        return from_int(a.z * b.z);
    }
    Elem neg(const Elem& a) const override { return from_int(-a.z); }
    bool is_zero(const Elem& a) const override { return a.z == 0; }
    std::optional<Elem> try_invert(const Elem& a) const override {
        if (a.z == 1 || a.z == -1) return from_int(a.z);
        return std::nullopt;
    }
    std::string to_string(const Elem& a) const override { return a.z.get_str(); }
    json descriptor() const override { return json{{"kind", "Z"}}; }
    Elem random(std::mt19937_64& rng) const override {
        std::uniform_int_distribution<long> d(-999, 999);
        return from_int(d(rng));
    }
};

// ---------------------------------------------------------------------------
// Z/m (and F_p as the prime-modulus special case)

class ModularRing final : public Ring {
  public:
    ModularRing(Int m, bool as_prime_field) : m_(std::move(m)), prime_field_(as_prime_field) {
        if (m_ < 2) raise(errc::config_invalid, "modulus must be >= 2");
        if (prime_field_ && !is_prime(m_)) raise(errc::config_invalid, "F_p needs a prime p");
    }

    RingKind kind() const override {
        return prime_field_ ? RingKind::prime_field : RingKind::integers_mod;
    }
    Int characteristic() const override { return m_; }
    std::optional<Int> cardinality() const override { return m_; }

    Elem from_int(const Int& n) const override {
        Elem e = make();
        mpz_mod(e.z.get_mpz_t(), n.get_mpz_t(), m_.get_mpz_t());
        return e;
    }
    Elem add(const Elem& a, const Elem& b) const override {
        check_owner(a);
        check_owner(b);
        return from_int(a.z + b.z);
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_owner(a);
        check_owner(b);
        return from_int(a.z * b.z);
    }
    Elem neg(const Elem& a) const override { return from_int(-a.z); }
    bool is_zero(const Elem& a) const override { return a.z == 0; }
    std::optional<Elem> try_invert(const Elem& a) const override {
        Elem r = make();
        if (mpz_invert(r.z.get_mpz_t(), a.z.get_mpz_t(), m_.get_mpz_t()) == 0) return std::nullopt;
        return r;
    }
    std::string to_string(const Elem& a) const override { return a.z.get_str(); }
    json descriptor() const override {
        if (prime_field_) return json{{"kind", "Fp"}, {"p", m_.get_str()}};
        return json{{"kind", "Zmod"}, {"m", m_.get_str()}};
    }
    Elem random(std::mt19937_64& rng) const override {
        // m is small in practice; sample via 64-bit reduction
        std::uniform_int_distribution<unsigned long> d(0, mpz_get_ui(m_.get_mpz_t()) - 1);
        return from_int(Int(d(rng)));
    }
    Elem element_at(const Int& idx) const override { return from_int(idx); }
    Elem frobenius_root(const Elem& a) const override {
        if (!prime_field_) raise(errc::char_mismatch, "p-th roots need a perfect char-p ring");
        return a; // a^p = a in F_p
    }

  private:
    Int m_;
    bool prime_field_;
};

// ---------------------------------------------------------------------------
// F_p[t]/(modulus), modulus monic of degree >= 1

class ModPolyRing final : public Ring {
  public:
    ModPolyRing(Int p, std::vector<std::uint32_t> modulus, std::string var)
        : p_(std::move(p)), modulus_(std::move(modulus)), var_(std::move(var)) {
        if (!is_prime(p_)) raise(errc::config_invalid, "modulus ring needs prime p");
        pu_ = static_cast<std::uint32_t>(mpz_get_ui(p_.get_mpz_t()));
        if (modulus_.size() < 2) raise(errc::config_invalid, "modulus degree must be >= 1");
        for (auto& c : modulus_) c %= pu_;
        if (modulus_.back() != 1) raise(errc::config_invalid, "modulus must be monic");
        // q <= 64 cap for field use; generous cap for group-algebra moduli
        if (modulus_.size() > 9) raise(errc::cap_exceeded, "modulus degree too large");
    }

    RingKind kind() const override { return RingKind::mod_poly; }
    Int characteristic() const override { return p_; }
    std::optional<Int> cardinality() const override {
        return pow_int(p_, static_cast<unsigned long>(deg()));
    }

    std::size_t deg() const { return modulus_.size() - 1; }
    std::uint32_t p_small() const { return pu_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    const std::string& var() const { return var_; }

    Elem from_int(const Int& n) const override {
        Int r;
        mpz_mod(r.get_mpz_t(), n.get_mpz_t(), p_.get_mpz_t());
        Elem e = make();
        auto c = static_cast<std::uint32_t>(mpz_get_ui(r.get_mpz_t()));
        if (c != 0) e.poly = {c};
        return e;
    }

    Elem from_coeffs(std::vector<std::uint32_t> coeffs) const {
        for (auto& c : coeffs) c %= pu_;
        reduce(coeffs);
        Elem e = make();
        e.poly = std::move(coeffs);
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const override {
        check_owner(a);
        check_owner(b);
        std::vector<std::uint32_t> c(std::max(a.poly.size(), b.poly.size()), 0);
        for (std::size_t i = 0; i < a.poly.size(); ++i) c[i] = a.poly[i];
        for (std::size_t i = 0; i < b.poly.size(); ++i) c[i] = (c[i] + b.poly[i]) % pu_;
        trim(c);
        Elem e = make();
        e.poly = std::move(c);
        return e;
    }

    Elem mul(const Elem& a, const Elem& b) const override {
        check_owner(a);
        check_owner(b);
        if (a.poly.empty() || b.poly.empty()) return from_int(0);
        std::vector<std::uint32_t> c(a.poly.size() + b.poly.size() - 1, 0);
        for (std::size_t i = 0; i < a.poly.size(); ++i)
            for (std::size_t j = 0; j < b.poly.size(); ++j)
                c[i + j] = (c[i + j] + a.poly[i] * b.poly[j]) % pu_;
        reduce(c);
        Elem e = make();
        e.poly = std::move(c);
        return e;
    }

    Elem neg(const Elem& a) const override {
        Elem e = make();
        e.poly = a.poly;
        for (auto& c : e.poly) c = (pu_ - c) % pu_;
        trim(e.poly);
        return e;
    }

    bool is_zero(const Elem& a) const override { return a.poly.empty(); }

    std::optional<Elem> try_invert(const Elem& a) const override {
        // extended Euclid in F_p[t] against the modulus
        if (a.poly.empty()) return std::nullopt;
        std::vector<std::uint32_t> r0 = modulus_, r1 = a.poly;
        std::vector<std::uint32_t> s0 = {}, s1 = {1};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            auto s = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r0.size() != 1) return std::nullopt; // gcd not a unit constant
        std::uint32_t inv_c = mod_inv_scalar(r0[0]);
        for (auto& c : s0) c = (c * inv_c) % pu_;
        reduce(s0);
        Elem e = make();
        e.poly = std::move(s0);
        return e;
    }

    std::string to_string(const Elem& a) const override {
        if (a.poly.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = a.poly.size(); i-- > 0;) {
            if (a.poly[i] == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0) {
                os << a.poly[i];
            } else {
                if (a.poly[i] != 1) os << a.poly[i] << "*";
                os << var_;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

    json descriptor() const override {
        return json{{"kind", "mod_poly"}, {"p", p_.get_str()}, {"var", var_}, {"modulus", modulus_}};
    }

    Elem random(std::mt19937_64& rng) const override {
        std::uniform_int_distribution<std::uint32_t> d(0, pu_ - 1);
        std::vector<std::uint32_t> c(deg());
        for (auto& x : c) x = d(rng);
        trim(c);
        Elem e = make();
        e.poly = std::move(c);
        return e;
    }

    Elem element_at(const Int& idx) const override {
        Int v = idx;
        std::vector<std::uint32_t> c(deg(), 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            Int digit;
            mpz_fdiv_qr(v.get_mpz_t(), digit.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
            c[i] = static_cast<std::uint32_t>(mpz_get_ui(digit.get_mpz_t()));
        }
        trim(c);
        Elem e = make();
        e.poly = std::move(c);
        return e;
    }

    Elem frobenius_root(const Elem& a) const override {
        // In the field case, x -> x^(q/p) inverts Frobenius. Verify to stay
        // honest over reducible moduli, which are not perfect.
        unsigned long e = 1;
        for (std::size_t i = 1; i < deg(); ++i) e *= static_cast<unsigned long>(pu_);
        Elem r = pow(a, e);
        if (pow(r, static_cast<unsigned long>(pu_)) != a)
            raise(errc::char_mismatch, "element has no p-th root in this quotient");
        return r;
    }

    Elem var_elem(const std::string& name) const override {
        if (name != var_) raise(errc::parse_error, "unknown variable '" + name + "'");
        Elem e = make();
        e.poly = {0, 1};
        reduce(e.poly);
        return e;
    }

    Elem var_pow(const std::string& name, std::int64_t num, std::int64_t den) const override {
        if (den != 1 || num < 0) raise(errc::parse_error, "fractional exponents unavailable here");
        return pow(var_elem(name), static_cast<unsigned long>(num));
    }

    std::optional<ModPolyView> mod_poly_view() const override {
        return ModPolyView{pu_, &modulus_};
    }

    Elem from_raw(std::vector<std::uint32_t> coeffs) const {
        Elem e = make();
        e.poly = std::move(coeffs);
        return e;
    }
    friend Elem mod_poly_from_raw(const Ring& ring, std::vector<std::uint32_t> coeffs);

  private:
    static void trim(std::vector<std::uint32_t>& c) {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    std::uint32_t mod_inv_scalar(std::uint32_t a) const {
        // p is tiny; brute force
        for (std::uint32_t x = 1; x < pu_; ++x)
            if ((a * x) % pu_ == 1) return x;
        raise(errc::not_a_unit, "scalar not invertible");
    }

    std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<std::uint32_t> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % pu_;
        trim(c);
        return c;
    }

    std::vector<std::uint32_t> poly_sub(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b) const {
        std::vector<std::uint32_t> c(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + pu_ - b[i]) % pu_;
        trim(c);
        return c;
    }

    std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> divmod(
        std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b) const {
        std::vector<std::uint32_t> q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, 0);
        std::uint32_t lead_inv = mod_inv_scalar(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            std::uint32_t f = (a.back() * lead_inv) % pu_;
            std::size_t shift = a.size() - b.size();
            if (f != 0) {
                q[shift] = f;
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[i + shift] = (a[i + shift] + pu_ - (f * b[i]) % pu_) % pu_;
            }
            a.pop_back();
            trim(a);
            if (a.size() < b.size()) break;
        }
        trim(q);
        return {q, a};
    }

    void reduce(std::vector<std::uint32_t>& c) const {
        while (c.size() >= modulus_.size()) {
            std::uint32_t f = c.back(); // modulus monic
            std::size_t shift = c.size() - modulus_.size();
            for (std::size_t i = 0; i < modulus_.size(); ++i)
                c[i + shift] = (c[i + shift] + pu_ - (f * modulus_[i]) % pu_) % pu_;
            trim(c);
            if (c.empty()) break;
        }
        trim(c);
    }

    Int p_;
    std::uint32_t pu_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::string var_;
};

// ---------------------------------------------------------------------------
// Polynomial quotients over a scalar base, fractional exponents allowed

class MultivarRing final : public Ring {
  public:
    MultivarRing(RingPtr base, Int frac_p, std::vector<Variable> vars)
        : base_(std::move(base)), frac_p_(std::move(frac_p)), vars_(std::move(vars)) {
        if (base_->kind() == RingKind::poly_quotient)
            raise(errc::config_invalid, "nested polynomial quotients are not supported");
        if (vars_.empty()) raise(errc::config_invalid, "need at least one variable");
        bool fractional = false;
        for (const auto& v : vars_) fractional = fractional || v.frac_k > 0;
        if (fractional && !is_prime(frac_p_))
            raise(errc::config_invalid, "fractional exponent denominators need a prime p");
        scales_.reserve(vars_.size());
        for (const auto& v : vars_) {
            std::int64_t s = 1;
            for (unsigned i = 0; i < v.frac_k; ++i) s *= mpz_get_si(frac_p_.get_mpz_t());
            scales_.push_back(s);
            if (v.nil_exp && *v.nil_exp <= 0)
                raise(errc::config_invalid, "nil threshold must be positive");
        }
    }

    RingKind kind() const override { return RingKind::poly_quotient; }
    Int characteristic() const override { return base_->characteristic(); }

    std::optional<Int> cardinality() const override {
        auto bc = base_->cardinality();
        if (!bc) return std::nullopt;
        Int monomials = 1;
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            if (!vars_[v].nil_exp) return std::nullopt;
            monomials *= Int(*vars_[v].nil_exp * scales_[v]);
        }
        if (monomials > 4096) return std::nullopt; // enumeration cap
        Int card;
        mpz_pow_ui(card.get_mpz_t(), bc->get_mpz_t(), mpz_get_ui(monomials.get_mpz_t()));
        return card;
    }

    const RingPtr& base() const { return base_; }
    const std::vector<Variable>& vars() const { return vars_; }
    std::int64_t scale(std::size_t v) const { return scales_[v]; }
    const Int& frac_p() const { return frac_p_; }

    Elem from_int(const Int& n) const override {
        Elem c = base_->from_int(n);
        Elem e = make();
        if (!base_->is_zero(c)) e.terms.push_back({ExpVec(vars_.size(), 0), c});
        return e;
    }

    Elem from_terms(std::vector<std::pair<ExpVec, Elem>> terms) const {
        std::map<ExpVec, Elem> acc;
        for (auto& [ev, c] : terms) accumulate(acc, ev, c);
        return collect(acc);
    }

    Elem monomial(const ExpVec& ev, const Elem& coeff) const {
        std::map<ExpVec, Elem> acc;
        accumulate(acc, ev, coeff);
        return collect(acc);
    }

    Elem add(const Elem& a, const Elem& b) const override {
        check_owner(a);
        check_owner(b);
        std::map<ExpVec, Elem> acc;
        for (const auto& [ev, c] : a.terms) accumulate(acc, ev, c);
        for (const auto& [ev, c] : b.terms) accumulate(acc, ev, c);
        return collect(acc);
    }

    Elem mul(const Elem& a, const Elem& b) const override {
        check_owner(a);
        check_owner(b);
        std::map<ExpVec, Elem> acc;
        ExpVec ev(vars_.size());
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                for (std::size_t v = 0; v < vars_.size(); ++v) ev[v] = ea[v] + eb[v];
                accumulate(acc, ev, base_->mul(ca, cb));
            }
        return collect(acc);
    }

    Elem neg(const Elem& a) const override {
        Elem e = make();
        e.terms.reserve(a.terms.size());
        for (const auto& [ev, c] : a.terms) e.terms.push_back({ev, base_->neg(c)});
        return e;
    }

    bool is_zero(const Elem& a) const override { return a.terms.empty(); }

    std::optional<Elem> try_invert(const Elem& a) const override {
        check_owner(a);
        // split off the constant term; the rest must be nilpotent
        Elem c = base_->zero();
        Elem n = make();
        for (const auto& [ev, coeff] : a.terms) {
            bool constant = std::all_of(ev.begin(), ev.end(), [](std::int64_t e) { return e == 0; });
            if (constant)
                c = coeff;
            else
                n.terms.push_back({ev, coeff});
        }
        auto cinv_base = base_->try_invert(c);
        if (!cinv_base) return std::nullopt;
        Elem cinv = monomial(ExpVec(vars_.size(), 0), *cinv_base);
        // geometric series sum_k (-n c^{-1})^k c^{-1}, stopping when the power dies
        Elem t = neg(mul(n, cinv));
        Elem sum = one();
        Elem power = t;
        for (int k = 0; k < 64 && !is_zero(power); ++k) {
            sum = add(sum, power);
            power = mul(power, t);
        }
        if (!is_zero(power)) return std::nullopt; // non-nilpotent tail
        return mul(sum, cinv);
    }

    std::string to_string(const Elem& a) const override {
        if (a.terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
            const auto& [ev, c] = *it;
            if (!first) os << "+";
            first = false;
            std::string cs = base_->to_string(c);
            bool is_const_monomial =
                std::all_of(ev.begin(), ev.end(), [](std::int64_t e) { return e == 0; });
            bool printed_coeff = false;
            if (cs != "1" || is_const_monomial) {
                if (cs.find('+') != std::string::npos || cs.find('-') != std::string::npos)
                    os << "(" << cs << ")";
                else
                    os << cs;
                printed_coeff = true;
            }
            for (std::size_t v = 0; v < vars_.size(); ++v) {
                if (ev[v] == 0) continue;
                if (printed_coeff) os << "*";
                printed_coeff = true;
                os << vars_[v].name;
                std::int64_t num = ev[v], den = scales_[v];
                std::int64_t g = std::gcd(num, den);
                num /= g;
                den /= g;
                if (den == 1) {
                    if (num != 1) os << "^" << num;
                } else {
                    os << "^(" << num << "/" << den << ")";
                }
            }
        }
        return os.str();
    }

    json descriptor() const override {
        json vs = json::array();
        for (const auto& v : vars_) {
            json jv{{"name", v.name}, {"k", v.frac_k}};
            if (v.nil_exp) jv["nil_exp"] = *v.nil_exp;
            vs.push_back(jv);
        }
        return json{{"kind", "poly_quotient"},
                    {"base", base_->descriptor()},
                    {"frac_p", frac_p_.get_str()},
                    {"vars", vs}};
    }

    Elem random(std::mt19937_64& rng) const override {
        auto card = cardinality();
        if (card) {
            // uniform over the finite ring
            Int idx;
            std::uniform_int_distribution<unsigned long> d64;
            mpz_import_ui(idx, d64(rng));
            Int r;
            mpz_mod(r.get_mpz_t(), idx.get_mpz_t(), card->get_mpz_t());
            return element_at(r);
        }
        // sparse random element with small exponents
        std::uniform_int_distribution<int> nterms(0, 3), expd(0, 4);
        std::map<ExpVec, Elem> acc;
        int k = nterms(rng);
        for (int i = 0; i <= k; ++i) {
            ExpVec ev(vars_.size());
            for (auto& e : ev) e = expd(rng);
            accumulate(acc, ev, base_->random(rng));
        }
        return collect(acc);
    }

    Elem element_at(const Int& idx) const override {
        auto card = cardinality();
        if (!card) raise(errc::ring_too_large, "ring is not enumerable");
        auto monos = monomial_list();
        Int v = idx;
        Int bc = *base_->cardinality();
        std::map<ExpVec, Elem> acc;
        for (const auto& ev : monos) {
            Int digit;
            mpz_fdiv_qr(v.get_mpz_t(), digit.get_mpz_t(), v.get_mpz_t(), bc.get_mpz_t());
            Elem c = base_->element_at(digit);
            accumulate(acc, ev, c);
        }
        return collect(acc);
    }

    Elem frobenius_root(const Elem& a) const override {
        check_owner(a);
        std::int64_t p = mpz_get_si(frac_p_.get_mpz_t());
        if (!base_->is_char_p(frac_p_)) raise(errc::char_mismatch, "p-th roots need char p");
        Elem e = make();
        e.terms.reserve(a.terms.size());
        for (const auto& [ev, c] : a.terms) {
            ExpVec r(ev.size());
            for (std::size_t v = 0; v < ev.size(); ++v) {
                if (ev[v] % p != 0)
                    raise(errc::not_divisible, "exponent not divisible by p; enlarge the scale K");
                r[v] = ev[v] / p;
            }
            e.terms.push_back({r, base_->frobenius_root(c)});
        }
        std::sort(e.terms.begin(), e.terms.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        return e;
    }

    Elem var_elem(const std::string& name) const override {
        for (std::size_t v = 0; v < vars_.size(); ++v)
            if (vars_[v].name == name) {
                ExpVec ev(vars_.size(), 0);
                ev[v] = scales_[v];
                return monomial(ev, base_->one());
            }
        // fall through to base-ring generators (e.g. the field variable)
        Elem c = base_->var_elem(name);
        return monomial(ExpVec(vars_.size(), 0), c);
    }

    Elem embed_scalar(const Elem& base_elem) const override {
        if (base_elem.owner() && base_elem.owner()->same_ring(*base_))
            return monomial(ExpVec(vars_.size(), 0), base_elem);
        return Ring::embed_scalar(base_elem);
    }

    Elem var_pow(const std::string& name, std::int64_t num, std::int64_t den) const override {
        if (num < 0 || den <= 0) raise(errc::parse_error, "exponents must be non-negative");
        for (std::size_t v = 0; v < vars_.size(); ++v)
            if (vars_[v].name == name) {
                if ((num * scales_[v]) % den != 0)
                    raise(errc::parse_error,
                          "exponent denominator must divide p^K of variable " + name);
                ExpVec ev(vars_.size(), 0);
                ev[v] = num * scales_[v] / den;
                return monomial(ev, base_->one());
            }
        if (den != 1) raise(errc::parse_error, "fractional exponent on non-variable");
        return pow(var_elem(name), static_cast<unsigned long>(num));
    }

    std::vector<ExpVec> monomial_list() const {
        std::vector<ExpVec> out;
        ExpVec cur(vars_.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t v) {
            if (v == vars_.size()) {
                out.push_back(cur);
                return;
            }
            std::int64_t bound = *vars_[v].nil_exp * scales_[v];
            for (std::int64_t e = 0; e < bound; ++e) {
                cur[v] = e;
                rec(v + 1);
            }
            cur[v] = 0;
        };
        rec(0);
        return out;
    }

  private:
    static void mpz_import_ui(Int& out, unsigned long v) { out = Int(v); }

    bool killed(const ExpVec& ev) const {
        for (std::size_t v = 0; v < vars_.size(); ++v)
            if (vars_[v].nil_exp && ev[v] >= *vars_[v].nil_exp * scales_[v]) return true;
        return false;
    }

    void accumulate(std::map<ExpVec, Elem>& acc, const ExpVec& ev, const Elem& c) const {
        if (base_->is_zero(c) || killed(ev)) return;
        auto it = acc.find(ev);
        if (it == acc.end())
            acc.emplace(ev, c);
        else
            it->second = base_->add(it->second, c);
    }

    Elem collect(std::map<ExpVec, Elem>& acc) const {
        Elem e = make();
        for (auto& [ev, c] : acc)
            if (!base_->is_zero(c)) e.terms.push_back({ev, c});
        return e;
    }

    RingPtr base_;
    Int frac_p_;
    std::vector<Variable> vars_;
    std::vector<std::int64_t> scales_;
};

// ---------------------------------------------------------------------------
// Constructors and descriptor round-trips

RingPtr make_integers() { return std::make_shared<IntegerRing>(); }
RingPtr make_integers_mod(const Int& m) { return std::make_shared<ModularRing>(m, false); }
RingPtr make_prime_field(const Int& p) { return std::make_shared<ModularRing>(p, true); }
RingPtr make_mod_poly(const Int& p, std::vector<std::uint32_t> modulus, std::string var) {
    return std::make_shared<ModPolyRing>(p, std::move(modulus), std::move(var));
}
RingPtr make_poly_quotient(RingPtr base, Int frac_p, std::vector<Variable> vars) {
    return std::make_shared<MultivarRing>(std::move(base), std::move(frac_p), std::move(vars));
}

RingPtr make_gf4() { return make_mod_poly(2, {1, 1, 1}, "t"); }

RingPtr make_dual_numbers(const Int& p) { return make_mod_poly(p, {0, 0, 1}, "e"); }

RingPtr make_mu_p_coefficients(const Int& p) {
    auto pl = mpz_get_ui(p.get_mpz_t());
    std::vector<std::uint32_t> modulus(pl + 1, 0);
    auto pu = static_cast<std::uint32_t>(pl);
    modulus[0] = pu - 1; // t^p - 1
    modulus[pl] = 1;
    return make_mod_poly(p, std::move(modulus), "t");
}

RingPtr make_sharp_coefficients(const Int& p) {
    auto pl = mpz_get_ui(p.get_mpz_t());
    std::vector<std::uint32_t> modulus(pl + 1, 0);
    modulus[pl] = 1; // e^p
    return make_mod_poly(p, std::move(modulus), "e");
}

RingPtr ring_from_descriptor(const json& j) {
    if (!j.is_object() || !j.contains("kind")) {
        if (j.is_string()) return ring_from_string(j.get<std::string>());
        raise(errc::config_invalid, "ring descriptor must be an object with a kind");
    }
    std::string kind = j.at("kind").get<std::string>();
    auto get_int = [&](const json& v) -> Int {
        if (v.is_string()) return Int(v.get<std::string>());
        return Int(v.get<long>());
    };
    if (kind == "Z") return make_integers();
    if (kind == "Zmod") return make_integers_mod(get_int(j.at("m")));
    if (kind == "Fp") return make_prime_field(get_int(j.at("p")));
    if (kind == "mod_poly") {
        std::vector<std::uint32_t> modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
        std::string var = j.value("var", "t");
        return make_mod_poly(get_int(j.at("p")), std::move(modulus), var);
    }
    if (kind == "poly_quotient") {
        RingPtr base = ring_from_descriptor(j.at("base"));
        Int frac_p = j.contains("frac_p") ? get_int(j.at("frac_p")) : Int(2);
        std::vector<Variable> vars;
        for (const auto& jv : j.at("vars")) {
            Variable v;
            v.name = jv.at("name").get<std::string>();
            v.frac_k = jv.value("k", 0u);
            if (jv.contains("nil_exp")) v.nil_exp = jv.at("nil_exp").get<std::int64_t>();
            vars.push_back(std::move(v));
        }
        return make_poly_quotient(std::move(base), std::move(frac_p), std::move(vars));
    }
    raise(errc::config_invalid, "unknown ring kind '" + kind + "'");
}

RingPtr ring_from_string(const std::string& s) {
    if (s == "Z") return make_integers();
    if (s.rfind("Z/", 0) == 0) return make_integers_mod(Int(s.substr(2)));
    if (s.size() >= 2 && s[0] == 'F') {
        Int p(s.substr(1));
        if (!is_prime(p))
            raise(errc::config_invalid,
                  "F<q> shorthand covers prime q only; supply an explicit modulus descriptor");
        return make_prime_field(p);
    }
    raise(errc::config_invalid, "unknown ring shorthand '" + s + "'");
}

// ---------------------------------------------------------------------------
// Element expression parser

namespace {

struct Token {
    enum Kind { integer, ident, sym, end } kind = end;
    std::string text;
    Int value;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ >= s_.size()) {
            tok_ = Token{};
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            tok_ = Token{Token::integer, s_.substr(i_, j - i_), Int(s_.substr(i_, j - i_))};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            tok_ = Token{Token::ident, s_.substr(i_, j - i_), 0};
            i_ = j;
            return;
        }
        tok_ = Token{Token::sym, std::string(1, c), 0};
        ++i_;
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token tok_;
};

class ExprParser {
  public:
    ExprParser(const Ring& ring, const std::string& text) : ring_(ring), lex_(text) {}

    Elem parse() {
        Elem e = expr();
        if (lex_.peek().kind != Token::end)
            raise(errc::parse_error, "trailing input near '" + lex_.peek().text + "'");
        return e;
    }

  private:
    bool accept(const char* sym) {
        if (lex_.peek().kind == Token::sym && lex_.peek().text == sym) {
            lex_.take();
            return true;
        }
        return false;
    }

    Elem expr() {
        bool negate = false;
        if (accept("-"))
            negate = true;
        else
            accept("+");
        Elem acc = term();
        if (negate) acc = ring_.neg(acc);
        while (true) {
            if (accept("+"))
                acc = ring_.add(acc, term());
            else if (accept("-"))
                acc = ring_.sub(acc, term());
            else
                break;
        }
        return acc;
    }

    Elem term() {
        Elem acc = factor();
        while (accept("*")) acc = ring_.mul(acc, factor());
        return acc;
    }

    Elem factor() {
        Token t = lex_.take();
        if (t.kind == Token::integer) {
            Elem base = ring_.from_int(t.value);
            return maybe_pow(base, std::nullopt);
        }
        if (t.kind == Token::ident) {
            return maybe_pow(ring_.var_elem(t.text), t.text);
        }
        if (t.kind == Token::sym && t.text == "(") {
            Elem inner = expr();
            if (!accept(")")) raise(errc::parse_error, "expected ')'");
            return maybe_pow(inner, std::nullopt);
        }
        raise(errc::parse_error, "unexpected token '" + t.text + "'");
    }

    Elem maybe_pow(Elem base, std::optional<std::string> varname) {
        if (!accept("^")) return base;
        if (lex_.peek().kind == Token::integer) {
            Int e = lex_.take().value;
            if (varname) return ring_.var_pow(*varname, mpz_get_si(e.get_mpz_t()), 1);
            return ring_.pow(base, mpz_get_ui(e.get_mpz_t()));
        }
        if (accept("(")) {
            if (lex_.peek().kind != Token::integer) raise(errc::parse_error, "expected exponent");
            Int num = lex_.take().value;
            if (!accept("/")) {
                if (!accept(")")) raise(errc::parse_error, "expected ')'");
                if (varname) return ring_.var_pow(*varname, mpz_get_si(num.get_mpz_t()), 1);
                return ring_.pow(base, mpz_get_ui(num.get_mpz_t()));
            }
            if (lex_.peek().kind != Token::integer) raise(errc::parse_error, "expected denominator");
            Int den = lex_.take().value;
            if (!accept(")")) raise(errc::parse_error, "expected ')'");
            if (!varname) raise(errc::parse_error, "fractional exponent on non-variable");
            return ring_.var_pow(*varname, mpz_get_si(num.get_mpz_t()), mpz_get_si(den.get_mpz_t()));
        }
        raise(errc::parse_error, "malformed exponent");
    }

    const Ring& ring_;
    Lexer lex_;
};

} // namespace

Elem Ring::parse(const std::string& text) const {
    ExprParser p(*this, text);
    return p.parse();
}

Elem mod_poly_from_raw(const Ring& ring, std::vector<std::uint32_t> coeffs) {
    const auto* mp = dynamic_cast<const ModPolyRing*>(&ring);
    if (!mp) raise(errc::config_invalid, "raw construction needs a univariate quotient");
    return mp->from_raw(std::move(coeffs));
}

nlohmann::json elem_to_json(const Elem& a) {
    const auto& ring = *a.owner();
    auto k = ring.kind();
    if (k == RingKind::integers || k == RingKind::integers_mod || k == RingKind::prime_field) {
        if (mpz_fits_slong_p(a.z.get_mpz_t())) return mpz_get_si(a.z.get_mpz_t());
    }
    return ring.to_string(a);
}

} // namespace wittlab
