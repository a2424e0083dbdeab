#include "wittlab/pd.hpp"

#include "wittlab/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wittlab {

bool PDElement::operator==(const PDElement& o) const {
    if (!owner_ || !o.owner_) return !owner_ && !o.owner_;
    return owner_->same(*o.owner_) && terms_ == o.terms_;
}

std::string PDElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& vars = owner_->vars();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << " + ";
        first = false;
        std::string cs = owner_->coeff()->to_string(c);
        bool printed = false;
        if (cs != "1") {
            if (cs.find('+') != std::string::npos ||
                (cs.find('-') != std::string::npos && cs.rfind('-') > 0))
                os << "(" << cs << ")";
            else
                os << cs;
            printed = true;
        }
        for (std::size_t v = 0; v < vars.size(); ++v) {
            auto [fr, n] = m.parts[v];
            if (fr == 0 && n == 0) continue;
            std::int64_t scale = owner_->scale(v);
            if (!vars[v].divided) {
                // plain variable: exponent fr/scale + n
                std::int64_t num = fr + n * scale, den = scale;
                std::int64_t g = std::gcd(num, den);
                num /= g;
                den /= g;
                if (printed) os << "*";
                printed = true;
                os << vars[v].name;
                if (den == 1) {
                    if (num != 1) os << "^" << num;
                } else {
                    os << "^(" << num << "/" << den << ")";
                }
                continue;
            }
            if (fr != 0) {
                std::int64_t g = std::gcd(fr, scale);
                if (printed) os << "*";
                printed = true;
                os << vars[v].name << "^(" << fr / g << "/" << scale / g << ")";
            }
            if (n != 0) {
                if (printed) os << "*";
                printed = true;
                os << "g" << n << "(" << vars[v].name << ")";
            }
        }
        if (!printed) os << "1";
    }
    return os.str();
}

PDAlgebra::PDAlgebra(RingPtr coeff, Int p, std::vector<PDVar> vars, std::int64_t bound)
    : coeff_(std::move(coeff)), p_(std::move(p)), vars_(std::move(vars)), degree_bound_num_(bound) {
    if (!is_prime(p_)) raise(errc::config_invalid, "divided powers need a prime p");
    if (vars_.empty()) raise(errc::config_invalid, "need at least one variable");
    long pl = mpz_get_si(p_.get_mpz_t());
    for (const auto& v : vars_) {
        std::int64_t s = 1;
        for (unsigned i = 0; i < v.frac_k; ++i) s *= pl;
        scales_.push_back(s);
        common_scale_ = std::max(common_scale_, s);
    }
    for (auto& s : scales_)
        if (common_scale_ % s != 0) raise(errc::config_invalid, "variable scales must be nested");
    if (degree_bound_num_ <= 0) raise(errc::config_invalid, "degree bound must be positive");
}

PDPtr PDAlgebra::make(RingPtr coeff, Int p, std::vector<PDVar> vars, std::int64_t bound) {
    return PDPtr(new PDAlgebra(std::move(coeff), std::move(p), std::move(vars), bound));
}

bool PDAlgebra::same(const PDAlgebra& o) const {
    if (!(p_ == o.p_) || vars_.size() != o.vars_.size()) return false;
    if (degree_bound_num_ != o.degree_bound_num_) return false;
    if (!coeff_->same_ring(*o.coeff_)) return false;
    for (std::size_t v = 0; v < vars_.size(); ++v)
        if (vars_[v].name != o.vars_[v].name || vars_[v].divided != o.vars_[v].divided ||
            vars_[v].frac_k != o.vars_[v].frac_k)
            return false;
    return true;
}

std::int64_t PDAlgebra::degree_num(const PDMono& m) const {
    std::int64_t d = 0;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        auto [fr, n] = m.parts[v];
        d += fr * (common_scale_ / scales_[v]) + n * common_scale_;
    }
    return d;
}

PDElement PDAlgebra::monomial(const PDMono& m, const Elem& c) const {
    PDElement e(shared_from_this());
    if (!coeff_->is_zero(c) && degree_num(m) < degree_bound_num_) e.terms_.push_back({m, c});
    return e;
}

PDElement PDAlgebra::gamma(std::size_t v, std::int64_t n) const {
    if (!vars_.at(v).divided) raise(errc::config_invalid, "variable has no divided powers");
    PDMono m = unit_mono();
    m.parts[v] = {0, n};
    if (degree_num(m) >= degree_bound_num_)
        raise(errc::truncated, "gamma index outside the degree range");
    return monomial(m, coeff_->one());
}

PDElement PDAlgebra::var_power(std::size_t v, std::int64_t num) const {
    std::int64_t s = scales_.at(v);
    std::int64_t n = num / s, fr = num % s;
    PDMono m = unit_mono();
    m.parts[v] = {fr, n};
    if (degree_num(m) >= degree_bound_num_)
        raise(errc::truncated, "power outside the degree range");
    if (!vars_[v].divided || n == 0) return monomial(m, coeff_->one());
    // x^n = n! gamma_n for the integer part of a divided variable
    return monomial(m, coeff_->from_int(factorial(static_cast<unsigned long>(n))));
}

PDElement PDAlgebra::gamma_trunc(std::size_t v, std::int64_t n) const {
    if (!vars_.at(v).divided) raise(errc::config_invalid, "variable has no divided powers");
    PDMono m = unit_mono();
    m.parts[v] = {0, n};
    return monomial(m, coeff_->one()); // monomial() drops out-of-range degrees
}

PDElement PDAlgebra::var_power_trunc(std::size_t v, std::int64_t num) const {
    std::int64_t s = scales_.at(v);
    std::int64_t n = num / s, fr = num % s;
    PDMono m = unit_mono();
    m.parts[v] = {fr, n};
    if (!vars_[v].divided || n == 0) return monomial(m, coeff_->one());
    return monomial(m, coeff_->from_int(factorial(static_cast<unsigned long>(n))));
}

std::size_t PDAlgebra::var_index(const std::string& name) const {
    for (std::size_t v = 0; v < vars_.size(); ++v)
        if (vars_[v].name == name) return v;
    raise(errc::parse_error, "unknown pd variable '" + name + "'");
}

PDElement PDAlgebra::add(const PDElement& a, const PDElement& b) const {
    if (!a.owner()->same(*this) || !b.owner()->same(*this))
        raise(errc::mixed_rings, "pd elements from different algebras");
    std::map<PDMono, Elem> acc;
    auto feed = [&](const PDElement& x) {
        for (const auto& [m, c] : x.terms()) {
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(m, c);
            else
                it->second = coeff_->add(it->second, c);
        }
    };
    feed(a);
    feed(b);
    PDElement e(shared_from_this());
    for (auto& [m, c] : acc)
        if (!coeff_->is_zero(c)) e.terms_.push_back({m, c});
    return e;
}

PDElement PDAlgebra::neg(const PDElement& a) const {
    PDElement e(shared_from_this());
    for (const auto& [m, c] : a.terms()) e.terms_.push_back({m, coeff_->neg(c)});
    return e;
}

PDElement PDAlgebra::scale_by(const Elem& c, const PDElement& a) const {
    PDElement e(shared_from_this());
    for (const auto& [m, x] : a.terms()) {
        Elem y = coeff_->mul(c, x);
        if (!coeff_->is_zero(y)) e.terms_.push_back({m, y});
    }
    return e;
}

PDElement PDAlgebra::mul(const PDElement& a, const PDElement& b) const {
    if (!a.owner()->same(*this) || !b.owner()->same(*this))
        raise(errc::mixed_rings, "pd elements from different algebras");
    std::map<PDMono, Elem> acc;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            PDMono m = unit_mono();
            Int unit = 1;
            for (std::size_t v = 0; v < vars_.size(); ++v) {
                auto [fa, na] = ma.parts[v];
                auto [fb, nb] = mb.parts[v];
                std::int64_t fr = fa + fb;
                std::int64_t n = na + nb;
                if (vars_[v].divided) {
                    // gamma_m gamma_n = binom(m+n, m) gamma_{m+n}
                    if (na > 0 && nb > 0)
                        unit *= binomial(static_cast<unsigned long>(na + nb),
                                         static_cast<unsigned long>(na));
                    if (fr >= scales_[v]) { // x * gamma_n = (n+1) gamma_{n+1}
                        fr -= scales_[v];
                        n += 1;
                        unit *= n;
                    }
                } else {
                    n += fr / scales_[v];
                    fr %= scales_[v];
                }
                m.parts[v] = {fr, n};
            }
            if (degree_num(m) >= degree_bound_num_) continue; // truncation ideal
            Elem c = coeff_->mul(ca, cb);
            if (unit != 1) c = coeff_->mul(c, coeff_->from_int(unit));
            if (coeff_->is_zero(c)) continue;
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(m, c);
            else
                it->second = coeff_->add(it->second, c);
        }
    PDElement e(shared_from_this());
    for (auto& [m, c] : acc)
        if (!coeff_->is_zero(c)) e.terms_.push_back({m, c});
    return e;
}

PDElement PDAlgebra::pow(const PDElement& a, unsigned long e) const {
    PDElement r = one();
    PDElement base = a;
    while (e > 0) {
        if (e & 1UL) r = mul(r, base);
        if (e >>= 1UL) base = mul(base, base);
    }
    return r;
}

std::vector<PDMono> PDAlgebra::monomial_basis(std::int64_t bound_num) const {
    std::vector<PDMono> out;
    PDMono cur = unit_mono();
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t v, std::int64_t used) {
        if (v == vars_.size()) {
            out.push_back(cur);
            return;
        }
        std::int64_t unit = common_scale_ / scales_[v];
        for (std::int64_t fr = 0; fr < scales_[v]; ++fr) {
            std::int64_t base = used + fr * unit;
            if (base >= bound_num) break;
            for (std::int64_t n = 0;; ++n) {
                std::int64_t d = base + n * common_scale_;
                if (d >= bound_num) break;
                cur.parts[v] = {fr, n};
                rec(v + 1, d);
            }
        }
        cur.parts[v] = {0, 0};
    };
    rec(0, 0);
    return out;
}

std::vector<PDMono> PDAlgebra::monomials_of_degree(std::int64_t degree) const {
    std::vector<PDMono> out;
    for (auto& m : monomial_basis(degree + 1))
        if (degree_num(m) == degree) out.push_back(m);
    return out;
}

Elem PDAlgebra::coefficient_of(const PDElement& a, const PDMono& m) const {
    for (const auto& [mm, c] : a.terms())
        if (mm == m) return c;
    return coeff_->zero();
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

// coeff^(num/scale) in the target coefficient ring
Elem coeff_frac_power(const Ring& R, const Elem& c, std::int64_t num, std::int64_t scale,
                      const Int& p) {
    Elem root = c;
    std::int64_t s = scale;
    while (s > 1) {
        if (R.one() == root) break; // 1 has trivial roots
        root = R.frobenius_root(root);
        s /= mpz_get_si(p.get_mpz_t());
    }
    return R.pow(root, static_cast<unsigned long>(num));
}

// gamma_e(atom) inside the target algebra; the atom is gamma-free
PDElement gamma_of_atom(const PDPtr& target, const SubstAtom& atom, std::int64_t e) {
    const Ring& R = *target->coeff();
    if (e == 0) return target->one();
    if (e == 1) {
        PDElement r = target->one();
        for (auto [v, num] : atom.powers) r = target->mul(r, target->var_power_trunc(v, num));
        return target->scale_by(atom.coeff, r);
    }
    // pick a divided variable with a positive integer exponent to carry gamma
    std::size_t carrier = SIZE_MAX;
    std::int64_t carrier_m = 0;
    for (auto [v, num] : atom.powers) {
        if (target->vars()[v].divided && num > 0 && num % target->scale(v) == 0) {
            carrier = v;
            carrier_m = num / target->scale(v);
            break;
        }
    }
    if (carrier == SIZE_MAX)
        raise(errc::not_divisible, "divided power of an atom without an integral pd part");
    // gamma_e(c * x^m * rest) = c^e * rest^e * ((em)!/e!) gamma_{em}(x)
    PDElement rest = target->one();
    for (auto [v, num] : atom.powers) {
        if (v == carrier) continue;
        rest = target->mul(rest, target->var_power_trunc(v, num * e));
    }
    Int ratio = exact_div(factorial(static_cast<unsigned long>(e * carrier_m)),
                          factorial(static_cast<unsigned long>(e)));
    PDElement g = target->gamma_trunc(carrier, e * carrier_m);
    PDElement out = target->mul(rest, g);
    out = target->scale_by(R.pow(atom.coeff, static_cast<unsigned long>(e)), out);
    return target->scale_by(R.from_int(ratio), out);
}

// compositions of n into k non-negative parts
void for_each_composition(std::int64_t n, std::size_t k,
                          const std::function<void(const std::vector<std::int64_t>&)>& fn) {
    if (k == 0) return;
    std::vector<std::int64_t> parts(k, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
        if (i + 1 == k) {
            parts[i] = left;
            fn(parts);
            return;
        }
        for (std::int64_t v = 0; v <= left; ++v) {
            parts[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, n);
}

// image^(frac_num / scale) for a single-atom image
PDElement atom_frac_power(const PDPtr& target, const SubstAtom& atom, std::int64_t frac_num,
                          std::int64_t scale, const Int& p) {
    const Ring& R = *target->coeff();
    PDElement r = target->one();
    for (auto [v, num] : atom.powers) {
        if ((num * frac_num) % scale != 0)
            raise(errc::not_divisible, "fractional image power leaves the exponent lattice");
        r = target->mul(r, target->var_power_trunc(v, num * frac_num / scale));
    }
    Elem c = (R.one() == atom.coeff) ? R.one() : coeff_frac_power(R, atom.coeff, frac_num, scale, p);
    return target->scale_by(c, r);
}

} // namespace

PDElement pd_substitute(const PDElement& el, const PDPtr& target,
                        const std::map<std::size_t, SubstImage>& images) {
    const auto& src = *el.owner();
    const Ring& Rt = *target->coeff();
    const bool same_coeff = src.coeff()->same_ring(Rt);
    const bool z_coeff = src.coeff()->kind() == RingKind::integers;
    if (!same_coeff && !z_coeff)
        raise(errc::mixed_rings, "substitution cannot transport the coefficient ring");

    PDElement acc = target->zero();
    for (const auto& [mono, c] : el.terms()) {
        Elem coeff = same_coeff ? c : Rt.from_int(c.z);
        PDElement term = target->scalar(coeff);
        for (std::size_t v = 0; v < src.vars().size() && !term.is_zero(); ++v) {
            auto [fr, n] = mono.parts[v];
            if (fr == 0 && n == 0) continue;
            auto it = images.find(v);
            if (it == images.end()) {
                // identity on the like-named target variable
                std::size_t tv = target->var_index(src.vars()[v].name);
                if (!src.vars()[v].divided && target->vars()[tv].divided && n > 0)
                    raise(errc::config_invalid, "plain variable mapped onto a divided one");
                std::int64_t fs = src.scale(v), ts = target->scale(tv);
                if ((fr * ts) % fs != 0)
                    raise(errc::not_divisible, "target variable scale too coarse");
                PDMono m = target->unit_mono();
                m.parts[tv] = {fr * ts / fs, n};
                term = target->mul(term, target->monomial(m, Rt.one()));
                continue;
            }
            const SubstImage& image = it->second;
            if (image.empty()) {
                term = target->zero();
                break;
            }
            PDElement factor = target->one();
            // gamma part: gamma_n(sum of atoms) by the convolution formula
            if (n > 0) {
                if (!src.vars()[v].divided) {
                    // plain integer exponent: a power of the image
                    PDElement img = target->zero();
                    for (const auto& a : image) {
                        PDElement t = target->one();
                        for (auto [tv, num] : a.powers)
                            t = target->mul(t, target->var_power_trunc(tv, num));
                        img = target->add(img, target->scale_by(a.coeff, t));
                    }
                    factor = target->mul(factor, target->pow(img, static_cast<unsigned long>(n)));
                } else {
                    PDElement gsum = target->zero();
                    for_each_composition(n, image.size(), [&](const std::vector<std::int64_t>& e) {
                        PDElement prod = target->one();
                        for (std::size_t a = 0; a < image.size() && !prod.is_zero(); ++a)
                            prod = target->mul(prod, gamma_of_atom(target, image[a], e[a]));
                        gsum = target->add(gsum, prod);
                    });
                    factor = target->mul(factor, gsum);
                }
            }
            // fractional part: needs a single-atom image
            if (fr > 0) {
                if (image.size() != 1)
                    raise(errc::not_divisible, "fractional part needs a monomial image");
                factor = target->mul(factor,
                                     atom_frac_power(target, image[0], fr, src.scale(v), src.p()));
            }
            term = target->mul(term, factor);
        }
        acc = target->add(acc, term);
    }
    return acc;
}

GammaExpansion gamma_expand(const PDPtr& alg, std::size_t v, std::int64_t n) {
    long p = static_cast<long>(alg->p_ui());
    GammaExpansion out;
    // base-p digits of n
    std::vector<std::int64_t> digits;
    std::int64_t m = n;
    while (m > 0) {
        digits.push_back(m % p);
        m /= p;
    }
    out.digits = digits;
    // digit monomial x^{n_0} prod_{j>=1} gamma_{p^j}^{n_j}
    PDElement mono = alg->one();
    std::vector<unsigned long> denom_factorials;
    std::int64_t pj = 1;
    for (std::size_t j = 0; j < digits.size(); ++j) {
        for (std::int64_t rep = 0; rep < digits[j]; ++rep) {
            mono = alg->mul(mono, j == 0 ? alg->var_power(v, alg->scale(v)) : alg->gamma(v, pj));
            denom_factorials.push_back(static_cast<unsigned long>(pj));
        }
        pj *= p;
    }
    out.digit_monomial = mono;
    out.multinomial = factorial_ratio({static_cast<unsigned long>(n)}, denom_factorials);
    return out;
}

} // namespace wittlab
