#include "wittlab/intpoly.hpp"

#include "wittlab/error.hpp"

#include <sstream>

namespace wittlab {

IntPoly IntPoly::constant(unsigned nvars, const Int& c) {
    IntPoly p(nvars);
    if (c != 0) p.terms_[Exp(nvars, 0)] = c;
    return p;
}

IntPoly IntPoly::variable(unsigned nvars, unsigned idx) {
    IntPoly p(nvars);
    Exp e(nvars, 0);
    e.at(idx) = 1;
    p.terms_[e] = 1;
    return p;
}

void IntPoly::add_term(const Exp& e, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPoly IntPoly::operator+(const IntPoly& other) const {
    IntPoly r = *this;
    for (const auto& [e, c] : other.terms_) r.add_term(e, c);
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& other) const {
    IntPoly r = *this;
    for (const auto& [e, c] : other.terms_) r.add_term(e, -c);
    return r;
}

IntPoly IntPoly::operator-() const {
    IntPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& other) const {
    IntPoly r(nvars_);
    Exp e(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : other.terms_) {
            for (unsigned v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
            r.add_term(e, ca * cb);
        }
    return r;
}

IntPoly IntPoly::scaled(const Int& c) const {
    if (c == 0) return IntPoly(nvars_);
    IntPoly r(nvars_);
    for (const auto& [e, a] : terms_) r.terms_[e] = a * c;
    return r;
}

IntPoly IntPoly::pow(unsigned long e) const {
    IntPoly result = constant(nvars_, 1);
    IntPoly base = *this;
    while (e > 0) {
        if (e & 1UL) result = result * base;
        if (e >>= 1UL) base = base * base;
    }
    return result;
}

IntPoly IntPoly::exact_div_p_power(const Int& p, unsigned k) const {
    IntPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = wittlab::exact_div_p_power(c, p, k);
    return r;
}

IntPoly IntPoly::compose(const std::vector<IntPoly>& images) const {
    if (images.size() != nvars_) raise(errc::config_invalid, "compose arity mismatch");
    unsigned out_vars = images.empty() ? 0 : images[0].nvars();
    IntPoly r(out_vars);
    for (const auto& [e, c] : terms_) {
        IntPoly m = IntPoly::constant(out_vars, c);
        for (unsigned v = 0; v < nvars_; ++v)
            if (e[v] != 0) m = m * images[v].pow(e[v]);
        r = r + m;
    }
    return r;
}

Elem IntPoly::evaluate(const Ring& ring, const std::vector<Elem>& args) const {
    if (args.size() != nvars_) raise(errc::config_invalid, "evaluate arity mismatch");
    // fast path: residue rings with a small modulus run in machine words
    auto kind = ring.kind();
    if (kind == RingKind::integers_mod || kind == RingKind::prime_field) {
        Int mod = ring.characteristic();
        if (mpz_fits_uint_p(mod.get_mpz_t())) {
            const std::uint64_t m = mpz_get_ui(mod.get_mpz_t());
            std::vector<std::uint64_t> a(nvars_);
            for (unsigned v = 0; v < nvars_; ++v) a[v] = mpz_get_ui(args[v].z.get_mpz_t());
            std::vector<std::map<std::uint32_t, std::uint64_t>> pows(nvars_);
            auto upow = [&](unsigned v, std::uint32_t e) {
                auto it = pows[v].find(e);
                if (it != pows[v].end()) return it->second;
                std::uint64_t r = 1, b = a[v];
                std::uint32_t k = e;
                while (k) {
                    if (k & 1U) r = r * b % m;
                    b = b * b % m;
                    k >>= 1U;
                }
                return pows[v].emplace(e, r).first->second;
            };
            std::uint64_t acc = 0;
            for (const auto& [e, c] : terms_) {
                std::uint64_t t = mpz_fdiv_ui(c.get_mpz_t(), m);
                for (unsigned v = 0; v < nvars_; ++v)
                    if (e[v] != 0) t = t * upow(v, e[v]) % m;
                acc = (acc + t) % m;
            }
            return ring.from_int(Int(acc));
        }
    }
    // fast path: univariate quotients run on raw coefficient vectors
    if (auto view = ring.mod_poly_view()) {
        const std::uint32_t m = view->p;
        const auto& modulus = *view->modulus;
        const std::size_t deg = modulus.size() - 1;
        using Raw = std::vector<std::uint32_t>;
        auto trim = [](Raw& c) {
            while (!c.empty() && c.back() == 0) c.pop_back();
        };
        auto reduce = [&](Raw& c) {
            while (c.size() >= modulus.size()) {
                std::uint32_t f = c.back();
                std::size_t shift = c.size() - modulus.size();
                for (std::size_t i = 0; i < modulus.size(); ++i)
                    c[i + shift] = (c[i + shift] + m - (f * modulus[i]) % m) % m;
                trim(c);
                if (c.empty()) break;
            }
            trim(c);
        };
        auto rmul = [&](const Raw& a, const Raw& b) {
            if (a.empty() || b.empty()) return Raw{};
            Raw c(a.size() + b.size() - 1, 0);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    c[i + j] = (c[i + j] + a[i] * b[j]) % m;
            reduce(c);
            return c;
        };
        std::vector<std::map<std::uint32_t, Raw>> pows(nvars_);
        auto rpow = [&](unsigned v, std::uint32_t e) -> const Raw& {
            auto it = pows[v].find(e);
            if (it != pows[v].end()) return it->second;
            Raw r{1}, b = args[v].poly;
            std::uint32_t k = e;
            while (k) {
                if (k & 1U) r = rmul(r, b);
                b = rmul(b, b);
                k >>= 1U;
            }
            return pows[v].emplace(e, std::move(r)).first->second;
        };
        Raw acc(deg, 0);
        for (const auto& [e, c] : terms_) {
            Raw t{static_cast<std::uint32_t>(mpz_fdiv_ui(c.get_mpz_t(), m))};
            trim(t);
            for (unsigned v = 0; v < nvars_ && !t.empty(); ++v)
                if (e[v] != 0) t = rmul(t, rpow(v, e[v]));
            for (std::size_t i = 0; i < t.size(); ++i) acc[i] = (acc[i] + t[i]) % m;
        }
        trim(acc);
        return mod_poly_from_raw(ring, std::move(acc));
    }
    // cache argument powers per variable
    std::vector<std::map<std::uint32_t, Elem>> powers(nvars_);
    auto arg_pow = [&](unsigned v, std::uint32_t e) -> const Elem& {
        auto it = powers[v].find(e);
        if (it != powers[v].end()) return it->second;
        Elem value = ring.pow(args[v], e);
        return powers[v].emplace(e, std::move(value)).first->second;
    };
    Elem acc = ring.zero();
    for (const auto& [e, c] : terms_) {
        Elem t = ring.from_int(c);
        for (unsigned v = 0; v < nvars_; ++v)
            if (e[v] != 0) t = ring.mul(t, arg_pow(v, e[v]));
        acc = ring.add(acc, t);
    }
    return acc;
}

bool IntPoly::homogeneous(const std::vector<long>& weights, long d) const {
    for (const auto& [e, c] : terms_) {
        long deg = 0;
        for (unsigned v = 0; v < nvars_; ++v) deg += weights[v] * static_cast<long>(e[v]);
        if (deg != d) return false;
    }
    return true;
}

std::string IntPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int a = c;
        if (!first) {
            os << (a < 0 ? "-" : "+");
            if (a < 0) a = -a;
        } else if (a < 0) {
            os << "-";
            a = -a;
        }
        first = false;
        bool printed = false;
        bool unit = (a == 1);
        if (!unit) {
            os << a.get_str();
            printed = true;
        }
        for (unsigned v = 0; v < nvars_; ++v) {
            if (e[v] == 0) continue;
            if (printed) os << "*";
            printed = true;
            os << names[v];
            if (e[v] > 1) os << "^" << e[v];
        }
        if (!printed) os << "1";
    }
    return os.str();
}

} // namespace wittlab
