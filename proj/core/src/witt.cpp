#include "wittlab/witt.hpp"

#include "wittlab/error.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace wittlab {

namespace {

// w_i over nvars variables starting at offset
IntPoly ghost_poly(unsigned nvars, unsigned offset, unsigned i, const Int& p) {
    IntPoly w(nvars);
    for (unsigned j = 0; j <= i; ++j) {
        unsigned long e = 1;
        Int pj = 1;
        for (unsigned t = 0; t < i - j; ++t) e *= mpz_get_ui(p.get_mpz_t());
        for (unsigned t = 0; t < j; ++t) pj *= p;
        w = w + IntPoly::variable(nvars, offset + j).pow(e).scaled(pj);
    }
    return w;
}

WittCache build_cache(const Int& p, unsigned n) {
    if (n < 1 || n > kMaxWittLevel) raise(errc::cap_exceeded, "witt level must be in [1, 6]");
    if (!is_prime(p) || p > kMaxWittPrime) raise(errc::cap_exceeded, "witt prime must be <= 7");

    WittCache c;
    c.p = p;
    c.n = n;
    const unsigned two_n = 2 * n;
    auto pu = mpz_get_ui(p.get_mpz_t());

    std::vector<long> weights2(two_n), weights1(n);
    for (unsigned j = 0; j < n; ++j) {
        long w = 1;
        for (unsigned t = 0; t < j; ++t) w *= static_cast<long>(pu);
        weights1[j] = w;
        weights2[j] = w;
        weights2[n + j] = w;
    }

    // recursive ghost solve: E_i minus lower structural contributions, / p^i
    auto derive = [&](unsigned nvars, const std::vector<IntPoly>& targets) {
        std::vector<IntPoly> out;
        for (unsigned i = 0; i < targets.size(); ++i) {
            IntPoly e = targets[i];
            Int pj = 1;
            for (unsigned j = 0; j < i; ++j) {
                unsigned long exp = 1;
                for (unsigned t = 0; t < i - j; ++t) exp *= pu;
                e = e - out[j].pow(exp).scaled(pj);
                pj *= p;
            }
            out.push_back(e.exact_div_p_power(p, i));
        }
        return out;
    };

    std::vector<IntPoly> sum_targets, prod_targets, neg_targets, frob_targets;
    for (unsigned i = 0; i < n; ++i) {
        IntPoly wx = ghost_poly(two_n, 0, i, p);
        IntPoly wy = ghost_poly(two_n, n, i, p);
        sum_targets.push_back(wx + wy);
        prod_targets.push_back(wx * wy);
        neg_targets.push_back(-ghost_poly(n, 0, i, p));
        c.ghost.push_back(ghost_poly(n, 0, i, p));
    }
    for (unsigned i = 0; i + 1 < n; ++i) frob_targets.push_back(ghost_poly(n, 0, i + 1, p));

    c.sum = derive(two_n, sum_targets);
    c.product = derive(two_n, prod_targets);
    c.negation = derive(n, neg_targets);
    c.frob = derive(n, frob_targets);

    // p * X by (p-1)-fold composition of the sum polynomials
    std::vector<IntPoly> acc, xvars;
    for (unsigned j = 0; j < n; ++j) {
        acc.push_back(IntPoly::variable(n, j));
        xvars.push_back(IntPoly::variable(n, j));
    }
    for (unsigned long k = 1; k < pu; ++k) {
        std::vector<IntPoly> args;
        args.insert(args.end(), acc.begin(), acc.end());
        args.insert(args.end(), xvars.begin(), xvars.end());
        std::vector<IntPoly> next;
        for (unsigned i = 0; i < n; ++i) next.push_back(c.sum[i].compose(args));
        acc = std::move(next);
    }
    c.p_mul = std::move(acc);

    // homogeneity invariants of the structural polynomials
    for (unsigned i = 0; i < n; ++i) {
        long d = weights1[i];
        if (!c.sum[i].homogeneous(weights2, d))
            raise(errc::inconsistent, "S_i not homogeneous");
        if (!c.negation[i].homogeneous(weights1, d))
            raise(errc::inconsistent, "I_i not homogeneous");
        if (!c.p_mul[i].homogeneous(weights1, d))
            raise(errc::inconsistent, "(pX)_i not homogeneous");
        // bigraded check for the product: substitute Y -> 1 kills no X-degree
        for (const auto& [e, coeff] : c.product[i].terms()) {
            long dx = 0, dy = 0;
            for (unsigned j = 0; j < n; ++j) {
                dx += weights1[j] * static_cast<long>(e[j]);
                dy += weights1[j] * static_cast<long>(e[n + j]);
            }
            if (dx != d || dy != d) raise(errc::inconsistent, "P_i not bihomogeneous");
        }
    }
    for (unsigned i = 0; i + 1 < n; ++i)
        if (!c.frob[i].homogeneous(weights1, weights1[i + 1]))
            raise(errc::inconsistent, "F_i not homogeneous");

    return c;
}

} // namespace

const WittCache& witt_cache(const Int& p, unsigned n) {
    static std::mutex mu;
    static std::map<std::pair<long, unsigned>, std::unique_ptr<WittCache>> cache;
    std::scoped_lock lock(mu);
    auto key = std::make_pair(mpz_get_si(p.get_mpz_t()), n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<WittCache>(build_cache(p, n))).first;
    return *it->second;
}

// ---------------------------------------------------------------------------

WittVector::WittVector(WittCtxPtr ctx, std::vector<Elem> coords)
    : ctx_(std::move(ctx)), coords_(std::move(coords)) {
    if (coords_.empty()) raise(errc::level_too_small, "witt vector needs level >= 1");
    for (const auto& c : coords_)
        if (!c.owner() || !c.owner()->same_ring(*ctx_->ring()))
            raise(errc::mixed_rings, "witt coordinates must share the context ring");
}

bool WittVector::operator==(const WittVector& other) const {
    if (!ctx_ || !other.ctx_) return !ctx_ && !other.ctx_;
    if (!ctx_->same(*other.ctx_)) return false;
    return coords_ == other.coords_;
}

std::string WittVector::str() const {
    std::ostringstream os;
    os << "(";
    for (unsigned i = 0; i < level(); ++i) {
        if (i) os << ", ";
        os << ctx_->ring()->to_string(coords_[i]);
    }
    os << ")";
    return os.str();
}

nlohmann::json WittVector::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : coords_) arr.push_back(elem_to_json(c));
    return arr;
}

WittCtxPtr WittContext::make(RingPtr ring, Int p) {
    if (!is_prime(p) || p > kMaxWittPrime) raise(errc::cap_exceeded, "witt prime must be <= 7");
    return WittCtxPtr(new WittContext(std::move(ring), std::move(p)));
}

bool WittContext::same(const WittContext& other) const {
    return p_ == other.p_ && ring_->same_ring(*other.ring_);
}

WittVector WittContext::zero(unsigned n) const {
    return WittVector(shared_from_this(), std::vector<Elem>(n, ring_->zero()));
}

WittVector WittContext::one(unsigned n) const {
    std::vector<Elem> c(n, ring_->zero());
    c[0] = ring_->one();
    return WittVector(shared_from_this(), std::move(c));
}

WittVector WittContext::from_coords(std::vector<Elem> coords) const {
    return WittVector(shared_from_this(), std::move(coords));
}

WittVector WittContext::teichmuller(const Elem& a, unsigned n) const {
    std::vector<Elem> c(n, ring_->zero());
    c[0] = a;
    return WittVector(shared_from_this(), std::move(c));
}

WittVector WittContext::from_int(const Int& k, unsigned n) const {
    bool negative = k < 0;
    Int m = negative ? Int(-k) : k;
    WittVector acc = zero(n);
    WittVector base = one(n);
    while (m != 0) {
        if (mpz_odd_p(m.get_mpz_t())) acc = witt_add(acc, base);
        m >>= 1;
        if (m != 0) base = witt_add(base, base);
    }
    return negative ? witt_neg(acc) : acc;
}

WittVector WittContext::random(std::mt19937_64& rng, unsigned n) const {
    std::vector<Elem> c;
    c.reserve(n);
    for (unsigned i = 0; i < n; ++i) c.push_back(ring_->random(rng));
    return WittVector(shared_from_this(), std::move(c));
}

std::optional<Int> WittContext::space_size(unsigned n) const {
    auto card = ring_->cardinality();
    if (!card) return std::nullopt;
    Int s;
    mpz_pow_ui(s.get_mpz_t(), card->get_mpz_t(), n);
    return s;
}

WittVector WittContext::vector_at(const Int& idx, unsigned n) const {
    auto card = ring_->cardinality();
    if (!card) raise(errc::ring_too_large, "base ring is not enumerable");
    Int v = idx;
    std::vector<Elem> c;
    c.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        Int digit;
        mpz_fdiv_qr(v.get_mpz_t(), digit.get_mpz_t(), v.get_mpz_t(), card->get_mpz_t());
        c.push_back(ring_->element_at(digit));
    }
    return WittVector(shared_from_this(), std::move(c));
}

WittVector WittContext::from_json(const nlohmann::json& arr) const {
    if (!arr.is_array() || arr.empty()) raise(errc::parse_error, "expected a JSON array");
    std::vector<Elem> c;
    for (const auto& v : arr) {
        if (v.is_number_integer())
            c.push_back(ring_->from_int(Int(v.get<long>())));
        else if (v.is_string())
            c.push_back(ring_->parse(v.get<std::string>()));
        else
            raise(errc::parse_error, "coordinates must be integers or strings");
    }
    return WittVector(shared_from_this(), std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

void check_pair(const WittVector& x, const WittVector& y) {
    if (!x.ctx()->same(*y.ctx())) raise(errc::mixed_rings, "witt vectors over different rings");
    if (x.level() != y.level()) raise(errc::level_mismatch, "witt vectors of different level");
}

std::vector<Elem> joint_args(const WittVector& x, const WittVector& y) {
    std::vector<Elem> args;
    args.reserve(2 * x.level());
    args.insert(args.end(), x.coords().begin(), x.coords().end());
    args.insert(args.end(), y.coords().begin(), y.coords().end());
    return args;
}

} // namespace

WittVector witt_add(const WittVector& x, const WittVector& y) {
    check_pair(x, y);
    const auto& cache = witt_cache(x.ctx()->p(), x.level());
    const Ring& R = *x.ctx()->ring();
    auto args = joint_args(x, y);
    std::vector<Elem> c;
    c.reserve(x.level());
    for (unsigned i = 0; i < x.level(); ++i) c.push_back(cache.sum[i].evaluate(R, args));
    return x.ctx()->from_coords(std::move(c));
}

WittVector witt_mul(const WittVector& x, const WittVector& y) {
    check_pair(x, y);
    const auto& cache = witt_cache(x.ctx()->p(), x.level());
    const Ring& R = *x.ctx()->ring();
    auto args = joint_args(x, y);
    std::vector<Elem> c;
    c.reserve(x.level());
    for (unsigned i = 0; i < x.level(); ++i) c.push_back(cache.product[i].evaluate(R, args));
    return x.ctx()->from_coords(std::move(c));
}

WittVector witt_neg(const WittVector& x) {
    const auto& cache = witt_cache(x.ctx()->p(), x.level());
    const Ring& R = *x.ctx()->ring();
    std::vector<Elem> c;
    c.reserve(x.level());
    for (unsigned i = 0; i < x.level(); ++i) c.push_back(cache.negation[i].evaluate(R, x.coords()));
    return x.ctx()->from_coords(std::move(c));
}

WittVector witt_sub(const WittVector& x, const WittVector& y) { return witt_add(x, witt_neg(y)); }

WittVector mul_p(const WittVector& x) {
    const auto& cache = witt_cache(x.ctx()->p(), x.level());
    const Ring& R = *x.ctx()->ring();
    std::vector<Elem> c;
    c.reserve(x.level());
    for (unsigned i = 0; i < x.level(); ++i) c.push_back(cache.p_mul[i].evaluate(R, x.coords()));
    return x.ctx()->from_coords(std::move(c));
}

WittVector frobenius(const WittVector& x) {
    if (x.level() < 2) raise(errc::level_too_small, "frobenius drops a level; need n >= 2");
    const auto& cache = witt_cache(x.ctx()->p(), x.level());
    const Ring& R = *x.ctx()->ring();
    std::vector<Elem> c;
    c.reserve(x.level() - 1);
    for (unsigned i = 0; i + 1 < x.level(); ++i) c.push_back(cache.frob[i].evaluate(R, x.coords()));
    return x.ctx()->from_coords(std::move(c));
}

WittVector frobenius_char_p(const WittVector& x) {
    if (!x.ctx()->char_p())
        raise(errc::char_mismatch, "same-level frobenius needs a char-p base");
    const Ring& R = *x.ctx()->ring();
    std::vector<Elem> c;
    c.reserve(x.level());
    for (const auto& a : x.coords()) c.push_back(R.pow(a, x.ctx()->p_ui()));
    return x.ctx()->from_coords(std::move(c));
}

WittVector verschiebung(const WittVector& x) {
    std::vector<Elem> c;
    c.reserve(x.level());
    c.push_back(x.ctx()->ring()->zero());
    for (unsigned i = 0; i + 1 < x.level(); ++i) c.push_back(x.coord(i));
    return x.ctx()->from_coords(std::move(c));
}

WittVector verschiebung_raise(const WittVector& x) {
    std::vector<Elem> c;
    c.reserve(x.level() + 1);
    c.push_back(x.ctx()->ring()->zero());
    for (unsigned i = 0; i < x.level(); ++i) c.push_back(x.coord(i));
    return x.ctx()->from_coords(std::move(c));
}

WittVector truncate(const WittVector& x, unsigned m) {
    if (m < 1 || m > x.level()) raise(errc::level_mismatch, "bad truncation level");
    std::vector<Elem> c(x.coords().begin(), x.coords().begin() + m);
    return x.ctx()->from_coords(std::move(c));
}

std::vector<Elem> ghost(const WittVector& x) {
    const auto& cache = witt_cache(x.ctx()->p(), x.level());
    const Ring& R = *x.ctx()->ring();
    std::vector<Elem> g;
    g.reserve(x.level());
    for (unsigned i = 0; i < x.level(); ++i) g.push_back(cache.ghost[i].evaluate(R, x.coords()));
    return g;
}

WittVector ghost_solve(const WittCtxPtr& ctx, const std::vector<Elem>& ghosts) {
    if (ctx->ring()->kind() != RingKind::integers)
        raise(errc::char_mismatch, "ghost solving needs the p-torsion-free base Z");
    const Int& p = ctx->p();
    auto pu = mpz_get_ui(p.get_mpz_t());
    std::vector<Elem> z;
    for (unsigned i = 0; i < ghosts.size(); ++i) {
        // z_i = (g_i - sum_{j<i} p^j z_j^{p^{i-j}}) / p^i
        Int acc = ghosts[i].z;
        Int pj = 1;
        for (unsigned j = 0; j < i; ++j) {
            unsigned long e = 1;
            for (unsigned t = 0; t < i - j; ++t) e *= pu;
            acc -= pj * pow_int(z[j].z, e);
            pj *= p;
        }
        z.push_back(ctx->ring()->from_int(exact_div_p_power(acc, p, i)));
    }
    return ctx->from_coords(std::move(z));
}

} // namespace wittlab
