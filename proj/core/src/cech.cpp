#include "wittlab/cech.hpp"

#include "wittlab/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wittlab {

namespace {

std::vector<Variable> make_vars(const std::string& prefix, unsigned n) {
    std::vector<Variable> out;
    for (unsigned i = 0; i < n; ++i) out.push_back({prefix + std::to_string(i), 0, {}});
    return out;
}

// powers of substitution images with memoization
struct PowCache {
    const Ring& R;
    const std::vector<Elem>& base;
    std::vector<std::map<std::int64_t, Elem>> memo;

    PowCache(const Ring& r, const std::vector<Elem>& b) : R(r), base(b), memo(b.size()) {}

    const Elem& get(std::size_t v, std::int64_t e) {
        auto it = memo[v].find(e);
        if (it != memo[v].end()) return it->second;
        Elem value = R.pow(base[v], static_cast<unsigned long>(e));
        return memo[v].emplace(e, std::move(value)).first->second;
    }
};

} // namespace

CechComplex::CechComplex(Int p, unsigned n_w, std::int64_t max_degree)
    : p_(std::move(p)), n_w_(n_w), max_degree_(max_degree) {
    pu_ = static_cast<unsigned>(mpz_get_ui(p_.get_mpz_t()));
    if (n_w_ < 1 || n_w_ > 3) raise(errc::cap_exceeded, "nerve supports witt levels 1..3");
    if (max_degree_ > static_cast<std::int64_t>(pu_ * pu_))
        raise(errc::cap_exceeded, "degree bound capped at p^2");
    build_rings();
}

void CechComplex::build_rings() {
    auto F = make_prime_field(p_);
    const unsigned n = n_w_;

    auto vars0 = make_vars("X", n);
    lvl_[0].ring = make_poly_quotient(F, p_, vars0);

    auto vars1 = make_vars("X", n);
    auto y = make_vars("Y", n);
    vars1.insert(vars1.end(), y.begin(), y.end());
    lvl_[1].ring = make_poly_quotient(F, p_, vars1);

    auto vars2 = make_vars("X", n);
    auto ya = make_vars("YA", n);
    auto yb = make_vars("YB", n);
    vars2.insert(vars2.end(), ya.begin(), ya.end());
    vars2.insert(vars2.end(), yb.begin(), yb.end());
    lvl_[2].ring = make_poly_quotient(F, p_, vars2);

    auto weight_of = [&](unsigned i) {
        long w = 1;
        for (unsigned t = 0; t < i; ++t) w *= static_cast<long>(pu_);
        return w;
    };
    for (unsigned lv = 0; lv < 3; ++lv) {
        const Ring& R = *lvl_[lv].ring;
        for (unsigned i = 0; i < n; ++i) {
            lvl_[lv].xvars.push_back(R.var_elem("X" + std::to_string(i)));
            lvl_[lv].weights.push_back(weight_of(i));
        }
        if (lv >= 1)
            for (unsigned j = 0; j < n; ++j) {
                lvl_[lv].y1vars.push_back(
                    R.var_elem((lv == 1 ? "Y" : "YA") + std::to_string(j)));
                lvl_[lv].weights.push_back(weight_of(j));
            }
        if (lv == 2)
            for (unsigned j = 0; j < n; ++j) {
                lvl_[lv].y2vars.push_back(R.var_elem("YB" + std::to_string(j)));
                lvl_[lv].weights.push_back(weight_of(j));
            }
    }

    // face-map substitution images through the Witt structural polynomials
    const auto& cache = witt_cache(p_, n);
    auto eval_pm = [&](const Ring& R, const std::vector<Elem>& args) {
        std::vector<Elem> out;
        for (unsigned i = 0; i < n; ++i) out.push_back(cache.p_mul[i].evaluate(R, args));
        return out;
    };
    auto eval_sum = [&](const Ring& R, const std::vector<Elem>& a, const std::vector<Elem>& b) {
        std::vector<Elem> args = a;
        args.insert(args.end(), b.begin(), b.end());
        std::vector<Elem> out;
        for (unsigned i = 0; i < n; ++i) out.push_back(cache.sum[i].evaluate(R, args));
        return out;
    };

    // level 1: (r + p m)_i with r = X, m = Y
    trans1_ = eval_sum(*lvl_[1].ring, lvl_[1].xvars, eval_pm(*lvl_[1].ring, lvl_[1].y1vars));
    // level 2: (m1 + m2)_j and (r + p m2)_i
    sum_y_ = eval_sum(*lvl_[2].ring, lvl_[2].y1vars, lvl_[2].y2vars);
    trans2_ = eval_sum(*lvl_[2].ring, lvl_[2].xvars, eval_pm(*lvl_[2].ring, lvl_[2].y2vars));
}

std::vector<ExpVec> CechComplex::enumerate_monomials(unsigned level, std::int64_t d) const {
    const auto& weights = lvl_[level].weights;
    std::vector<ExpVec> out;
    ExpVec cur(weights.size(), 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t v, std::int64_t left) {
        if (v == weights.size()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (std::int64_t e = 0; e * weights[v] <= left; ++e) {
            cur[v] = e;
            rec(v + 1, left - e * weights[v]);
        }
        cur[v] = 0;
    };
    rec(0, d);
    return out;
}

const std::vector<ExpVec>& CechComplex::basis(unsigned level, std::int64_t d) const {
    auto key = std::make_pair(level, d);
    auto it = basis_cache_.find(key);
    if (it == basis_cache_.end())
        it = basis_cache_.emplace(key, enumerate_monomials(level, d)).first;
    return it->second;
}

GFMatrix CechComplex::substitution_matrix(unsigned level_from, std::int64_t d,
                                          const std::vector<Elem>& images, unsigned level_to,
                                          bool subtract_identity) const {
    const auto& from_basis = basis(level_from, d);
    const auto& to_basis = basis(level_to, d);
    std::map<ExpVec, std::size_t> row_of;
    for (std::size_t r = 0; r < to_basis.size(); ++r) row_of[to_basis[r]] = r;

    const Ring& Rto = *lvl_[level_to].ring;
    PowCache pows(Rto, images);
    GFMatrix M(pu_, to_basis.size(), from_basis.size());
    for (std::size_t col = 0; col < from_basis.size(); ++col) {
        const ExpVec& m = from_basis[col];
        Elem img = Rto.one();
        for (std::size_t v = 0; v < m.size(); ++v)
            if (m[v] != 0) img = Rto.mul(img, pows.get(v, m[v]));
        if (subtract_identity) {
            // the identity-variable image of the same monomial (from-ring
            // variables sit first in the to-ring variable list)
            Elem id = Rto.one();
            for (std::size_t v = 0; v < m.size(); ++v) {
                const Elem& var =
                    v < n_w_ ? lvl_[level_to].xvars[v] : lvl_[level_to].y1vars[v - n_w_];
                if (m[v] != 0) id = Rto.mul(id, Rto.pow(var, static_cast<unsigned long>(m[v])));
            }
            img = Rto.sub(img, id);
        }
        for (const auto& [ev, c] : img.terms) {
            auto it = row_of.find(ev);
            if (it == row_of.end())
                raise(errc::inconsistent, "differential does not preserve the grading");
            M.set(it->second, col, mpz_get_si(c.z.get_mpz_t()));
        }
    }
    return M;
}

const GFMatrix& CechComplex::d0(std::int64_t d) const {
    auto it = d0_cache_.find(d);
    if (it != d0_cache_.end()) return it->second;
    GFMatrix M = substitution_matrix(0, d, trans1_, 1, true);
    return d0_cache_.emplace(d, std::move(M)).first->second;
}

const GFMatrix& CechComplex::d1(std::int64_t d) const {
    auto it = d1_cache_.find(d);
    if (it != d1_cache_.end()) return it->second;
    // face a: X -> X, Y -> YB;  face b: X -> X, Y -> (m1+m2);  face c: X -> (r+p m2), Y -> YA
    std::vector<Elem> face_a = lvl_[2].xvars, face_b = lvl_[2].xvars, face_c = trans2_;
    face_a.insert(face_a.end(), lvl_[2].y2vars.begin(), lvl_[2].y2vars.end());
    face_b.insert(face_b.end(), sum_y_.begin(), sum_y_.end());
    face_c.insert(face_c.end(), lvl_[2].y1vars.begin(), lvl_[2].y1vars.end());

    GFMatrix A = substitution_matrix(1, d, face_a, 2, false);
    GFMatrix B = substitution_matrix(1, d, face_b, 2, false);
    GFMatrix C = substitution_matrix(1, d, face_c, 2, false);
    GFMatrix M(pu_, A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            M.set(i, j,
                  static_cast<std::int64_t>(A.at(i, j)) - static_cast<std::int64_t>(B.at(i, j)) +
                      static_cast<std::int64_t>(C.at(i, j)));
    return d1_cache_.emplace(d, std::move(M)).first->second;
}

bool CechComplex::d_squared_zero(std::int64_t d) const { return d1(d).multiply(d0(d)).is_zero(); }

bool CechComplex::d_squared_zero_all() const {
    for (std::int64_t d = 0; d <= max_degree_; ++d)
        if (!d_squared_zero(d)) return false;
    return true;
}

CechComplex::Cohomology CechComplex::cohomology(std::int64_t d) const {
    Cohomology out;
    const GFMatrix& D0 = d0(d);
    const GFMatrix& D1 = d1(d);
    out.h0_basis = D0.kernel_basis();
    out.h0_dim = out.h0_basis.size();

    auto cocycles = D1.kernel_basis();
    // image of d0 as column vectors
    std::vector<std::vector<std::uint32_t>> image;
    for (std::size_t j = 0; j < D0.cols(); ++j) {
        std::vector<std::uint32_t> col(D0.rows(), 0);
        for (std::size_t i = 0; i < D0.rows(); ++i) col[i] = D0.at(i, j);
        image.push_back(std::move(col));
    }
    auto image_span = span_basis(image, pu_);
    std::size_t rank_im = image_span.size();
    out.h1_dim = cocycles.size() - rank_im;

    // pick representatives extending the image to the full cocycle space
    auto accumulated = image_span;
    for (const auto& z : cocycles) {
        auto grown = accumulated;
        grown.push_back(z);
        auto reduced = span_basis(std::move(grown), pu_);
        if (reduced.size() > accumulated.size()) {
            out.h1_reps.push_back(z);
            accumulated = std::move(reduced);
        }
    }
    return out;
}

bool CechComplex::h0_is_x0_line(std::int64_t d) const {
    auto coh = cohomology(d);
    if (coh.h0_dim != 1) return false;
    const auto& b = basis(0, d);
    // the kernel vector must be supported on X_0^d alone
    ExpVec x0(b[0].size(), 0);
    x0[0] = d;
    for (std::size_t i = 0; i < b.size(); ++i) {
        bool is_x0 = (b[i] == x0);
        if ((coh.h0_basis[0][i] != 0) != is_x0) return false;
    }
    return true;
}

bool CechComplex::is_coboundary(std::int64_t d, const std::vector<std::uint32_t>& cls) const {
    return d0(d).column_span_contains(cls);
}

const RingPtr& CechComplex::level_ring(unsigned level) const { return lvl_[level].ring; }

Elem CechComplex::to_elem(unsigned level, std::int64_t d,
                          const std::vector<std::uint32_t>& vec) const {
    const auto& b = basis(level, d);
    const Ring& R = *lvl_[level].ring;
    Elem acc = R.zero();
    const auto& data = lvl_[level];
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (vec[i] == 0) continue;
        Elem t = R.from_int(Int(static_cast<long>(vec[i])));
        for (std::size_t v = 0; v < b[i].size(); ++v) {
            if (b[i][v] == 0) continue;
            const Elem& var = v < n_w_ ? data.xvars[v]
                              : (level == 1 || v < 2 * n_w_) ? data.y1vars[v - n_w_]
                                                             : data.y2vars[v - 2 * n_w_];
            t = R.mul(t, R.pow(var, static_cast<unsigned long>(b[i][v])));
        }
        acc = R.add(acc, t);
    }
    return acc;
}

std::vector<std::uint32_t> CechComplex::multiply_h0(std::int64_t da,
                                                    const std::vector<std::uint32_t>& a,
                                                    std::int64_t db,
                                                    const std::vector<std::uint32_t>& b) const {
    const Ring& R = *lvl_[0].ring;
    Elem prod = R.mul(to_elem(0, da, a), to_elem(0, db, b));
    const auto& target = basis(0, da + db);
    std::map<ExpVec, std::size_t> idx;
    for (std::size_t i = 0; i < target.size(); ++i) idx[target[i]] = i;
    std::vector<std::uint32_t> out(target.size(), 0);
    for (const auto& [ev, c] : prod.terms)
        out[idx.at(ev)] = static_cast<std::uint32_t>(mpz_get_ui(c.z.get_mpz_t()));
    return out;
}

unsigned CechComplex::weight_of_class(unsigned level, std::int64_t d,
                                      const std::vector<std::uint32_t>& cls, const RingPtr& B,
                                      const std::vector<Elem>& u_coords, const Elem& zeta,
                                      unsigned frob_exp) const {
    if (level > 1) raise(errc::config_invalid, "weights computed on H^0 and H^1 classes");
    if (frob_exp != 0)
        raise(errc::config_invalid,
              "weights are defined for the unit part; Frobenius powers move the grading");
    if (B->kind() != RingKind::mod_poly && B->kind() != RingKind::prime_field)
        raise(errc::config_invalid, "coefficient extension must be a univariate quotient");
    if (!B->is_char_p(p_)) raise(errc::char_mismatch, "coefficient ring must have char p");
    const unsigned n = n_w_;
    auto bc = B->cardinality();
    if (!bc) raise(errc::ring_too_large, "coefficient ring must be finite");

    // B-coordinate dimension via the modulus degree (univariate quotients)
    std::size_t dim_b = 1;
    {
        Int q = *bc, pp = p_;
        dim_b = 0;
        while (q > 1) {
            q = exact_div(q, pp);
            ++dim_b;
        }
    }
    const bool scalar_b = (B->kind() == RingKind::prime_field);
    auto b_coords = [&](const Elem& e) {
        std::vector<std::uint32_t> out(dim_b, 0);
        if (scalar_b)
            out[0] = static_cast<std::uint32_t>(mpz_get_ui(e.z.get_mpz_t()));
        else
            for (std::size_t i = 0; i < e.poly.size(); ++i) out[i] = e.poly[i];
        return out;
    };

    // the level ring over B and the pullback images
    std::vector<Variable> vars = make_vars("X", n);
    if (level == 1) {
        auto y = make_vars("Y", n);
        vars.insert(vars.end(), y.begin(), y.end());
    }
    RingPtr RB = make_poly_quotient(B, p_, vars);
    std::vector<Elem> xv, yv;
    for (unsigned i = 0; i < n; ++i) xv.push_back(RB->var_elem("X" + std::to_string(i)));
    if (level == 1)
        for (unsigned j = 0; j < n; ++j) yv.push_back(RB->var_elem("Y" + std::to_string(j)));

    unsigned long pe = 1;
    for (unsigned t = 0; t < frob_exp; ++t) pe *= pu_;
    std::vector<Elem> images;
    for (unsigned i = 0; i < n; ++i) images.push_back(RB->pow(xv[i], pe));
    if (level == 1) {
        const auto& cache = witt_cache(p_, n);
        std::vector<Elem> args;
        for (const auto& u : u_coords) args.push_back(RB->embed_scalar(u));
        for (unsigned j = 0; j < n; ++j) args.push_back(RB->pow(yv[j], pe));
        for (unsigned j = 0; j < n; ++j) images.push_back(cache.product[j].evaluate(*RB, args));
    }

    // pullback of the class
    const auto& bas = basis(level, d);
    PowCache pows(*RB, images);
    Elem pulled = RB->zero();
    Elem cls_elem = RB->zero();
    for (std::size_t i = 0; i < bas.size(); ++i) {
        if (cls[i] == 0) continue;
        Elem img = RB->from_int(Int(static_cast<long>(cls[i])));
        Elem idm = img;
        for (std::size_t v = 0; v < bas[i].size(); ++v) {
            if (bas[i][v] == 0) continue;
            img = RB->mul(img, pows.get(v, bas[i][v]));
            const Elem& var = v < n ? xv[v] : yv[v - n];
            idm = RB->mul(idm, RB->pow(var, static_cast<unsigned long>(bas[i][v])));
        }
        pulled = RB->add(pulled, img);
        cls_elem = RB->add(cls_elem, idm);
    }

    // expand an RB element into F_p coordinates over (monomial) x (B-basis)
    std::map<ExpVec, std::size_t> idx;
    for (std::size_t i = 0; i < bas.size(); ++i) idx[bas[i]] = i;
    auto expand = [&](const Elem& e) {
        std::vector<std::uint32_t> out(bas.size() * dim_b, 0);
        for (const auto& [ev, c] : e.terms) {
            auto it = idx.find(ev);
            if (it == idx.end()) raise(errc::inconsistent, "pullback left the graded slice");
            auto coords = b_coords(c);
            for (std::size_t l = 0; l < dim_b; ++l) out[it->second * dim_b + l] = coords[l];
        }
        return out;
    };

    // coboundary span over B (level 1 only): d0 columns times B-basis powers
    std::vector<std::vector<std::uint32_t>> cobound;
    if (level == 1) {
        const GFMatrix& D0 = d0(d);
        for (std::size_t j = 0; j < D0.cols(); ++j)
            for (std::size_t l = 0; l < dim_b; ++l) {
                std::vector<std::uint32_t> v(bas.size() * dim_b, 0);
                for (std::size_t i = 0; i < D0.rows(); ++i)
                    if (D0.at(i, j)) v[i * dim_b + l] = D0.at(i, j);
                cobound.push_back(std::move(v));
            }
    }
    auto cobound_span = span_basis(cobound, pu_);

    std::optional<unsigned> found;
    // a trivial zeta cannot separate weights; only the w = 0 statement remains
    const unsigned w_range = (zeta == B->one()) ? 1 : pu_;
    for (unsigned w = 0; w < w_range; ++w) {
        Elem scaled = RB->mul(RB->embed_scalar(B->pow(zeta, w)), cls_elem);
        auto target = expand(RB->sub(pulled, scaled));
        bool ok;
        if (cobound_span.empty()) {
            ok = std::all_of(target.begin(), target.end(), [](std::uint32_t x) { return x == 0; });
        } else {
            ok = in_span(cobound_span, target, pu_);
        }
        if (ok) {
            if (found) raise(errc::not_eigenclass, "weight is not unique");
            found = w;
        }
    }
    if (!found) raise(errc::not_eigenclass, "class is not an eigenvector modulo coboundaries");
    return *found;
}

} // namespace wittlab
