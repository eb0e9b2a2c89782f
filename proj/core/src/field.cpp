#include "modsym/field.hpp"

#include <algorithm>

namespace modsym {

FieldElement to_field(const OrderElement& a) {
    RatVec v;
    v.reserve(a.coords.size());
    for (const auto& c : a.coords) v.emplace_back(c);
    return {std::move(v)};
}

OrderElement to_order(const FieldElement& a) {
    IntVec v;
    v.reserve(a.coords.size());
    for (const auto& c : a.coords) {
        if (!is_integer(c)) raise(Errc::DimensionMismatch, "element is not integral");
        v.push_back(c.get_num());
    }
    return {std::move(v)};
}

namespace {

/// Integer roots of a monic integer polynomial divide the constant term.
/// Trial division is capped; this is a cheap necessary condition, not a
/// factorization.
bool has_integer_root(const std::vector<Int>& poly) {
    Int c0 = poly.front();
    if (c0 == 0) return true;
    auto eval_at = [&](const Int& x) {
        Int acc(0);
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    Int a = ::abs(c0);
    std::vector<Int> divisors;
    Int limit = isqrt(a);
    Int trial(1);
    long steps = 0;
    while (trial <= limit && steps < 100000) {
        if (a % trial == 0) {
            divisors.push_back(trial);
            divisors.push_back(a / trial);
        }
        ++trial;
        ++steps;
    }
    divisors.push_back(a);
    for (const auto& dv : divisors) {
        if (eval_at(dv) == 0 || eval_at(-dv) == 0) return true;
    }
    return false;
}

} // namespace

NumberOrder NumberOrder::load(const OrderSpec& spec) {
    const size_t dp1 = spec.min_poly.size();
    if (dp1 < 2) raise(Errc::NotMonic, "minimal polynomial must have degree >= 1");
    if (spec.min_poly.back() != 1) raise(Errc::NotMonic, "minimal polynomial must be monic");
    const size_t d = dp1 - 1;

    RatVec pq;
    for (const auto& v : spec.min_poly) pq.emplace_back(v);
    RatPoly p{pq};
    if (!is_squarefree(p)) raise(Errc::NonSquarefreePoly, "minimal polynomial has repeated roots");
    if (d >= 2 && d <= 3 && has_integer_root(spec.min_poly))
        raise(Errc::ReduciblePoly, "minimal polynomial has a rational root");

    if (spec.basis.rows != d || spec.basis.cols != d)
        raise(Errc::SingularBasis, "basis must be a d x d matrix");
    for (size_t j = 0; j < d; ++j) {
        Rat expected = (j == 0) ? Rat(1) : Rat(0);
        if (spec.basis(0, j) != expected)
            raise(Errc::SingularBasis, "first basis element must be the constant 1");
    }
    if (det(spec.basis) == 0) raise(Errc::SingularBasis, "basis matrix is singular");

    NumberOrder ord;
    ord.spec_ = spec;
    ord.d_ = d;

    // structure constants: multiply basis rows as polynomials mod min_poly,
    // then re-express in the omega basis
    RatMatrix basis_t(d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) basis_t(i, j) = spec.basis(j, i);

    ord.c_.assign(d * d * d, Int(0));
    for (size_t j = 0; j < d; ++j) {
        RatVec rowj(spec.basis.a.begin() + static_cast<long>(j * d),
                    spec.basis.a.begin() + static_cast<long>((j + 1) * d));
        RatPoly pj{rowj};
        for (size_t k = j; k < d; ++k) {
            RatVec rowk(spec.basis.a.begin() + static_cast<long>(k * d),
                        spec.basis.a.begin() + static_cast<long>((k + 1) * d));
            RatPoly prod = poly_mod_monic(poly_mul(pj, RatPoly{rowk}), spec.min_poly);
            RatVec w(d, Rat(0));
            for (size_t m = 0; m < prod.c.size(); ++m) w[m] = prod.c[m];
            RatVec x = solve(basis_t, w);
            for (size_t l = 0; l < d; ++l) {
                if (!is_integer(x[l]))
                    raise(Errc::NotClosed, "basis span is not closed under multiplication");
                ord.c_[(j * d + k) * d + l] = x[l].get_num();
                ord.c_[(k * d + j) * d + l] = x[l].get_num();
            }
        }
    }

    // discriminant of the trace form
    RatMatrix tr_form(d, d);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            FieldElement wi{RatVec(d, Rat(0))}, wj{RatVec(d, Rat(0))};
            wi.coords[i] = 1;
            wj.coords[j] = 1;
            tr_form(i, j) = ord.trace(ord.mul(wi, wj));
        }
    }
    Rat disc = det(tr_form);
    if (disc == 0) raise(Errc::SingularBasis, "degenerate trace form");
    ord.disc_ = disc.get_num();

    ord.r_ = count_real_roots(p);
    if ((static_cast<int>(d) - ord.r_) % 2 != 0)
        raise(Errc::BadSignature, "real root count does not match degree parity");
    ord.s_ = (static_cast<int>(d) - ord.r_) / 2;
    return ord;
}

NumberOrder load_order(const OrderSpec& spec) { return NumberOrder::load(spec); }

FieldElement NumberOrder::one() const {
    RatVec v(d_, Rat(0));
    v[0] = 1;
    return {std::move(v)};
}

FieldElement NumberOrder::mul(const FieldElement& a, const FieldElement& b) const {
    if (a.coords.size() != d_ || b.coords.size() != d_)
        raise(Errc::DimensionMismatch, "element length does not match order degree");
    RatVec out(d_, Rat(0));
    for (size_t j = 0; j < d_; ++j) {
        if (a.coords[j] == 0) continue;
        for (size_t k = 0; k < d_; ++k) {
            if (b.coords[k] == 0) continue;
            Rat f = a.coords[j] * b.coords[k];
            for (size_t l = 0; l < d_; ++l) {
                const Int& s = struct_const(j, k, l);
                if (s != 0) out[l] += f * Rat(s);
            }
        }
    }
    return {std::move(out)};
}

OrderElement NumberOrder::mul(const OrderElement& a, const OrderElement& b) const {
    return to_order(mul(to_field(a), to_field(b)));
}

FieldElement NumberOrder::add(const FieldElement& a, const FieldElement& b) const {
    if (a.coords.size() != d_ || b.coords.size() != d_)
        raise(Errc::DimensionMismatch, "element length does not match order degree");
    RatVec out(d_);
    for (size_t i = 0; i < d_; ++i) out[i] = a.coords[i] + b.coords[i];
    return {std::move(out)};
}

FieldElement NumberOrder::scale(const Rat& q, const FieldElement& a) const {
    RatVec out(a.coords.size());
    for (size_t i = 0; i < a.coords.size(); ++i) out[i] = q * a.coords[i];
    return {std::move(out)};
}

RatMatrix NumberOrder::rep_rational(const FieldElement& q) const {
    if (q.coords.size() != d_) raise(Errc::DimensionMismatch, "element length does not match order degree");
    RatMatrix m(d_, d_);
    for (size_t j = 0; j < d_; ++j)
        for (size_t l = 0; l < d_; ++l) {
            Rat acc(0);
            for (size_t t = 0; t < d_; ++t) {
                const Int& s = struct_const(t, j, l);
                if (s != 0) acc += q.coords[t] * Rat(s);
            }
            m(l, j) = acc;
        }
    return m;
}

Rat NumberOrder::norm(const FieldElement& q) const { return det(rep_rational(q)); }

Rat NumberOrder::trace(const FieldElement& q) const {
    if (q.coords.size() != d_) raise(Errc::DimensionMismatch, "element length does not match order degree");
    Rat acc(0);
    for (size_t j = 0; j < d_; ++j)
        for (size_t t = 0; t < d_; ++t) {
            const Int& s = struct_const(t, j, j);
            if (s != 0) acc += q.coords[t] * Rat(s);
        }
    return acc;
}

Rat NumberOrder::norm_form_eval(const RatVec& lambda) const {
    if (lambda.size() != d_) raise(Errc::DimensionMismatch, "tuple length does not match order degree");
    return norm(FieldElement{lambda});
}

FieldElement NumberOrder::inverse(const FieldElement& q) const {
    RatVec e1(d_, Rat(0));
    e1[0] = 1;
    return {solve(rep_rational(q), e1)};
}

RatVec NumberOrder::power_coords(const FieldElement& q) const {
    RatVec w(d_, Rat(0));
    for (size_t j = 0; j < d_; ++j) {
        if (q.coords[j] == 0) continue;
        for (size_t m = 0; m < d_; ++m) w[m] += q.coords[j] * spec_.basis(j, m);
    }
    return w;
}

const RootEnclosures& NumberOrder::roots_at(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->by_precision.find(prec);
    if (it == cache_->by_precision.end()) {
        it = cache_->by_precision.emplace(prec, enclose_roots(spec_.min_poly, prec)).first;
    }
    return it->second;
}

EmbeddingPoint NumberOrder::embed(const FieldElement& q, mpfr_prec_t precision) const {
    if (precision < 32) raise(Errc::PrecisionUnavailable, "precision must be at least 32 bits");
    if (q.coords.size() != d_) raise(Errc::DimensionMismatch, "element length does not match order degree");
    const mpfr_prec_t work = precision + 32;
    const RootEnclosures& roots = roots_at(precision + 16);
    RatVec w = power_coords(q);

    EmbeddingPoint out;
    for (const auto& iv : roots.real_roots) {
        Interval x = Interval::from_endpoints(iv.first, iv.second, work);
        out.reals.push_back(eval_interval(w, x, work));
    }
    for (const auto& disk : roots.complex_roots) {
        Rat rad_hi = disk.radius2 == 0 ? Rat(0) : Interval::from_rat(disk.radius2, 64).sqrt().hi_rat();
        ComplexInterval z{
            Interval::from_endpoints(disk.center.re - rad_hi, disk.center.re + rad_hi, work),
            Interval::from_endpoints(disk.center.im - rad_hi, disk.center.im + rad_hi, work)};
        out.complexes.push_back(eval_interval(w, z, work));
    }
    return out;
}

std::vector<std::vector<Interval>> NumberOrder::embedding_matrix(mpfr_prec_t precision) const {
    std::vector<std::vector<Interval>> m(d_, std::vector<Interval>(d_, Interval(precision)));
    for (size_t j = 0; j < d_; ++j) {
        FieldElement wj{RatVec(d_, Rat(0))};
        wj.coords[j] = 1;
        EmbeddingPoint pt = embed(wj, precision);
        size_t row = 0;
        for (const auto& re : pt.reals) m[row++][j] = re;
        for (const auto& z : pt.complexes) {
            m[row++][j] = z.re;
            m[row++][j] = z.im;
        }
    }
    return m;
}

} // namespace modsym
