#include "modsym/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace modsym {

Interval PiPower::eval(mpfr_prec_t prec) const {
    Interval v = Interval::from_rat(coeff, prec);
    if (pi_exp > 0) return v * Interval::pi(prec).pow(static_cast<unsigned long>(pi_exp));
    if (pi_exp < 0) return v / Interval::pi(prec).pow(static_cast<unsigned long>(-pi_exp));
    return v;
}

PiPower minkowski_constant(size_t d, int s) {
    if (d < 1 || s < 0 || 2 * static_cast<size_t>(s) > d)
        raise(Errc::BadSignature, "need d >= 1 and 0 <= 2s <= d");
    Int dd = pow_int(Int(static_cast<long>(d)), static_cast<unsigned long>(d));
    Int fact(1);
    for (size_t k = 2; k <= d; ++k) fact *= static_cast<long>(k);
    Int four_s = pow_int(Int(4), static_cast<unsigned long>(s));
    return {make_rat(dd, fact * four_s), s};
}

Interval BoundReport::ratio_interval(mpfr_prec_t prec) const {
    Interval v = Interval::from_rat(ratio_coeff, prec);
    Int dn = pow_int(abs_disc, static_cast<unsigned long>(n));
    v = v * Interval::from_int(dn, prec).sqrt();
    if (ratio_pi_exp > 0) v = v * Interval::pi(prec).pow(static_cast<unsigned long>(ratio_pi_exp));
    if (ratio_pi_exp < 0) v = v / Interval::pi(prec).pow(static_cast<unsigned long>(-ratio_pi_exp));
    return v;
}

BoundReport spanning_bound(const NumberOrder& order, size_t n, mpfr_prec_t max_prec) {
    if (n < 1) raise(Errc::BadSignature, "spanning bound needs n >= 1");
    const size_t d = order.degree();
    const int s = order.complex_pair_count();

    BoundReport rep;
    rep.mink_const = minkowski_constant(d, s);
    rep.n = n;
    rep.abs_disc = ::abs(order.discriminant());
    rep.ratio_coeff = pow_rat(Rat(1) / rep.mink_const.coeff, static_cast<unsigned long>(n));
    rep.ratio_pi_exp = -s * static_cast<int>(n);

    if (s == 0) {
        // ratio = (a/b) sqrt(|D|^n); floor computed by exact integer sqrt
        const Int& a = rep.ratio_coeff.get_num();
        const Int& b = rep.ratio_coeff.get_den();
        Int N = a * a * pow_int(rep.abs_disc, static_cast<unsigned long>(n));
        Int c = isqrt(N);
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), c.get_mpz_t(), b.get_mpz_t());
        rep.c_min = q;
        rep.ratio_is_integer = (c * c == N) && (c % b == 0);
        return rep;
    }

    for (mpfr_prec_t prec = 64; prec <= max_prec; prec *= 2) {
        auto fl = rep.ratio_interval(prec).certified_floor();
        if (fl) {
            rep.c_min = *fl;
            return rep;
        }
    }
    raise(Errc::FloorUndecidable, "bound enclosure straddles an integer at maximum precision");
}

std::vector<std::vector<Interval>> mu_matrix(const NumberOrder& order, mpfr_prec_t precision) {
    return order.embedding_matrix(precision);
}

Interval interval_det(const std::vector<std::vector<Interval>>& m, mpfr_prec_t prec) {
    const size_t n = m.size();
    if (n == 0) return Interval::exact(1, prec);
    if (n == 1) return m[0][0];
    Interval acc(prec);
    int sign = 1;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Interval>> minor;
        minor.reserve(n - 1);
        for (size_t i = 1; i < n; ++i) {
            std::vector<Interval> row;
            row.reserve(n - 1);
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Interval term = m[0][j] * interval_det(minor, prec);
        acc = (sign > 0) ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}

Octahedron octahedron_for_signature(int r, int s, std::optional<std::pair<RatVec, RatVec>> p) {
    if (r < 0 || s < 0 || r + 2 * s < 1) raise(Errc::BadSignature, "invalid signature");
    Octahedron o;
    o.r = r;
    o.s = s;
    if (p) {
        o.p_x = p->first;
        o.p_rho = p->second;
    } else {
        o.p_x.assign(static_cast<size_t>(r), Rat(1));
        o.p_rho.assign(static_cast<size_t>(s), Rat(1));
    }
    if (o.p_x.size() != static_cast<size_t>(r) || o.p_rho.size() != static_cast<size_t>(s))
        raise(Errc::PointOffSurface, "tangency point has wrong shape");
    Rat prod(1);
    for (const auto& v : o.p_x) {
        if (v <= 0) raise(Errc::PointOffSurface, "tangency coordinates must be positive");
        prod *= v;
    }
    for (const auto& v : o.p_rho) {
        if (v <= 0) raise(Errc::PointOffSurface, "tangency radii must be positive");
        prod *= v * v;
    }
    if (prod != 1) raise(Errc::PointOffSurface, "tangency point is not on the norm-one surface");
    return o;
}

Octahedron octahedron(const NumberOrder& order, std::optional<std::pair<RatVec, RatVec>> p) {
    return octahedron_for_signature(order.real_count(), order.complex_pair_count(), std::move(p));
}

PiPower octahedron_volume(const Octahedron& o) {
    const size_t d = o.ambient_dim();
    PiPower mk = minkowski_constant(d, o.s);
    mk.coeff *= pow_int(Int(2), static_cast<unsigned long>(o.r + o.s));
    return mk;
}

bool Octahedron::contains_vplus(const RatVec& x, const RatVec& rho) const {
    if (x.size() != static_cast<size_t>(r) || rho.size() != static_cast<size_t>(s))
        raise(Errc::DimensionMismatch, "V+ point has wrong shape");
    Rat acc(0);
    for (size_t i = 0; i < x.size(); ++i) acc += ::abs(x[i]) / p_x[i];
    for (size_t j = 0; j < rho.size(); ++j) {
        if (rho[j] < 0) raise(Errc::DimensionMismatch, "radii must be nonnegative");
        acc += 2 * rho[j] / p_rho[j];
    }
    return acc <= Rat(static_cast<long>(ambient_dim()));
}

bool Octahedron::contains_point(const std::vector<double>& coords) const {
    if (coords.size() != ambient_dim()) raise(Errc::DimensionMismatch, "point has wrong dimension");
    double acc = 0;
    size_t idx = 0;
    for (int i = 0; i < r; ++i) acc += std::fabs(coords[idx++]) / p_x[static_cast<size_t>(i)].get_d();
    for (int j = 0; j < s; ++j) {
        double re = coords[idx++], im = coords[idx++];
        acc += 2.0 * std::hypot(re, im) / p_rho[static_cast<size_t>(j)].get_d();
    }
    return acc <= static_cast<double>(ambient_dim());
}

double Octahedron::circumradius() const {
    const double d = static_cast<double>(ambient_dim());
    double m = 0;
    for (const auto& v : p_x) m = std::max(m, v.get_d());
    for (const auto& v : p_rho) m = std::max(m, v.get_d() / 2.0);
    return d * m;
}

std::vector<double> Octahedron::box_halfwidths() const {
    const double d = static_cast<double>(ambient_dim());
    std::vector<double> hw;
    for (const auto& v : p_x) hw.push_back(d * v.get_d());
    for (const auto& v : p_rho) {
        hw.push_back(d * v.get_d() / 2.0);
        hw.push_back(d * v.get_d() / 2.0);
    }
    return hw;
}

double octahedron_mc_volume(const Octahedron& o, size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto hw = o.box_halfwidths();
    double box_vol = 1.0;
    for (double h : hw) box_vol *= 2.0 * h;

    size_t hits = 0;
    std::vector<double> pt(hw.size());
    for (size_t k = 0; k < samples; ++k) {
        for (size_t i = 0; i < hw.size(); ++i) pt[i] = unit(rng) * hw[i];
        if (o.contains_point(pt)) ++hits;
    }
    return box_vol * static_cast<double>(hits) / static_cast<double>(samples);
}

bool region_T_contains(const NumberOrder& order, const RatVec& y) {
    Rat nm = order.norm_form_eval(y);
    return ::abs(nm) <= 1;
}

RegionSWitness region_S_contains(const NumberOrder& order, const SymbolMatrix& m,
                                 const std::vector<OrderElement>& x) {
    if (m.norm() == 0) raise(Errc::SingularMatrix, "region S needs a nonsingular matrix");
    if (x.size() != m.dim()) raise(Errc::DimensionMismatch, "point length must equal n");

    std::vector<std::vector<FieldElement>> cols;
    for (const auto& col : m.columns()) {
        std::vector<FieldElement> fcol;
        for (const auto& e : col) fcol.push_back(to_field(e));
        cols.push_back(std::move(fcol));
    }
    std::vector<FieldElement> rhs;
    for (const auto& e : x) rhs.push_back(to_field(e));

    RegionSWitness w;
    w.q = solve_over_field(order, cols, rhs);
    w.inside = true;
    for (const auto& qi : w.q) {
        Rat nm = ::abs(order.norm(qi));
        if (!(nm < 1)) {
            w.inside = false;
            break;
        }
    }
    return w;
}

VolPReport vol_P(const NumberOrder& order, const SymbolMatrix& m, mpfr_prec_t prec) {
    if (m.norm() == 0) raise(Errc::SingularMatrix, "vol P needs a nonsingular matrix");
    const size_t n = m.dim();
    const size_t d = order.degree();
    BoundReport bound = spanning_bound(order, n);

    VolPReport rep;
    rep.exceeds_2nd = m.norm() > bound.c_min;
    // vol P = |m| (2^d M_K / sqrt|D|)^n
    PiPower mk = minkowski_constant(d, order.complex_pair_count());
    Rat factor = pow_rat(mk.coeff * Rat(pow_int(Int(2), static_cast<unsigned long>(d))),
                         static_cast<unsigned long>(n));
    Interval v = Interval::from_rat(factor, prec);
    if (mk.pi_exp != 0)
        v = v * Interval::pi(prec).pow(static_cast<unsigned long>(mk.pi_exp * static_cast<int>(n)));
    Int dn = pow_int(bound.abs_disc, static_cast<unsigned long>(n));
    v = v / Interval::from_int(dn, prec).sqrt();
    rep.volume = Interval::from_int(m.norm(), prec) * v;
    return rep;
}

} // namespace modsym
