#pragma once

#include <utility>
#include <vector>

#include "modsym/interval.hpp"
#include "modsym/numbers.hpp"

namespace modsym {

/// Dense univariate polynomial over Q, coefficient c[k] on t^k.
struct RatPoly {
    RatVec c;

    RatPoly() = default;
    explicit RatPoly(RatVec coeffs) : c(std::move(coeffs)) { normalize(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Rat& leading() const { return c.back(); }
    void normalize();

    Rat eval(const Rat& x) const;
    RatPoly derivative() const;
};

RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
/// Euclidean remainder of a by b over Q; b must be nonzero.
RatPoly poly_rem(const RatPoly& a, const RatPoly& b);
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);

/// Remainder of a modulo the monic integer polynomial p, coefficients in Q.
RatPoly poly_mod_monic(const RatPoly& a, const std::vector<Int>& monic);

bool is_squarefree(const RatPoly& p);

/// Number of distinct real roots of a squarefree polynomial.
int count_real_roots(const RatPoly& p);

/// Disjoint rational intervals [a,b], ascending, one simple real root each.
/// Exact rational roots come out as degenerate intervals [x,x].
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const RatPoly& p);

/// Shrinks an isolating interval until b - a <= max_width.
void refine_real_root(const RatPoly& p, std::pair<Rat, Rat>& iv, const Rat& max_width);

/// Complex arithmetic over exact rationals; used by the certified Newton
/// refinement of nonreal roots.
struct QComplex {
    Rat re;
    Rat im;

    QComplex operator+(const QComplex& o) const { return {re + o.re, im + o.im}; }
    QComplex operator-(const QComplex& o) const { return {re - o.re, im - o.im}; }
    QComplex operator*(const QComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QComplex operator/(const QComplex& o) const {
        Rat n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    Rat norm2() const { return re * re + im * im; }
};

/// A disk certified to contain exactly one nonreal root with Im > 0.
struct RootDisk {
    QComplex center;
    Rat radius2;  ///< upper bound on the squared enclosure radius
};

/// Certified enclosures of all roots of a squarefree monic integer polynomial:
/// the real roots as exact isolating intervals (ascending) and one
/// representative per complex-conjugate pair (disks in the upper half plane,
/// sorted by real part, ties by imaginary part).
struct RootEnclosures {
    std::vector<std::pair<Rat, Rat>> real_roots;
    std::vector<RootDisk> complex_roots;
};

/// Root widths are driven below 2^-(prec+2); throws PrecisionUnavailable if
/// certification fails to converge.
RootEnclosures enclose_roots(const std::vector<Int>& monic, mpfr_prec_t prec);

/// Interval Horner evaluation of a rational-coefficient polynomial.
Interval eval_interval(const RatVec& coeffs, const Interval& x, mpfr_prec_t prec);
ComplexInterval eval_interval(const RatVec& coeffs, const ComplexInterval& z, mpfr_prec_t prec);

} // namespace modsym
