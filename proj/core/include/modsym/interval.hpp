#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "modsym/numbers.hpp"

namespace modsym {

/// Outward-rounded real interval backed by MPFR endpoints.
///
/// All accept/reject decisions in the library are made either on exact
/// rationals or through these enclosures; an Interval never lies, it only
/// gets wide. The precision is per-object and sticky: binary operations
/// compute at the larger of the two operand precisions.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(Interval other);
    ~Interval();

    static Interval exact(long v, mpfr_prec_t prec = 64);
    static Interval from_int(const Int& v, mpfr_prec_t prec);
    static Interval from_rat(const Rat& v, mpfr_prec_t prec);
    /// [lo, hi] with outward rounding of the rational endpoints.
    static Interval from_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec);
    static Interval pi(mpfr_prec_t prec);

    Interval operator+(const Interval& rhs) const;
    Interval operator-(const Interval& rhs) const;
    Interval operator*(const Interval& rhs) const;
    /// Requires rhs to be bounded away from zero.
    Interval operator/(const Interval& rhs) const;
    Interval operator-() const;

    Interval sqrt() const;   ///< requires hi >= 0; lo is clamped to 0 if slightly negative
    Interval abs() const;
    Interval pow(unsigned long e) const;

    bool contains_zero() const;
    bool contains(const Rat& q) const;
    /// -1 if hi < 0, +1 if lo > 0, 0 if the interval straddles or touches zero.
    int sign() const;
    /// True when this interval lies strictly below rhs.
    bool definitely_less(const Interval& rhs) const;

    /// The unique integer k with k <= lo <= hi < k+1, if the enclosure pins one.
    std::optional<Int> certified_floor() const;

    double lo_double() const;  ///< rounded down
    double hi_double() const;  ///< rounded up
    double mid_double() const;
    Rat lo_rat() const;        ///< exact value of the lower endpoint
    Rat hi_rat() const;
    double width() const;

    mpfr_prec_t precision() const { return prec_; }
    std::string str(size_t digits = 8) const;

private:
    friend void swap(Interval& a, Interval& b) noexcept;
    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

void swap(Interval& a, Interval& b) noexcept;

/// Rectangular complex enclosure.
struct ComplexInterval {
    Interval re;
    Interval im;

    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    ComplexInterval operator+(const ComplexInterval& rhs) const {
        return {re + rhs.re, im + rhs.im};
    }
    ComplexInterval operator*(const ComplexInterval& rhs) const {
        return {re * rhs.re - im * rhs.im, re * rhs.im + im * rhs.re};
    }
    /// |z|^2 as an interval.
    Interval norm2() const { return re * re + im * im; }
    ComplexInterval conj() const { return {re, -im}; }
};

} // namespace modsym
