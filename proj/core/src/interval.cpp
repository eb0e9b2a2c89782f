#include "modsym/interval.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace modsym {

Interval::Interval(mpfr_prec_t prec) : prec_(std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) {
    swap(*this, other);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

void swap(Interval& a, Interval& b) noexcept {
    std::swap(a.prec_, b.prec_);
    mpfr_swap(a.lo_, b.lo_);
    mpfr_swap(a.hi_, b.hi_);
}

Interval Interval::exact(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::from_int(const Int& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_rat(const Rat& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator+(const Interval& rhs) const {
    Interval r(std::max(prec_, rhs.prec_));
    mpfr_add(r.lo_, lo_, rhs.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, rhs.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& rhs) const {
    Interval r(std::max(prec_, rhs.prec_));
    mpfr_sub(r.lo_, lo_, rhs.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, rhs.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& rhs) const {
    Interval r(std::max(prec_, rhs.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);

    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

Interval Interval::operator/(const Interval& rhs) const {
    if (rhs.contains_zero()) raise(Errc::PrecisionUnavailable, "interval division by enclosure of zero");
    Interval r(std::max(prec_, rhs.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);

    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(hi_) < 0) raise(Errc::PrecisionUnavailable, "sqrt of a negative enclosure");
    Interval r(prec_);
    if (mpfr_sgn(lo_) <= 0) {
        mpfr_set_zero(r.lo_, 1);
    } else {
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::abs() const {
    Interval r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    // straddles zero
    mpfr_set_zero(r.lo_, 1);
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_neg(t, lo_, MPFR_RNDU);
    if (mpfr_cmp(t, hi_) > 0) {
        mpfr_set(r.hi_, t, MPFR_RNDU);
    } else {
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
    }
    mpfr_clear(t);
    return r;
}

Interval Interval::pow(unsigned long e) const {
    Interval acc = Interval::exact(1, prec_);
    Interval base = *this;
    while (e > 0) {
        if (e & 1ul) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::contains(const Rat& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

int Interval::sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
}

bool Interval::definitely_less(const Interval& rhs) const {
    return mpfr_cmp(hi_, rhs.lo_) < 0;
}

std::optional<Int> Interval::certified_floor() const {
    if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_)) return std::nullopt;
    mpfr_t f;
    mpfr_init2(f, std::max<mpfr_prec_t>(prec_, 64));
    Int fl, fh;
    mpfr_floor(f, lo_);
    mpfr_get_z(fl.get_mpz_t(), f, MPFR_RNDN);
    mpfr_floor(f, hi_);
    mpfr_get_z(fh.get_mpz_t(), f, MPFR_RNDN);
    mpfr_clear(f);
    if (fl == fh) return fl;
    return std::nullopt;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const {
    return 0.5 * (lo_double() + hi_double());
}

namespace {
Rat mpfr_to_rat(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Rat(0);
    Int mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    Rat r(mant);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num().get_mpz_t(), r.get_num().get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den().get_mpz_t(), r.get_den().get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    r.canonicalize();
    return r;
}
} // namespace

Rat Interval::lo_rat() const { return mpfr_to_rat(lo_); }
Rat Interval::hi_rat() const { return mpfr_to_rat(hi_); }

double Interval::width() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

std::string Interval::str(size_t digits) const {
    std::ostringstream os;
    os.precision(static_cast<int>(digits));
    os << "[" << lo_double() << ", " << hi_double() << "]";
    return os.str();
}

} // namespace modsym
