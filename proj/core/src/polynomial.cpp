#include "modsym/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace modsym {

void RatPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly RatPoly::derivative() const {
    RatVec d;
    for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * Rat(static_cast<long>(k)));
    return RatPoly(std::move(d));
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    RatVec out(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    return RatPoly(std::move(out));
}

RatPoly poly_rem(const RatPoly& a, const RatPoly& b) {
    RatVec r = a.c;
    const int db = b.degree();
    while (static_cast<int>(r.size()) - 1 >= db) {
        int dr = static_cast<int>(r.size()) - 1;
        Rat f = r.back() / b.leading();
        for (int k = 0; k <= db; ++k) r[static_cast<size_t>(dr - db + k)] -= f * b.c[static_cast<size_t>(k)];
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) break;
    }
    return RatPoly(std::move(r));
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = poly_rem(x, y);
        x = y;
        y = r;
    }
    if (!x.is_zero()) {
        Rat lead = x.leading();
        for (auto& cc : x.c) cc /= lead;
    }
    return x;
}

RatPoly poly_mod_monic(const RatPoly& a, const std::vector<Int>& monic) {
    const int dp = static_cast<int>(monic.size()) - 1;
    RatVec r = a.c;
    while (static_cast<int>(r.size()) - 1 >= dp) {
        int dr = static_cast<int>(r.size()) - 1;
        Rat f = r.back();
        for (int k = 0; k <= dp; ++k) r[static_cast<size_t>(dr - dp + k)] -= f * Rat(monic[static_cast<size_t>(k)]);
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) break;
    }
    return RatPoly(std::move(r));
}

bool is_squarefree(const RatPoly& p) {
    if (p.degree() <= 1) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        RatPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        for (auto& cc : r.c) cc = -cc;
        if (r.is_zero()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
    int vars = 0, prev = 0;
    for (const auto& s : chain) {
        Rat v = s.eval(x);
        int sg = sgn(v);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++vars;
        prev = sg;
    }
    return vars;
}

int sign_variations_at_inf(const std::vector<RatPoly>& chain, bool plus) {
    int vars = 0, prev = 0;
    for (const auto& s : chain) {
        if (s.is_zero()) continue;
        int sg = sgn(s.leading());
        if (!plus && (s.degree() % 2 == 1)) sg = -sg;
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++vars;
        prev = sg;
    }
    return vars;
}

/// 1 + max |c_k / c_d|, rounded up to an integer.
Rat cauchy_bound(const RatPoly& p) {
    Rat m(0);
    for (size_t k = 0; k + 1 < p.c.size(); ++k) {
        Rat a = ::abs(p.c[k] / p.leading());
        if (a > m) m = a;
    }
    Int b = floor_rat(m) + 2;
    return Rat(b);
}

} // namespace

int count_real_roots(const RatPoly& p) {
    if (p.degree() <= 0) return 0;
    auto chain = sturm_chain(p);
    return sign_variations_at_inf(chain, false) - sign_variations_at_inf(chain, true);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const RatPoly& p) {
    std::vector<std::pair<Rat, Rat>> out;
    if (p.degree() <= 0) return out;
    auto chain = sturm_chain(p);
    Rat bound = cauchy_bound(p);

    std::function<void(const Rat&, const Rat&, int, int)> subdivide =
        [&](const Rat& a, const Rat& b, int va, int vb) {
            int count = va - vb;
            if (count <= 0) return;
            if (count == 1) {
                out.emplace_back(a, b);
                return;
            }
            Rat mid = (a + b) / 2;
            if (p.eval(mid) == 0) {
                out.emplace_back(mid, mid);
                // carve out a gap around the exact root before recursing
                Rat h = (b - a) / 4;
                while (true) {
                    Rat l = mid - h, r = mid + h;
                    if (p.eval(l) != 0 && p.eval(r) != 0 &&
                        sign_variations_at(chain, l) - sign_variations_at(chain, r) == 1) {
                        subdivide(a, l, va, sign_variations_at(chain, l));
                        subdivide(r, b, sign_variations_at(chain, r), vb);
                        return;
                    }
                    h /= 2;
                }
            }
            int vm = sign_variations_at(chain, mid);
            subdivide(a, mid, va, vm);
            subdivide(mid, b, vm, vb);
        };

    subdivide(-bound, bound, sign_variations_at(chain, -bound), sign_variations_at(chain, bound));
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

void refine_real_root(const RatPoly& p, std::pair<Rat, Rat>& iv, const Rat& max_width) {
    if (iv.first == iv.second) return;
    int sa = sgn(p.eval(iv.first));
    while (iv.second - iv.first > max_width) {
        Rat mid = (iv.first + iv.second) / 2;
        Rat pm = p.eval(mid);
        if (pm == 0) {
            iv = {mid, mid};
            return;
        }
        if (sgn(pm) == sa) {
            iv.first = mid;
        } else {
            iv.second = mid;
        }
    }
}

namespace {

Rat dyadic_round(const Rat& x, unsigned long bits) {
    Int scaled_num = x.get_num() << bits;
    Int q;
    // round to nearest
    Int half_den = x.get_den() / 2;
    mpz_fdiv_q(q.get_mpz_t(), Int(scaled_num + half_den).get_mpz_t(), x.get_den().get_mpz_t());
    Rat r(q, Int(1) << bits);
    r.canonicalize();
    return r;
}

QComplex dyadic_round(const QComplex& z, unsigned long bits) {
    return {dyadic_round(z.re, bits), dyadic_round(z.im, bits)};
}

QComplex eval_qc(const std::vector<Int>& coeffs, const QComplex& z) {
    QComplex acc{Rat(0), Rat(0)};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z;
        acc.re += Rat(*it);
    }
    return acc;
}

QComplex eval_qc_derivative(const std::vector<Int>& coeffs, const QComplex& z) {
    QComplex acc{Rat(0), Rat(0)};
    for (size_t k = coeffs.size() - 1; k >= 1; --k) {
        acc = acc * z;
        acc.re += Rat(coeffs[k] * static_cast<long>(k));
    }
    return acc;
}

std::vector<std::complex<double>> aberth(const std::vector<double>& coeffs, int iterations, double phase) {
    using CD = std::complex<double>;
    const int d = static_cast<int>(coeffs.size()) - 1;
    double radius = 0;
    for (int k = 0; k < d; ++k) radius = std::max(radius, std::abs(coeffs[static_cast<size_t>(k)]));
    radius = 1.0 + radius;

    std::vector<CD> z(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        double theta = 2.0 * M_PI * k / d + phase;
        z[static_cast<size_t>(k)] = std::polar(0.5 * radius, theta);
    }

    auto horner = [&](CD x, bool deriv) {
        CD acc = 0;
        if (deriv) {
            for (int k = d; k >= 1; --k) acc = acc * x + coeffs[static_cast<size_t>(k)] * static_cast<double>(k);
        } else {
            for (int k = d; k >= 0; --k) acc = acc * x + coeffs[static_cast<size_t>(k)];
        }
        return acc;
    };

    for (int it = 0; it < iterations; ++it) {
        double worst = 0;
        for (int k = 0; k < d; ++k) {
            CD zk = z[static_cast<size_t>(k)];
            CD pv = horner(zk, false);
            CD dv = horner(zk, true);
            if (std::abs(dv) == 0.0) continue;
            CD newton = pv / dv;
            CD sum = 0;
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                CD diff = zk - z[static_cast<size_t>(j)];
                if (std::abs(diff) < 1e-300) continue;
                sum += 1.0 / diff;
            }
            CD w = newton / (1.0 - newton * sum);
            z[static_cast<size_t>(k)] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(zk)));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

struct NewtonResult {
    QComplex z;
    Rat radius2;
    bool converged;
};

/// Exact-rational Newton with dyadic rounding between steps. The returned
/// radius2 bounds d^2 |p(z)/p'(z)|^2, which encloses the distance to the
/// nearest root.
NewtonResult newton_refine(const std::vector<Int>& coeffs, QComplex z, unsigned long target_bits) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    const unsigned long work_bits = 2 * target_bits + 32;
    Rat target_r2 = Rat(1, Int(1) << (2 * (target_bits + 2)));
    Rat d2 = Rat(static_cast<long>(d) * static_cast<long>(d));

    z = dyadic_round(z, work_bits);
    NewtonResult best{z, Rat(-1), false};
    for (int it = 0; it < 80; ++it) {
        QComplex pv = eval_qc(coeffs, z);
        if (pv.re == 0 && pv.im == 0) return {z, Rat(0), true};
        QComplex dv = eval_qc_derivative(coeffs, z);
        Rat dn = dv.norm2();
        if (dn == 0) return {z, Rat(-1), false};
        Rat r2 = d2 * pv.norm2() / dn;
        if (best.radius2 < 0 || r2 < best.radius2) best = {z, r2, false};
        if (r2 <= target_r2) return {z, r2, true};
        z = dyadic_round(z - pv / dv, work_bits);
    }
    return best;
}

bool disks_separated(const QComplex& c1, const Rat& r1sq, const QComplex& c2, const Rat& r2sq) {
    Rat dist2 = (c1 - c2).norm2();
    return dist2 > 2 * (r1sq + r2sq);
}

} // namespace

RootEnclosures enclose_roots(const std::vector<Int>& monic, mpfr_prec_t prec) {
    const int d = static_cast<int>(monic.size()) - 1;
    if (d < 1 || monic.back() != 1) raise(Errc::NotMonic, "enclose_roots needs a monic polynomial");

    RatVec qc;
    for (const auto& v : monic) qc.emplace_back(v);
    RatPoly p{qc};

    RootEnclosures out;
    out.real_roots = isolate_real_roots(p);
    const int r = static_cast<int>(out.real_roots.size());
    if ((d - r) % 2 != 0) raise(Errc::BadSignature, "real root count does not match degree parity");
    const int s = (d - r) / 2;

    Rat width = Rat(1, Int(1) << static_cast<unsigned long>(prec + 2));
    for (auto& iv : out.real_roots) refine_real_root(p, iv, width);
    if (s == 0) return out;

    std::vector<double> dc;
    for (const auto& v : monic) dc.push_back(v.get_d());

    const unsigned long target_bits = static_cast<unsigned long>(prec);
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto approx = aberth(dc, 200 * (attempt + 1), 0.7 + 0.37 * attempt);
        std::vector<QComplex> cands;
        for (const auto& z : approx) {
            if (z.imag() > 1e-12) cands.push_back({Rat(z.real()), Rat(z.imag())});
        }
        if (static_cast<int>(cands.size()) != s) continue;

        std::vector<RootDisk> disks;
        bool ok = true;
        for (auto& cand : cands) {
            auto nr = newton_refine(monic, cand, target_bits);
            if (!nr.converged || nr.z.im <= 0) {
                ok = false;
                break;
            }
            disks.push_back({nr.z, nr.radius2});
        }
        if (!ok) continue;

        // each disk strictly above the real axis
        for (const auto& dk : disks) {
            if (!(dk.center.im > 0 && dk.center.im * dk.center.im > 2 * dk.radius2)) ok = false;
        }
        // pairwise disjoint, including against conjugate copies
        for (size_t i = 0; i < disks.size() && ok; ++i) {
            for (size_t j = i + 1; j < disks.size() && ok; ++j) {
                if (!disks_separated(disks[i].center, disks[i].radius2, disks[j].center, disks[j].radius2))
                    ok = false;
                QComplex conj_j{disks[j].center.re, -disks[j].center.im};
                if (!disks_separated(disks[i].center, disks[i].radius2, conj_j, disks[j].radius2)) ok = false;
            }
        }
        if (!ok) continue;

        std::sort(disks.begin(), disks.end(), [](const RootDisk& a, const RootDisk& b) {
            Rat dre = a.center.re - b.center.re;
            if (dre * dre > 2 * (a.radius2 + b.radius2)) return a.center.re < b.center.re;
            return a.center.im < b.center.im;
        });
        out.complex_roots = std::move(disks);
        return out;
    }
    raise(Errc::PrecisionUnavailable, "could not certify complex root enclosures");
}

Interval eval_interval(const RatVec& coeffs, const Interval& x, mpfr_prec_t prec) {
    Interval acc(prec);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + Interval::from_rat(*it, prec);
    }
    return acc;
}

ComplexInterval eval_interval(const RatVec& coeffs, const ComplexInterval& z, mpfr_prec_t prec) {
    ComplexInterval acc{Interval(prec), Interval(prec)};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z;
        acc.re = acc.re + Interval::from_rat(*it, prec);
    }
    return acc;
}

} // namespace modsym
