#include "modsym/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace modsym {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
    return r;
}

namespace {

template <typename T>
T bareiss_det(Matrix<T> m) {
    if (m.rows != m.cols) raise(Errc::NotSquare, "determinant of a non-square matrix");
    const size_t n = m.rows;
    if (n == 0) return T(1);
    T prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t piv = k;
            for (size_t i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv == k) return T(0);
            for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = T(0);
        }
        prev = m(k, k);
    }
    T d = m(n - 1, n - 1);
    return sign < 0 ? T(-d) : d;
}

} // namespace

Int det(const IntMatrix& m) { return bareiss_det(m); }
Rat det(const RatMatrix& m) { return bareiss_det(m); }

RatVec solve(const RatMatrix& m, const RatVec& b) {
    if (m.rows != m.cols) raise(Errc::NotSquare, "solve needs a square matrix");
    const size_t n = m.rows;
    if (b.size() != n) raise(Errc::DimensionMismatch, "solve rhs length");
    RatMatrix w = m;
    RatVec rhs = b;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && w(piv, k) == 0) ++piv;
        if (piv == n) raise(Errc::Singular, "singular system");
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(w(k, j), w(piv, j));
            std::swap(rhs[k], rhs[piv]);
        }
        for (size_t i = k + 1; i < n; ++i) {
            if (w(i, k) == 0) continue;
            Rat f = w(i, k) / w(k, k);
            for (size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
            rhs[i] -= f * rhs[k];
        }
    }
    RatVec x(n, Rat(0));
    for (size_t i = n; i-- > 0;) {
        Rat acc = rhs[i];
        for (size_t j = i + 1; j < n; ++j) acc -= w(i, j) * x[j];
        x[i] = acc / w(i, i);
    }
    return x;
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows != m.cols) raise(Errc::NotSquare, "inverse of a non-square matrix");
    const size_t n = m.rows;
    RatMatrix w = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && w(piv, k) == 0) ++piv;
        if (piv == n) raise(Errc::Singular, "singular matrix");
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) {
                std::swap(w(k, j), w(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        }
        Rat p = w(k, k);
        for (size_t j = 0; j < n; ++j) {
            w(k, j) /= p;
            inv(k, j) /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k || w(i, k) == 0) continue;
            Rat f = w(i, k);
            for (size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

Int snf_index(const IntMatrix& m) {
    if (m.rows != m.cols) raise(Errc::NotSquare, "snf_index of a non-square matrix");
    IntMatrix w = m;
    const size_t n = w.rows;
    Int index(1);
    for (size_t t = 0; t < n; ++t) {
        // find a nonzero pivot in the trailing submatrix
        size_t pi = n, pj = n;
        for (size_t i = t; i < n && pi == n; ++i)
            for (size_t j = t; j < n; ++j)
                if (w(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == n) return Int(0);
        if (pi != t)
            for (size_t j = t; j < n; ++j) std::swap(w(t, j), w(pi, j));
        if (pj != t)
            for (size_t i = t; i < n; ++i) std::swap(w(i, t), w(i, pj));

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (w(i, t) == 0) continue;
                Int q = w(i, t) / w(t, t);
                for (size_t j = t; j < n; ++j) w(i, j) -= q * w(t, j);
                if (w(i, t) != 0) {
                    for (size_t j = t; j < n; ++j) std::swap(w(t, j), w(i, j));
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (w(t, j) == 0) continue;
                Int q = w(t, j) / w(t, t);
                for (size_t i = t; i < n; ++i) w(i, j) -= q * w(i, t);
                if (w(t, j) != 0) {
                    for (size_t i = t; i < n; ++i) std::swap(w(i, t), w(i, j));
                    clean = false;
                }
            }
        }
        index *= ::abs(w(t, t));
    }
    return index;
}

namespace {

struct GramSchmidt {
    std::vector<std::vector<double>> mu;  // mu[i][j], j < i
    std::vector<double> bstar2;
};

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

GramSchmidt gram_schmidt(const std::vector<std::vector<double>>& b) {
    const size_t n = b.size();
    std::vector<std::vector<double>> star(b);
    GramSchmidt gs;
    gs.mu.assign(n, std::vector<double>(n, 0.0));
    gs.bstar2.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        star[i] = b[i];
        for (size_t j = 0; j < i; ++j) {
            double m = gs.bstar2[j] == 0.0 ? 0.0 : dot(b[i], star[j]) / gs.bstar2[j];
            gs.mu[i][j] = m;
            for (size_t k = 0; k < star[i].size(); ++k) star[i][k] -= m * star[j][k];
        }
        gs.bstar2[i] = dot(star[i], star[i]);
    }
    return gs;
}

} // namespace

LLLResult lll_reduce(const std::vector<std::vector<double>>& basis, double delta) {
    const size_t n = basis.size();
    if (n == 0) return {basis, IntMatrix::identity(0)};
    if (!(delta > 0.25 && delta < 1.0)) raise(Errc::DimensionMismatch, "LLL delta out of (1/4, 1)");
    for (const auto& v : basis)
        if (v.size() != basis[0].size()) raise(Errc::DimensionMismatch, "ragged basis");

    std::vector<std::vector<double>> b = basis;
    IntMatrix u = IntMatrix::identity(n);

    double scale = 0.0;
    for (const auto& v : b) scale = std::max(scale, dot(v, v));
    const double dep_tol = scale * 1e-24;

    auto gs = gram_schmidt(b);
    for (size_t i = 0; i < n; ++i)
        if (gs.bstar2[i] <= dep_tol) raise(Errc::DependentBasis, "basis numerically dependent");

    size_t k = 1;
    size_t guard = 0;
    const size_t guard_cap = 200000 + 4000 * n * n;
    while (k < n) {
        if (++guard > guard_cap) break;
        // size-reduce b_k against b_{k-1}, ..., b_0
        for (size_t j = k; j-- > 0;) {
            double m = gs.mu[k][j];
            if (std::fabs(m) > 0.5) {
                long q = std::lround(m);
                for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= static_cast<double>(q) * b[j][t];
                for (size_t t = 0; t < n; ++t) u(t, k) -= Int(q) * u(t, j);
                gs = gram_schmidt(b);
            }
        }
        if (gs.bstar2[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.bstar2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            for (size_t t = 0; t < n; ++t) std::swap(u(t, k), u(t, k - 1));
            gs = gram_schmidt(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return {b, u};
}

std::vector<LatticePoint> enumerate_lattice(const std::vector<std::vector<double>>& basis,
                                            double radius, size_t node_cap) {
    const size_t n = basis.size();
    if (!(radius > 0)) raise(Errc::RadiusOverflow, "radius must be positive");
    auto gs = gram_schmidt(basis);
    for (size_t i = 0; i < n; ++i)
        if (gs.bstar2[i] <= 0.0) raise(Errc::DependentBasis, "enumeration needs independent basis");

    const double r2 = radius * radius;
    std::vector<LatticePoint> out;
    std::vector<long> w(n, 0);
    // partial[i] = squared norm contributed by levels > i
    // center[i] depends on the chosen w_j for j > i
    std::vector<double> center(n, 0.0);
    size_t nodes = 0;

    std::function<void(size_t, double)> descend = [&](size_t level, double partial) {
        if (++nodes > node_cap) raise(Errc::RadiusOverflow, "enumeration node cap exceeded");
        size_t i = level - 1;
        double c = 0.0;
        for (size_t j = i + 1; j < n; ++j) c -= static_cast<double>(w[j]) * gs.mu[j][i];
        center[i] = c;
        double budget = r2 - partial;
        if (budget < 0) return;
        double span = std::sqrt(budget / gs.bstar2[i]);
        long lo = static_cast<long>(std::ceil(c - span - 1e-12));
        long hi = static_cast<long>(std::floor(c + span + 1e-12));
        for (long v = lo; v <= hi; ++v) {
            double diff = static_cast<double>(v) - c;
            double add = diff * diff * gs.bstar2[i];
            if (add > budget * (1.0 + 1e-12) + 1e-12) continue;
            w[i] = v;
            if (i == 0) {
                bool zero = std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
                if (!zero) {
                    double n2 = partial + add;
                    if (n2 <= r2 * (1.0 + 1e-12)) out.push_back({w, n2});
                }
            } else {
                descend(i, partial + add);
            }
        }
        w[i] = 0;
    };
    descend(n, 0.0);

    std::sort(out.begin(), out.end(), [](const LatticePoint& x, const LatticePoint& y) {
        if (x.norm2 != y.norm2) return x.norm2 < y.norm2;
        return x.coeffs < y.coeffs;
    });
    return out;
}

void enumerate_lattice(const std::vector<std::vector<double>>& basis, double radius,
                       size_t node_cap, const std::function<bool(const LatticePoint&)>& visit) {
    for (const auto& p : enumerate_lattice(basis, radius, node_cap)) {
        if (!visit(p)) return;
    }
}

} // namespace modsym
