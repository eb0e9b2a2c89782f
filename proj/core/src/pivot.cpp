#include "modsym/pivot.hpp"

#include <algorithm>
#include <cmath>

namespace modsym {

namespace {

Pivot make_verified_pivot(const NumberOrder& order, const SymbolMatrix& m,
                          std::vector<OrderElement> x) {
    RegionSWitness w = region_S_contains(order, m, x);
    if (!w.inside) raise(Errc::InvalidPivot, "candidate fails the region S test");
    bool nonzero = false;
    for (const auto& e : x)
        if (!e.is_zero()) nonzero = true;
    if (!nonzero) raise(Errc::InvalidPivot, "pivot must be nonzero");
    Rat max_norm(0);
    for (const auto& qi : w.q) {
        Rat nm = ::abs(order.norm(qi));
        if (nm > max_norm) max_norm = nm;
    }
    return {std::move(x), std::move(w.q), std::move(max_norm)};
}

std::vector<OrderElement> blocks_from_coords(const IntVec& y, size_t n, size_t d) {
    std::vector<OrderElement> x(n);
    for (size_t k = 0; k < n; ++k) {
        x[k].coords.assign(y.begin() + static_cast<long>(k * d),
                           y.begin() + static_cast<long>((k + 1) * d));
    }
    return x;
}

} // namespace

Pivot find_pivot(const NumberOrder& order, const SymbolMatrix& m, const SearchConfig& config) {
    if (m.norm() == 0) raise(Errc::SingularMatrix, "pivot search needs a nonsingular matrix");
    const size_t n = m.dim();
    const size_t d = order.degree();
    const size_t nd = n * d;

    // lattice of q-coordinates: columns of phi(m)^{-1}, embedded blockwise
    RatMatrix binv = inverse(to_rational(rep_matrix(order, m)));
    auto emb = order.embedding_matrix(config.precision);
    std::vector<std::vector<double>> mu_mid(d, std::vector<double>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) mu_mid[i][j] = emb[i][j].mid_double();

    std::vector<std::vector<double>> basis(nd, std::vector<double>(nd, 0.0));
    for (size_t c = 0; c < nd; ++c) {
        for (size_t k = 0; k < n; ++k) {
            for (size_t i = 0; i < d; ++i) {
                double acc = 0;
                for (size_t j = 0; j < d; ++j) acc += mu_mid[i][j] * binv(k * d + j, c).get_d();
                basis[c][k * d + i] = acc;
            }
        }
    }

    LLLResult lll = lll_reduce(basis, config.lll_delta);

    const double ball = std::sqrt(static_cast<double>(n)) * octahedron(order).circumradius();
    std::vector<double> radii = {ball / 8, ball / 4, ball / 2, ball,
                                 ball * config.escalation_factor};
    size_t budget = config.node_budget;

    double prev_r2 = 0.0;
    for (double radius : radii) {
        std::vector<LatticePoint> pts;
        try {
            pts = enumerate_lattice(lll.basis, radius, budget);
        } catch (const Error& e) {
            if (e.code() == Errc::RadiusOverflow)
                raise(Errc::NodeBudgetExceeded, "pivot enumeration exceeded the node budget");
            throw;
        }
        budget = (pts.size() < budget) ? budget - pts.size() : 0;

        for (const auto& pt : pts) {
            if (pt.norm2 <= prev_r2) continue;  // covered by an earlier stage
            IntVec y(nd, Int(0));
            for (size_t i = 0; i < nd; ++i) {
                if (pt.coeffs[i] == 0) continue;
                for (size_t t = 0; t < nd; ++t) y[t] += lll.transform(t, i) * Int(pt.coeffs[i]);
            }
            // q-coordinates are exact: lambda = phi(m)^{-1} y
            bool pass = true;
            for (size_t k = 0; k < n && pass; ++k) {
                RatVec qk(d, Rat(0));
                for (size_t j = 0; j < d; ++j) {
                    for (size_t c = 0; c < nd; ++c) {
                        if (y[c] == 0) continue;
                        qk[j] += binv(k * d + j, c) * Rat(y[c]);
                    }
                }
                Rat nm = ::abs(order.norm_form_eval(qk));
                if (!(nm < 1)) pass = false;
            }
            if (!pass) continue;
            return make_verified_pivot(order, m, blocks_from_coords(y, n, d));
        }
        prev_r2 = radius * radius * (1.0 + 1e-12);
    }
    raise(Errc::NotFound, "no pivot inside the search ball");
}

Pivot exhaustive_pivot(const NumberOrder& order, const SymbolMatrix& m, long box_radius,
                       size_t candidate_cap) {
    if (box_radius < 1) raise(Errc::BoxTooLarge, "box radius must be at least 1");
    if (m.norm() == 0) raise(Errc::SingularMatrix, "pivot search needs a nonsingular matrix");
    const size_t n = m.dim();
    const size_t d = order.degree();
    const size_t nd = n * d;

    double total = std::pow(2.0 * static_cast<double>(box_radius) + 1.0, static_cast<double>(nd));
    if (total > static_cast<double>(candidate_cap))
        raise(Errc::BoxTooLarge, "candidate count exceeds the configured cap");

    // per-coordinate value sequence 0, 1, -1, 2, -2, ...
    const size_t values = 2 * static_cast<size_t>(box_radius) + 1;
    auto value_at = [](size_t idx) -> long {
        if (idx == 0) return 0;
        long mag = static_cast<long>((idx + 1) / 2);
        return (idx % 2 == 1) ? mag : -mag;
    };

    std::vector<size_t> idx(nd, 0);
    while (true) {
        bool zero = std::all_of(idx.begin(), idx.end(), [](size_t v) { return v == 0; });
        if (!zero) {
            IntVec y(nd);
            for (size_t t = 0; t < nd; ++t) y[t] = value_at(idx[t]);
            auto x = blocks_from_coords(y, n, d);
            RegionSWitness w = region_S_contains(order, m, x);
            if (w.inside) return make_verified_pivot(order, m, std::move(x));
        }
        // odometer with the last coordinate fastest
        size_t pos = nd;
        bool wrapped = true;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < values) {
                wrapped = false;
                break;
            }
            idx[pos] = 0;
        }
        if (wrapped) break;
    }
    raise(Errc::NotFound, "no pivot inside the search box");
}

} // namespace modsym
