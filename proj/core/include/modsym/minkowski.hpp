#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "modsym/field.hpp"
#include "modsym/interval.hpp"
#include "modsym/rep.hpp"

namespace modsym {

/// Exact constant of the form coeff * pi^pi_exp.
struct PiPower {
    Rat coeff;
    int pi_exp = 0;

    Interval eval(mpfr_prec_t prec) const;
    bool operator==(const PiPower&) const = default;
};

/// M_K = (pi/4)^s d^d / d!.
PiPower minkowski_constant(size_t d, int s);

/// Exact data behind the spanning bound floor((sqrt|D|/M_K)^n).
struct BoundReport {
    PiPower mink_const;
    /// the ratio power equals ratio_coeff * sqrt(|disc|^n) * pi^{ratio_pi_exp}
    Rat ratio_coeff;
    int ratio_pi_exp = 0;
    Int abs_disc;
    size_t n = 0;
    Int c_min;
    /// set when the ratio itself is a rational integer (possible only for s=0)
    bool ratio_is_integer = false;

    Interval ratio_interval(mpfr_prec_t prec) const;
};

/// Certified floor of (sqrt|D|/M_K)^n: exact rational arithmetic for s = 0,
/// escalating interval precision otherwise. Throws FloorUndecidable if the
/// enclosure still straddles an integer at max_prec.
BoundReport spanning_bound(const NumberOrder& order, size_t n, mpfr_prec_t max_prec = 1 << 14);

/// The map taking the standard basis of Z^d to the embedded order basis;
/// column j = embedding coordinates of omega_j. |det mu| = 2^{-s} sqrt|disc|.
std::vector<std::vector<Interval>> mu_matrix(const NumberOrder& order, mpfr_prec_t precision);

/// Interval determinant by Laplace expansion; fine for the small d used here.
Interval interval_det(const std::vector<std::vector<Interval>>& m, mpfr_prec_t prec);

/// Minkowski's generalized octahedron Q(p), cut from the tangent simplex at a
/// point p on the norm-one surface in V+ and swept by sign flips and
/// rotations. Membership: sum |x_i|/p_i + 2 sum |z_j|/rho_j(p) <= d.
struct Octahedron {
    int r = 0;
    int s = 0;
    RatVec p_x;    ///< tangency coordinates at the real places
    RatVec p_rho;  ///< tangency radii at the complex places

    size_t ambient_dim() const { return static_cast<size_t>(r) + 2 * static_cast<size_t>(s); }

    /// Exact membership for a point given in V+ coordinates (x may be signed,
    /// rho must be nonnegative radii).
    bool contains_vplus(const RatVec& x, const RatVec& rho) const;
    /// Float membership for a point in mu-coordinates (r reals, then Re/Im
    /// pairs); used by Monte Carlo sampling only.
    bool contains_point(const std::vector<double>& coords) const;
    /// Radius of the smallest origin-centered ball containing Q(p).
    double circumradius() const;
    /// Half-widths of the bounding box in mu-coordinates.
    std::vector<double> box_halfwidths() const;
};

/// Default p is the all-ones point, which turns the membership inequality
/// into sum |x_i| + 2 sum |z_j| <= d.
Octahedron octahedron(const NumberOrder& order,
                      std::optional<std::pair<RatVec, RatVec>> p = std::nullopt);
Octahedron octahedron_for_signature(int r, int s,
                                    std::optional<std::pair<RatVec, RatVec>> p = std::nullopt);

/// vol Q(p) = 2^{r+s} M_K, independent of p.
PiPower octahedron_volume(const Octahedron& o);

/// Monte Carlo estimate of vol Q(p) by rejection sampling in the bounding
/// box; deterministic for a fixed seed.
double octahedron_mc_volume(const Octahedron& o, size_t samples, std::uint64_t seed);

/// Region T: |norm form(y)| <= 1, exact.
bool region_T_contains(const NumberOrder& order, const RatVec& y);

/// Region S: x = sum q_i v_i with |N(q_i)| < 1 for all i (strict). The
/// witness q is returned either way. Throws SingularMatrix when det m = 0.
struct RegionSWitness {
    bool inside = false;
    std::vector<FieldElement> q;
};
RegionSWitness region_S_contains(const NumberOrder& order, const SymbolMatrix& m,
                                 const std::vector<OrderElement>& x);

/// vol P = |m| (2^d M_K / sqrt|disc|)^n as an interval, with the comparison
/// against 2^{nd} decided exactly through the spanning bound.
struct VolPReport {
    Interval volume;
    bool exceeds_2nd = false;
};
VolPReport vol_P(const NumberOrder& order, const SymbolMatrix& m, mpfr_prec_t prec = 128);

} // namespace modsym
