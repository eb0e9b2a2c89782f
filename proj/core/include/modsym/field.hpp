#pragma once

#include <memory>
#include <mutex>
#include <map>
#include <vector>

#include "modsym/interval.hpp"
#include "modsym/linalg.hpp"
#include "modsym/numbers.hpp"
#include "modsym/polynomial.hpp"

namespace modsym {

/// Defining data of an order: a monic integer polynomial and a rational
/// basis matrix whose row j gives omega_j in the power basis of the root.
/// Row 0 must be the constant 1 and the Z-span of the rows must be closed
/// under multiplication; load_order checks both.
struct OrderSpec {
    std::vector<Int> min_poly;  ///< c0, ..., c_{d-1}, 1
    RatMatrix basis;            ///< d x d, row j = power-basis coefficients of omega_j
};

/// Element with integer coordinates in the omega basis.
struct OrderElement {
    IntVec coords;

    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
    bool operator==(const OrderElement&) const = default;
};

/// Element with rational coordinates in the omega basis.
struct FieldElement {
    RatVec coords;

    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
    bool is_integral() const {
        for (const auto& c : coords)
            if (!is_integer(c)) return false;
        return true;
    }
    bool operator==(const FieldElement&) const = default;
};

FieldElement to_field(const OrderElement& a);
/// Requires integral coordinates.
OrderElement to_order(const FieldElement& a);

/// Interval image of an element under all archimedean embeddings: the r real
/// coordinates, then one representative per complex-conjugate pair.
struct EmbeddingPoint {
    std::vector<Interval> reals;
    std::vector<ComplexInterval> complexes;
};

/// A degree-d order in a number field, presented by structure constants over
/// a fixed Z-basis with omega_1 = 1. Immutable after load; all operations are
/// pure and safe to call concurrently.
class NumberOrder {
public:
    static NumberOrder load(const OrderSpec& spec);

    size_t degree() const { return d_; }
    int real_count() const { return r_; }
    int complex_pair_count() const { return s_; }
    const Int& discriminant() const { return disc_; }
    const OrderSpec& spec() const { return spec_; }

    /// c[j][k][l] with omega_j omega_k = sum_l c[j][k][l] omega_l.
    const Int& struct_const(size_t j, size_t k, size_t l) const {
        return c_[(j * d_ + k) * d_ + l];
    }

    FieldElement one() const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    OrderElement mul(const OrderElement& a, const OrderElement& b) const;
    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement scale(const Rat& q, const FieldElement& a) const;

    Rat norm(const FieldElement& q) const;
    Rat trace(const FieldElement& q) const;
    /// The norm form as a function of the coordinate vector; identical to
    /// norm() but exposed for region membership on raw tuples.
    Rat norm_form_eval(const RatVec& lambda) const;
    /// Multiplicative inverse; throws Singular on zero.
    FieldElement inverse(const FieldElement& q) const;

    /// Matrix of y -> q*y on the omega basis, rational entries.
    RatMatrix rep_rational(const FieldElement& q) const;

    EmbeddingPoint embed(const FieldElement& q, mpfr_prec_t precision) const;

    /// d x d interval matrix whose column j holds the embedding coordinates
    /// of omega_j: r real rows, then Re/Im row pairs per complex place.
    std::vector<std::vector<Interval>> embedding_matrix(mpfr_prec_t precision) const;

    NumberOrder(NumberOrder&&) noexcept = default;
    NumberOrder& operator=(NumberOrder&&) noexcept = default;
    NumberOrder(const NumberOrder&) = delete;
    NumberOrder& operator=(const NumberOrder&) = delete;

private:
    NumberOrder() = default;

    const RootEnclosures& roots_at(mpfr_prec_t prec) const;
    RatVec power_coords(const FieldElement& q) const;

    OrderSpec spec_;
    size_t d_ = 0;
    int r_ = 0;
    int s_ = 0;
    Int disc_;
    IntVec c_;  // flattened d^3 structure constants

    struct RootCache {
        std::mutex mutex;
        std::map<mpfr_prec_t, RootEnclosures> by_precision;
    };
    std::unique_ptr<RootCache> cache_ = std::make_unique<RootCache>();
};

NumberOrder load_order(const OrderSpec& spec);

} // namespace modsym
