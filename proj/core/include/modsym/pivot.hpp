#pragma once

#include <cstddef>

#include "modsym/minkowski.hpp"
#include "modsym/rep.hpp"

namespace modsym {

struct SearchConfig {
    size_t node_budget = 10'000'000;  ///< total enumeration nodes across stages
    double lll_delta = 0.99;
    double escalation_factor = 2.0;   ///< applied once past the circumscribed radius
    mpfr_prec_t precision = 128;      ///< embedding precision for the float lattice
};

/// A nonzero x in O^n with x = sum q_i v_i and max_i |N(q_i)| < 1; exactly
/// re-verified before being returned from any search.
struct Pivot {
    std::vector<OrderElement> x;
    std::vector<FieldElement> q;
    Rat max_norm;
};

/// Lattice search for a pivot: the standard lattice is mapped through the
/// block embedding into q-space where the target body Q(p)^n is fixed, the
/// basis is LLL-reduced, and candidates are enumerated by nondecreasing
/// length and checked exactly. The first passing candidate is returned.
/// Throws NotFound when the ball is exhausted (legitimate when |m| is at or
/// below the spanning bound) and NodeBudgetExceeded past the node budget.
Pivot find_pivot(const NumberOrder& order, const SymbolMatrix& m, const SearchConfig& config = {});

/// Brute-force oracle: scans every x in O^n whose basis coefficients lie in
/// [-box_radius, box_radius], in lexicographic order over the coordinate
/// sequence 0, 1, -1, 2, -2, ...; returns the first x passing the region S
/// test. Throws BoxTooLarge past candidate_cap candidates.
Pivot exhaustive_pivot(const NumberOrder& order, const SymbolMatrix& m, long box_radius,
                       size_t candidate_cap = 5'000'000);

} // namespace modsym
