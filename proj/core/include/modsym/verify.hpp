#pragma once

#include <string>
#include <vector>

#include "modsym/reduce.hpp"

namespace modsym {

struct Violation {
    std::string node;     ///< node path ("root", "node:3", "leaf:0", "chain")
    std::string check;    ///< which check failed ("a" .. "g", "structure")
    std::string message;

    bool operator==(const Violation&) const = default;
};

/// Independent certificate checker. Recomputes every norm, solve, and sign
/// from scratch; the only code shared with the reduction engine is field
/// arithmetic. Throws FieldMismatch when the certificate was produced for a
/// different order; all other problems come back as violation records,
/// sorted by node path.
std::vector<Violation> verify(const ReductionCertificate& cert, const NumberOrder& order);

/// Brute-force equality modulo relations (1)-(4): decides whether a - b lies
/// in the span of the relation-(4) boundary chains generated from the columns
/// appearing in the two chains, by exact linear algebra over Q on the finite
/// symbol basis. All column entries must be bounded by `bound`.
bool chain_equal_small(const NumberOrder& order, const SymbolChain& a, const SymbolChain& b,
                       const Int& bound, size_t support_cap = 72);

} // namespace modsym
