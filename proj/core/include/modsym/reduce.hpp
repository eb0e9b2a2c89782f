#pragma once

#include <map>
#include <string>
#include <vector>

#include "modsym/pivot.hpp"

namespace modsym {

/// Canonical representative of a symbol under column permutations and
/// rational column scaling: integral primitive columns in a fixed total
/// order, with the permutation sign tracked separately. is_zero marks
/// linearly dependent columns.
struct NormalSymbol {
    SymbolMatrix matrix;
    int sign = 1;
    bool is_zero = false;
};

/// Finite integer combination of canonical symbols.
class SymbolChain {
public:
    struct Term {
        SymbolMatrix matrix;
        Int coeff;
    };

    void add(const SymbolMatrix& matrix, const Int& coeff);
    void add(const NormalSymbol& sym, const Int& coeff);
    void add_chain(const SymbolChain& other, const Int& scale);

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<std::string, Term>& terms() const { return terms_; }

    bool operator==(const SymbolChain& o) const;

private:
    std::map<std::string, Term> terms_;
};

/// Deterministic normal form of a raw symbol given by columns over K.
/// Throws ZeroColumn on a zero column.
NormalSymbol canonicalize(const NumberOrder& order,
                          const std::vector<std::vector<FieldElement>>& columns);
NormalSymbol canonicalize(const NumberOrder& order, const SymbolMatrix& m);

/// One application of relation (4) at a pivot: returns the signed
/// replacement symbols [m_i] (column i <- x) for exactly those i with
/// q_i != 0. Signs are derived mechanically from the relation, never
/// assumed. Each child satisfies |m_i| = |N(q_i)| |m| < |m| exactly.
std::vector<std::pair<int, SymbolMatrix>> reduce_step(const NumberOrder& order,
                                                      const SymbolMatrix& m, const Pivot& p);

/// Full signed expansion of relation (4) on a tuple of n+1 columns; term p
/// omits tuple entry p and carries sign (-1)^p.
std::vector<std::pair<int, std::vector<std::vector<OrderElement>>>> relation4_expand(
    const std::vector<std::vector<OrderElement>>& tuple);

struct CertNode {
    SymbolMatrix matrix;
    Int norm;
    std::vector<OrderElement> pivot_x;
    std::vector<FieldElement> pivot_q;
    std::vector<std::pair<int, SymbolMatrix>> children;
};

struct CertLeaf {
    SymbolMatrix matrix;
    Int norm;
    Int coeff;
};

/// Machine-checkable record of a full reduction: every expanded matrix with
/// its pivot data and children, plus the resulting signed leaves. Nodes are
/// sorted by descending norm (key order on ties); shared subtrees appear
/// once.
struct ReductionCertificate {
    std::string field_hash;
    size_t n = 0;
    Int C;
    SymbolMatrix root;
    int root_sign = 1;
    bool root_is_zero = false;
    std::vector<CertNode> nodes;
    std::vector<CertLeaf> leaves;
};

struct ReduceConfig {
    size_t node_budget = 100'000;  ///< expanded nodes before failing loudly
    bool force = false;            ///< attempt reduction below the certified bound
    int jobs = 1;                  ///< sibling subtrees expanded in parallel
    SearchConfig search;
};

struct ReduceStats {
    size_t expanded_nodes = 0;
    size_t leaf_count = 0;
    Int max_leaf_norm;
};

struct ReduceResult {
    SymbolChain chain;
    ReductionCertificate certificate;
    ReduceStats stats;
};

/// Depth-first reduction: every matrix with norm above C is expanded through
/// a pivot; matrices at or below C become leaves. Terminates because the
/// norm is a nonnegative integer strictly decreasing along every edge.
/// Throws BoundTooSmall when C is below the certified spanning bound (unless
/// forced) and NodeBudgetExceeded past the node budget.
ReduceResult reduce(const NumberOrder& order,
                    const std::vector<std::vector<FieldElement>>& columns, const Int& C,
                    const ReduceConfig& config = {});

/// Classical continued-fraction reduction for K = Q, n = 2; an independent
/// oracle producing a chain of unimodular symbols equal to [m] modulo
/// relations.
SymbolChain cf_reduce_2x2_rational(const NumberOrder& order, const IntMatrix& m);

/// One Hermite-normal-form representative per left-unimodular class of
/// integer matrices with 1 <= det <= C (K = Q). Upper triangular, positive
/// diagonal, entries above the diagonal reduced modulo the diagonal of
/// their column.
std::vector<IntMatrix> enumerate_hnf_classes(size_t n, const Int& C, size_t cap = 2'000'000);

/// Content hash of the defining order data; stored in certificates.
std::string spec_hash(const OrderSpec& spec);

} // namespace modsym
