#pragma once

#include <string>
#include <vector>

#include "modsym/field.hpp"
#include "modsym/linalg.hpp"

namespace modsym {

/// n x n matrix over the order whose columns are the symbol's vectors.
/// The norm-determinant |N(det m)| is computed once at construction.
class SymbolMatrix {
public:
    SymbolMatrix() = default;  ///< empty placeholder, dim 0
    SymbolMatrix(const NumberOrder& order, std::vector<std::vector<OrderElement>> columns);

    size_t dim() const { return n_; }
    const std::vector<OrderElement>& column(size_t j) const { return cols_[j]; }
    const std::vector<std::vector<OrderElement>>& columns() const { return cols_; }
    const OrderElement& entry(size_t row, size_t col) const { return cols_[col][row]; }
    const Int& norm() const { return norm_; }

    SymbolMatrix with_column(const NumberOrder& order, size_t j,
                             const std::vector<OrderElement>& v) const;

    /// Compact stable serialization, usable as a map key and a total order.
    const std::string& key() const { return key_; }

    bool operator==(const SymbolMatrix& o) const { return key_ == o.key_; }

private:
    size_t n_ = 0;
    std::vector<std::vector<OrderElement>> cols_;
    Int norm_;
    std::string key_;
};

/// Determinant of a matrix over the field, columns given as vectors of
/// field elements; exact fraction-free elimination in K.
FieldElement det_over_field(const NumberOrder& order,
                            const std::vector<std::vector<FieldElement>>& columns);

/// Solves sum_i q_i v_i = rhs over K. Throws Singular when the columns are
/// linearly dependent.
std::vector<FieldElement> solve_over_field(const NumberOrder& order,
                                           const std::vector<std::vector<FieldElement>>& columns,
                                           const std::vector<FieldElement>& rhs);

/// |N(det m)| of an integral symbol matrix, as a nonnegative integer.
Int norm_determinant(const NumberOrder& order, const std::vector<std::vector<OrderElement>>& columns);

/// Matrix of x -> alpha x on the omega basis; column j holds the
/// coordinates of alpha * omega_j.
IntMatrix rep_element(const NumberOrder& order, const OrderElement& alpha);

/// Blockwise extension of the regular representation: entry (i,j) of m goes
/// to the d x d block rep_element(m_ij), so phi(m m') = phi(m) phi(m') and
/// |det phi(m)| = |N(det m)|.
IntMatrix rep_matrix(const NumberOrder& order, const SymbolMatrix& m);

/// The d column vectors in Z^{nd} determined by a column v of order
/// elements: split j holds, per row k, the coordinates of omega_j * v_k.
std::vector<IntVec> column_split(const NumberOrder& order, const std::vector<OrderElement>& v);

/// Given q in K^n and the splits of v_1, ..., v_n, returns
/// sum_{i,j} q_i^j v_i^j, which equals the first split vector of
/// x = sum q_i v_i whenever x is integral.
RatVec first_column_recombine(const NumberOrder& order, const std::vector<FieldElement>& q,
                              const std::vector<std::vector<IntVec>>& splits);

} // namespace modsym
