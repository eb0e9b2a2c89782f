#include "modsym/rep.hpp"

#include <sstream>

namespace modsym {

namespace {

std::string make_key(const std::vector<std::vector<OrderElement>>& cols) {
    std::ostringstream os;
    for (const auto& col : cols) {
        for (const auto& e : col) {
            for (const auto& c : e.coords) os << c.get_str() << ',';
            os << ';';
        }
        os << '|';
    }
    return os.str();
}

} // namespace

SymbolMatrix::SymbolMatrix(const NumberOrder& order, std::vector<std::vector<OrderElement>> columns)
    : n_(columns.size()), cols_(std::move(columns)) {
    for (const auto& col : cols_) {
        if (col.size() != n_) raise(Errc::DimensionMismatch, "symbol matrix must be square");
        for (const auto& e : col)
            if (e.coords.size() != order.degree())
                raise(Errc::DimensionMismatch, "entry length does not match order degree");
    }
    norm_ = norm_determinant(order, cols_);
    key_ = make_key(cols_);
}

SymbolMatrix SymbolMatrix::with_column(const NumberOrder& order, size_t j,
                                       const std::vector<OrderElement>& v) const {
    auto cols = cols_;
    cols[j] = v;
    return SymbolMatrix(order, std::move(cols));
}

FieldElement det_over_field(const NumberOrder& order,
                            const std::vector<std::vector<FieldElement>>& columns) {
    const size_t n = columns.size();
    for (const auto& col : columns)
        if (col.size() != n) raise(Errc::DimensionMismatch, "determinant of a non-square matrix");
    if (n == 0) return order.one();

    // work[i][j] = entry at row i, column j
    std::vector<std::vector<FieldElement>> work(n, std::vector<FieldElement>(n, order.one()));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) work[i][j] = columns[j][i];

    int sign = 1;
    FieldElement prev = order.one();
    for (size_t k = 0; k + 1 < n; ++k) {
        if (work[k][k].is_zero()) {
            size_t piv = k;
            for (size_t i = k + 1; i < n; ++i)
                if (!work[i][k].is_zero()) {
                    piv = i;
                    break;
                }
            if (piv == k) {
                RatVec zero(order.degree(), Rat(0));
                return {zero};
            }
            std::swap(work[k], work[piv]);
            sign = -sign;
        }
        FieldElement inv_prev = order.inverse(prev);
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                FieldElement t = order.mul(work[i][j], work[k][k]);
                FieldElement u = order.mul(work[i][k], work[k][j]);
                RatVec diff(order.degree());
                for (size_t l = 0; l < order.degree(); ++l) diff[l] = t.coords[l] - u.coords[l];
                work[i][j] = order.mul(FieldElement{diff}, inv_prev);
            }
            work[i][k] = FieldElement{RatVec(order.degree(), Rat(0))};
        }
        prev = work[k][k];
    }
    FieldElement d = work[n - 1][n - 1];
    if (sign < 0) d = order.scale(Rat(-1), d);
    return d;
}

std::vector<FieldElement> solve_over_field(const NumberOrder& order,
                                           const std::vector<std::vector<FieldElement>>& columns,
                                           const std::vector<FieldElement>& rhs) {
    const size_t n = columns.size();
    if (rhs.size() != n) raise(Errc::DimensionMismatch, "rhs length");
    std::vector<std::vector<FieldElement>> work(n, std::vector<FieldElement>(n, order.one()));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) work[i][j] = columns[j][i];
    std::vector<FieldElement> b = rhs;

    auto sub_scaled = [&](FieldElement& target, const FieldElement& f, const FieldElement& src) {
        FieldElement t = order.mul(f, src);
        for (size_t l = 0; l < order.degree(); ++l) target.coords[l] -= t.coords[l];
    };

    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && work[piv][k].is_zero()) ++piv;
        if (piv == n) raise(Errc::Singular, "columns are linearly dependent over K");
        if (piv != k) {
            std::swap(work[k], work[piv]);
            std::swap(b[k], b[piv]);
        }
        FieldElement inv = order.inverse(work[k][k]);
        for (size_t i = k + 1; i < n; ++i) {
            if (work[i][k].is_zero()) continue;
            FieldElement f = order.mul(work[i][k], inv);
            for (size_t j = k; j < n; ++j) sub_scaled(work[i][j], f, work[k][j]);
            sub_scaled(b[i], f, b[k]);
        }
    }
    std::vector<FieldElement> x(n, FieldElement{RatVec(order.degree(), Rat(0))});
    for (size_t i = n; i-- > 0;) {
        FieldElement acc = b[i];
        for (size_t j = i + 1; j < n; ++j) sub_scaled(acc, work[i][j], x[j]);
        x[i] = order.mul(acc, order.inverse(work[i][i]));
    }
    return x;
}

Int norm_determinant(const NumberOrder& order, const std::vector<std::vector<OrderElement>>& columns) {
    std::vector<std::vector<FieldElement>> cols;
    cols.reserve(columns.size());
    for (const auto& col : columns) {
        std::vector<FieldElement> fcol;
        fcol.reserve(col.size());
        for (const auto& e : col) fcol.push_back(to_field(e));
        cols.push_back(std::move(fcol));
    }
    Rat nm = order.norm(det_over_field(order, cols));
    if (!is_integer(nm))
        raise(Errc::DimensionMismatch, "norm of an integral determinant must be an integer");
    Int v = nm.get_num();
    return v < 0 ? Int(-v) : v;
}

IntMatrix rep_element(const NumberOrder& order, const OrderElement& alpha) {
    const size_t d = order.degree();
    if (alpha.coords.size() != d) raise(Errc::DimensionMismatch, "element length does not match order degree");
    IntMatrix m(d, d);
    for (size_t j = 0; j < d; ++j)
        for (size_t l = 0; l < d; ++l) {
            Int acc(0);
            for (size_t t = 0; t < d; ++t) {
                const Int& s = order.struct_const(t, j, l);
                if (s != 0) acc += alpha.coords[t] * s;
            }
            m(l, j) = acc;
        }
    return m;
}

IntMatrix rep_matrix(const NumberOrder& order, const SymbolMatrix& m) {
    const size_t d = order.degree();
    const size_t n = m.dim();
    IntMatrix big(n * d, n * d);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            IntMatrix block = rep_element(order, m.entry(i, j));
            for (size_t a = 0; a < d; ++a)
                for (size_t b = 0; b < d; ++b) big(i * d + a, j * d + b) = block(a, b);
        }
    return big;
}

std::vector<IntVec> column_split(const NumberOrder& order, const std::vector<OrderElement>& v) {
    const size_t d = order.degree();
    const size_t n = v.size();
    std::vector<IntVec> splits(d, IntVec(n * d, Int(0)));
    for (size_t k = 0; k < n; ++k) {
        IntMatrix block = rep_element(order, v[k]);
        for (size_t j = 0; j < d; ++j)
            for (size_t l = 0; l < d; ++l) splits[j][k * d + l] = block(l, j);
    }
    return splits;
}

RatVec first_column_recombine(const NumberOrder& order, const std::vector<FieldElement>& q,
                              const std::vector<std::vector<IntVec>>& splits) {
    const size_t d = order.degree();
    const size_t n = q.size();
    if (splits.size() != n) raise(Errc::DimensionMismatch, "one split set per coefficient expected");
    RatVec out(n * d, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        if (q[i].coords.size() != d) raise(Errc::DimensionMismatch, "coefficient length");
        if (splits[i].size() != d) raise(Errc::DimensionMismatch, "split count must equal degree");
        for (size_t j = 0; j < d; ++j) {
            const Rat& qij = q[i].coords[j];
            if (qij == 0) continue;
            for (size_t t = 0; t < n * d; ++t) out[t] += qij * Rat(splits[i][j][t]);
        }
    }
    return out;
}

} // namespace modsym
