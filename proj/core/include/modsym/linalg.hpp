#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "modsym/numbers.hpp"

namespace modsym {

template <typename T>
struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const T& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& x, const Matrix<T>& y) {
    if (x.cols != y.rows) raise(Errc::DimensionMismatch, "matrix product shape");
    Matrix<T> r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            const T& v = x(i, k);
            if (v == 0) continue;
            for (size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
        }
    return r;
}

RatMatrix to_rational(const IntMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination.
Int det(const IntMatrix& m);
Rat det(const RatMatrix& m);

/// Exact solution of m x = b; throws Singular when det m = 0.
RatVec solve(const RatMatrix& m, const RatVec& b);
RatMatrix inverse(const RatMatrix& m);

/// Product of the Smith normal form diagonal; 0 iff singular. For a
/// nonsingular integer matrix this is the index of the column lattice
/// in Z^n, i.e. |det m|.
Int snf_index(const IntMatrix& m);

/// Floating-point LLL with the unimodular column transformation tracked in
/// exact integers: reduced[i] = sum_j input[j] * transform(j, i).
struct LLLResult {
    std::vector<std::vector<double>> basis;
    IntMatrix transform;
};
LLLResult lll_reduce(const std::vector<std::vector<double>>& basis, double delta = 0.99);

struct LatticePoint {
    std::vector<long> coeffs;
    double norm2;
};

/// All nonzero integer combinations of the basis with Euclidean length at
/// most radius, ordered by nondecreasing length, ties in ascending
/// lexicographic coefficient order. Throws RadiusOverflow past node_cap
/// enumeration nodes.
std::vector<LatticePoint> enumerate_lattice(const std::vector<std::vector<double>>& basis,
                                            double radius, size_t node_cap = 10'000'000);

/// Streaming form: visit returns false to stop early.
void enumerate_lattice(const std::vector<std::vector<double>>& basis, double radius,
                       size_t node_cap, const std::function<bool(const LatticePoint&)>& visit);

} // namespace modsym
