#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ccp/errors.hpp"

namespace ccp {

using Integer = mpz_class;
using Rational = mpq_class;  // gmpxx keeps every result in canonical form
using Vector = std::vector<Rational>;

// "num/den", den omitted when 1. Throws ErrorKind::parse on malformed input or zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// Debug audit: denominator positive and gcd(num, den) = 1.
bool is_canonical(const Rational& q);

std::size_t bit_length(const Integer& z);
// max(bit length of numerator, bit length of denominator)
std::size_t bit_length(const Rational& q);

Integer lcm_of_denominators(const Vector& v);
bool is_integral(const Vector& v);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);
Rational dot(const Vector& a, const Vector& b);
Rational norm1(const Vector& v);
Rational norm_inf(const Vector& v);
Rational squared_norm(const Vector& v);
Vector unit_vector(std::size_t dim, std::size_t i);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    // Points become columns.
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t dim);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector col(std::size_t c) const;
    Matrix select_columns(const std::vector<std::size_t>& idx) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix transpose() const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

// Fraction-free Bareiss elimination on the row-scaled integer matrix.
Rational determinant(const Matrix& m);
std::size_t rank(const Matrix& m);
// Indices of a maximal linearly independent subset of rows, greedy in row order.
std::vector<std::size_t> independent_rows(const Matrix& m);
Vector solve_square(const Matrix& m, const Vector& rhs);
// Column-wise solve of m·X = rhs.
Matrix solve_square(const Matrix& m, const Matrix& rhs);
// A nonzero vector spanning the kernel; requires a one-dimensional kernel.
Vector kernel_vector(const Matrix& m);
bool in_linear_span(const std::vector<Vector>& points, const Vector& b);

}  // namespace ccp
