#include "ccp/rational.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace ccp {

namespace {

bool parse_integer(std::string_view s, Integer& out, bool allow_sign)
{
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && s[0] == '-') i = 1;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    return out.set_str(std::string(s), 10) == 0;
}

// Integer matrix with the same row space and determinant sign; scale[r] > 0 is the row multiplier.
std::vector<std::vector<Integer>> integer_rows(const Matrix& m, std::vector<Integer>* scale)
{
    std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
    if (scale) scale->assign(m.rows(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
        if (scale) (*scale)[r] = l;
    }
    return out;
}

// In-place Bareiss with row pivoting over the first `ncols` columns.
// Returns the pivot columns; rows are permuted so pivot rows come first.
// `swaps` counts row exchanges, `perm` tracks original row indices.
std::vector<std::size_t> bareiss(std::vector<std::vector<Integer>>& a, std::size_t ncols, int& swaps,
                                 std::vector<std::size_t>* perm)
{
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t r = 0;
    swaps = 0;
    for (std::size_t c = 0; c < ncols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            if (perm) std::swap((*perm)[p], (*perm)[r]);
            ++swaps;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < a[i].size(); ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    Integer num, den = 1;
    bool ok;
    if (slash == std::string_view::npos) {
        ok = parse_integer(text, num, true);
    } else {
        ok = parse_integer(text.substr(0, slash), num, true) && parse_integer(text.substr(slash + 1), den, false);
    }
    if (!ok) fail(ErrorKind::parse, "malformed rational '" + std::string(text) + "'");
    if (den == 0) fail(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_canonical(const Rational& q)
{
    if (sgn(q.get_den()) <= 0) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return g == 1;
}

std::size_t bit_length(const Integer& z) { return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); }

std::size_t bit_length(const Rational& q) { return std::max(bit_length(q.get_num()), bit_length(q.get_den())); }

Integer lcm_of_denominators(const Vector& v)
{
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

bool is_integral(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.get_den() == 1; });
}

Vector operator+(const Vector& a, const Vector& b)
{
    require(a.size() == b.size(), ErrorKind::dimension, "vector add: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b)
{
    require(a.size() == b.size(), ErrorKind::dimension, "vector sub: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector operator*(const Rational& s, const Vector& v)
{
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

Rational dot(const Vector& a, const Vector& b)
{
    require(a.size() == b.size(), ErrorKind::dimension, "dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational norm1(const Vector& v)
{
    Rational s = 0;
    for (const auto& x : v) s += abs(x);
    return s;
}

Rational norm_inf(const Vector& v)
{
    Rational s = 0;
    for (const auto& x : v)
        if (abs(x) > s) s = abs(x);
    return s;
}

Rational squared_norm(const Vector& v) { return dot(v, v); }

Vector unit_vector(std::size_t dim, std::size_t i)
{
    Vector e(dim, Rational(0));
    e.at(i) = 1;
    return e;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require(r.size() == cols_, ErrorKind::dimension, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t dim)
{
    Matrix m(dim, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        require(cols[c].size() == dim, ErrorKind::dimension, "column has wrong dimension");
        for (std::size_t r = 0; r < dim; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == cols, ErrorKind::dimension, "row has wrong dimension");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const
{
    return Vector(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const
{
    Matrix m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < idx.size(); ++k) m(r, k) = (*this)(r, idx[k]);
    return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const
{
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t c = 0; c < cols_; ++c) m(k, c) = (*this)(idx[k], c);
    return m;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    require(a.cols() == b.rows(), ErrorKind::dimension, "matrix product: inner dimension mismatch");
    Matrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
        }
    return p;
}

Vector operator*(const Matrix& a, const Vector& x)
{
    require(a.cols() == x.size(), ErrorKind::dimension, "matrix-vector product: size mismatch");
    Vector y(a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

Rational determinant(const Matrix& m)
{
    require(m.rows() == m.cols(), ErrorKind::dimension, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<Integer> scale;
    auto a = integer_rows(m, &scale);
    int swaps = 0;
    auto piv = bareiss(a, n, swaps, nullptr);
    if (piv.size() < n) return 0;
    Rational det(a[n - 1][n - 1]);
    if (swaps % 2) det = -det;
    Integer s = 1;
    for (const auto& x : scale) s *= x;
    det /= s;
    return det;
}

std::size_t rank(const Matrix& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto a = integer_rows(m, nullptr);
    int swaps = 0;
    return bareiss(a, m.cols(), swaps, nullptr).size();
}

std::vector<std::size_t> independent_rows(const Matrix& m)
{
    // Greedy in row order: eliminate on the transpose, pivot columns are the kept rows.
    if (m.rows() == 0) return {};
    auto a = integer_rows(m.transpose(), nullptr);
    int swaps = 0;
    return bareiss(a, m.rows(), swaps, nullptr);
}

Vector solve_square(const Matrix& m, const Vector& rhs)
{
    require(m.rows() == m.cols(), ErrorKind::dimension, "solve_square: matrix not square");
    require(rhs.size() == m.rows(), ErrorKind::dimension, "solve_square: rhs size mismatch");
    const std::size_t n = m.rows();
    Matrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n) = rhs[r];
    }
    auto a = integer_rows(aug, nullptr);
    int swaps = 0;
    auto piv = bareiss(a, n, swaps, nullptr);
    if (piv.size() < n) fail(ErrorKind::singular, "solve_square: singular matrix");
    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s(a[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) s -= Rational(a[i][j]) * x[j];
        x[i] = s / Rational(a[i][i]);
    }
    return x;
}

Matrix solve_square(const Matrix& m, const Matrix& rhs)
{
    require(m.rows() == m.cols(), ErrorKind::dimension, "solve_square: matrix not square");
    require(rhs.rows() == m.rows(), ErrorKind::dimension, "solve_square: rhs size mismatch");
    const std::size_t n = m.rows(), k = rhs.cols();
    Matrix aug(n, n + k);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        for (std::size_t c = 0; c < k; ++c) aug(r, n + c) = rhs(r, c);
    }
    auto a = integer_rows(aug, nullptr);
    int swaps = 0;
    auto piv = bareiss(a, n, swaps, nullptr);
    if (piv.size() < n) fail(ErrorKind::singular, "solve_square: singular matrix");
    Matrix x(n, k);
    for (std::size_t col = 0; col < k; ++col) {
        for (std::size_t i = n; i-- > 0;) {
            Rational s(a[i][n + col]);
            for (std::size_t j = i + 1; j < n; ++j) s -= Rational(a[i][j]) * x(j, col);
            x(i, col) = s / Rational(a[i][i]);
        }
    }
    return x;
}

Vector kernel_vector(const Matrix& m)
{
    const std::size_t n = m.cols();
    auto a = integer_rows(m, nullptr);
    int swaps = 0;
    auto piv = bareiss(a, n, swaps, nullptr);
    require(piv.size() + 1 == n, ErrorKind::singular, "kernel_vector: kernel is not one-dimensional");
    std::size_t free_col = 0;
    for (std::size_t c = 0, p = 0; c < n; ++c) {
        if (p < piv.size() && piv[p] == c) { ++p; continue; }
        free_col = c;
        break;
    }
    Vector x(n, Rational(0));
    x[free_col] = 1;
    for (std::size_t i = piv.size(); i-- > 0;) {
        std::size_t c = piv[i];
        Rational s = 0;
        for (std::size_t j = c + 1; j < n; ++j) s -= Rational(a[i][j]) * x[j];
        x[c] = s / Rational(a[i][c]);
    }
    return x;
}

bool in_linear_span(const std::vector<Vector>& points, const Vector& b)
{
    for (const auto& p : points) require(p.size() == b.size(), ErrorKind::dimension, "in_linear_span: dimension mismatch");
    if (points.empty()) {
        return std::all_of(b.begin(), b.end(), [](const Rational& x) { return x == 0; });
    }
    Matrix p = Matrix::from_columns(points, b.size());
    auto with_b = points;
    with_b.push_back(b);
    return rank(p) == rank(Matrix::from_columns(with_b, b.size()));
}

}  // namespace ccp
