#include "klt/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "klt/errors.hpp"

namespace klt {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw InvalidInput("Matrix: entry count does not match rows*cols");
    check_finite();
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InvalidInput("Matrix: ragged initializer rows");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
    check_finite();
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void Matrix::check_finite() const {
    for (double x : entries_)
        if (!std::isfinite(x))
            throw InvalidInput("Matrix: non-finite entry");
}

Vector Matrix::row(std::size_t i) const {
    return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_row(std::size_t i, const Vector& v) {
    if (v.size() != cols_) throw InvalidInput("set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void Matrix::set_col(std::size_t j, const Vector& v) {
    if (v.size() != rows_) throw InvalidInput("set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::trace() const {
    double s = 0.0;
    std::size_t n = rows_ < cols_ ? rows_ : cols_;
    for (std::size_t i = 0; i < n; ++i) s += (*this)(i, i);
    return s;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : entries_) m = std::max(m, std::abs(x));
    return m;
}

bool Matrix::is_symmetric(double tol) const {
    if (rows_ != cols_) return false;
    double scale = std::max(1.0, max_abs());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidInput("Matrix +: shape mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidInput("Matrix -: shape mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : entries_) x *= s;
    return *this;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_)
        throw InvalidInput("Matrix *: inner dimension mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* a = row_ptr(i);
        double* o = out.row_ptr(i);
        for (std::size_t k = 0; k < cols_; ++k) {
            double aik = a[k];
            if (aik == 0.0) continue;
            const double* b = other.row_ptr(k);
            for (std::size_t j = 0; j < other.cols_; ++j) o[j] += aik * b[j];
        }
    }
    return out;
}

Vector Matrix::operator*(const Vector& v) const {
    if (v.size() != cols_) throw InvalidInput("Matrix * vector: dimension mismatch");
    Vector out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* a = row_ptr(i);
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += a[j] * v[j];
        out[i] = s;
    }
    return out;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidInput("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidInput("vector -: length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Matrix outer(const Vector& u, const Vector& v) {
    Matrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
    return m;
}

} // namespace klt
