#ifndef KLT_MATRIX_HPP
#define KLT_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace klt {

using Vector = std::vector<double>;

/// Dense real matrix, row-major storage. Public constructors reject
/// non-finite entries; shape is immutable after construction.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols); // zero-filled
    Matrix(std::size_t rows, std::size_t cols, Vector entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }

    const double* row_ptr(std::size_t i) const { return entries_.data() + i * cols_; }
    double* row_ptr(std::size_t i) { return entries_.data() + i * cols_; }
    const Vector& entries() const { return entries_; }

    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    void set_row(std::size_t i, const Vector& v);
    void set_col(std::size_t j, const Vector& v);

    Matrix transpose() const;
    double trace() const;
    double max_abs() const;
    bool is_symmetric(double tol) const; // tol relative to max |entry|

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    Matrix operator*(const Matrix& other) const;
    Vector operator*(const Vector& v) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector entries_;

    void check_finite() const;
};

// Small vector helpers shared across the library.
double dot(const Vector& a, const Vector& b);
double norm(const Vector& v);
Vector operator-(const Vector& a, const Vector& b);

/// |u><v| as a matrix: entry (i,j) = u_i * v_j.
Matrix outer(const Vector& u, const Vector& v);

} // namespace klt

#endif
