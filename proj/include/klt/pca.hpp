#ifndef KLT_PCA_HPP
#define KLT_PCA_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "klt/data.hpp"
#include "klt/matrix.hpp"

namespace klt::pca {

/// Fitted Karhunen-Loeve / PCA basis. `feature_matrix` holds the covariance
/// eigenvectors as ROWS, ordered by descending eigenvalue (the row feature
/// matrix); keep that orientation in mind when composing with it.
struct PcaModel {
    Vector mean;
    Matrix feature_matrix; // d x d, rows orthonormal
    std::vector<double> eigenvalues;
};

/// Weighted system G = sum_a w_a |f_a><f_a| over unit vectors f_a.
class FrameOperator {
  public:
    /// `vectors` columns must be unit within 1e-10; weights nonnegative.
    FrameOperator(Matrix vectors, Vector weights);

    const Matrix& vectors() const { return vectors_; }
    const Vector& weights() const { return weights_; }
    double weight_sum() const;

    /// Assembles the operator matrix sum_a w_a f_a f_a^T.
    Matrix assemble() const;

  private:
    Matrix vectors_; // d x n_frame, columns f_a
    Vector weights_;
};

/// Population-covariance PCA over column samples: mean with 1/n, covariance
/// C = (1/n) B B^T for centered B, eigensystem from the Jacobi solver.
PcaModel fit(const Matrix& samples);

/// Y = A (X - mean), the mean subtracted from each column.
Matrix transform(const PcaModel& model, const Matrix& x);

/// X' = A_l^T Y_l + mean using the top-l rows of A (and of Y).
Matrix reconstruct(const PcaModel& model, const Matrix& y, std::size_t l);

/// Residual of projecting onto the first n columns of `onb`:
/// tr(G (I - sum_{i<=n} |psi_i><psi_i|)).
double residual_error(const Matrix& g, const Matrix& onb, std::size_t n);

struct FrameBounds {
    double c1 = 0.0;
    double c2 = 0.0;
    bool spanning = false;
};

/// Frame constants of the column system: extreme eigenvalues of
/// S = sum |h_a><h_a|. When the columns fail to span, c1 is reported as 0
/// with spanning = false.
FrameBounds frame_bounds(const Matrix& vectors);

struct ColorPca {
    PcaModel model;
    std::array<data::GrayImage, 3> planes; // each affinely rescaled to [0,1]
    Matrix scores;                         // raw 3 x (w*h) transform output
};

/// PCA across the three color planes of an RGB raster given as a
/// 3 x (width*height) sample matrix with entries in [0,1]. Row k of the raw
/// scores is reshaped row-major to plane k.
ColorPca color_pca(const Matrix& rgb, std::size_t width, std::size_t height);

} // namespace klt::pca

#endif
