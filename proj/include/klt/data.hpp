#ifndef KLT_DATA_HPP
#define KLT_DATA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "klt/matrix.hpp"

namespace klt::data {

/// Two-class point cloud in R^3: label 0 on the shell 0.6 < |x|^2 < 1,
/// label 1 in the ball |x|^2 < 0.2. Points are columns.
struct LabeledCloud {
    Matrix points; // 3 x n
    std::vector<int> labels;
    std::uint64_t seed = 0;
};

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    Vector pixels; // row-major, values in [0,1]

    GrayImage() = default;
    GrayImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, 0.0) {}
    double at(std::size_t r, std::size_t c) const { return pixels[r * width + c]; }
    double& at(std::size_t r, std::size_t c) { return pixels[r * width + c]; }
};

/// Rotation sequence of one ellipse; image k is rotated by angles[k] = k*pi/n.
struct ImageStack {
    std::vector<GrayImage> images;
    std::vector<double> angles;

    /// Unrolls each image row-major into a column; (w*h) x n_images.
    Matrix as_matrix() const;
};

/// Uniform samples by rejection from the cube [-1,1]^3: first n_shell points
/// accepted into the shell region, then n_ball into the ball.
LabeledCloud gen_shell_ball(std::size_t n_shell, std::size_t n_ball, std::uint64_t seed);

/// Filled axis-centered ellipse with pixel semi-axes (a, b), a > b, rotated
/// by k*pi/n_images, anti-aliased by 2x2 supersampling.
ImageStack gen_rotated_ellipses(std::size_t n_images, std::size_t resolution,
                                double semi_major, double semi_minor);

/// Defaults a = 0.35*resolution, b = 0.15*resolution.
ImageStack gen_rotated_ellipses(std::size_t n_images, std::size_t resolution);

/// CSV: comma-separated numeric rows (row = sample, column = feature); a
/// non-numeric first line is treated as a header and skipped on read.
/// Values are written with 17 significant digits so round trips are exact.
Matrix read_csv(const std::string& path);
void write_csv(const std::string& path, const Matrix& m,
               const std::vector<std::string>& header = {});

/// PGM, formats P2 (ASCII) and P5 (binary), maxval 255. Writing quantizes
/// to round(v*255); reading maps p -> p/255.
GrayImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const GrayImage& img, bool binary = true);

} // namespace klt::data

#endif
