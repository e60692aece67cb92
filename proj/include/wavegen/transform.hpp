#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wavegen/filterbank.hpp"

namespace wavegen {

/// How sample indices outside the signal are resolved during analysis.
///
/// Periodic: every out-of-range index wraps modulo the signal length. This is
/// the exactly invertible path: the analysis operator is orthogonal whenever
/// the filter satisfies the constraint system.
///
/// PaperExtension: indices left of the signal resolve through a mirror
/// extension that duplicates the first sample ([.., s2, s1 | s1, s2, ..]);
/// indices past the right end wrap periodically. No right-side extension is
/// defined, so reconstruction is exact except for a short flagged suffix.
enum class BoundaryMode : std::uint8_t { Periodic = 0, PaperExtension = 1 };

/// Even-length 1D signal with finite samples.
class Signal1D {
 public:
  explicit Signal1D(std::vector<double> samples);

  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<double>& samples() const { return samples_; }
  std::span<const double> span() const { return samples_; }

  bool operator==(const Signal1D&) const = default;

 private:
  std::vector<double> samples_;
};

/// Row-major real image with positive even dimensions.
class Image2D {
 public:
  Image2D(std::size_t rows, std::size_t cols, std::vector<double> pixels);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return pixels_[r * cols_ + c]; }
  const std::vector<double>& pixels() const { return pixels_; }
  std::span<const double> span() const { return pixels_; }

  bool operator==(const Image2D&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> pixels_;
};

/// Rectangular coefficient plane (dimensions need not be even).
struct Plane {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;

  Plane() = default;
  Plane(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }

  bool operator==(const Plane&) const = default;
};

struct Decomposition1D {
  std::vector<double> p;  // low-pass coefficients, length m/2
  std::vector<double> q;  // high-pass coefficients, length m/2
  BoundaryMode mode = BoundaryMode::Periodic;
  std::size_t m = 0;  // original signal length
};

/// Single-level 2D decomposition. `main` is low-pass in both directions;
/// `horizontal` is the plane that concentrates energy for an image of
/// horizontal stripes (low-pass along rows, high-pass along columns);
/// `vertical` is the opposite pairing; `diagonal` is high-pass in both.
struct Decomposition2D {
  Plane main;
  Plane horizontal;
  Plane vertical;
  Plane diagonal;
  BoundaryMode mode = BoundaryMode::Periodic;
  std::size_t rows = 0;  // original image dimensions
  std::size_t cols = 0;
};

/// Reconstructed signal plus boundary metadata. Samples at indices >=
/// approximate_from (0-based) had reconstruction windows that crossed the
/// truncated right coefficient boundary in PaperExtension mode and are only
/// approximate; approximate_from == signal.size() when every sample is exact.
struct Synthesis1D {
  Signal1D signal;
  std::size_t approximate_from = 0;
};

/// Left extension: prepends the first 2n-1 samples in reverse, duplicating
/// the first sample. Output length m + 2n - 1. Throws when m < 2n - 1.
std::vector<double> extend(const Signal1D& s, int half_length);

/// Splits `s` into low-pass and high-pass coefficient vectors of length m/2.
/// Requires m >= 4n for the bank in use.
Decomposition1D analyze_1d(const Signal1D& s, const FilterBank& bank, BoundaryMode mode);

/// Inverse of analyze_1d; exact to floating-point error in Periodic mode for
/// filters satisfying the constraint system.
Synthesis1D synthesize_1d(const Decomposition1D& d, const FilterBank& bank);

/// Separable single-level 2D decomposition: rows first, then columns of each
/// half. Requires rows >= 4n and cols >= 4n.
Decomposition2D analyze_2d(const Image2D& img, const FilterBank& bank, BoundaryMode mode);

Image2D synthesize_2d(const Decomposition2D& d, const FilterBank& bank);

/// Maximum absolute entrywise difference. Throws on shape mismatch.
double reconstruction_error(std::span<const double> a, std::span<const double> b);
double reconstruction_error(const Signal1D& a, const Signal1D& b);
double reconstruction_error(const Image2D& a, const Image2D& b);

struct PlaneEnergy {
  double energy = 0.0;
  double fraction = 0.0;  // of the total; 0 when the total is 0
};

struct SubbandEnergy {
  PlaneEnergy main;
  PlaneEnergy horizontal;
  PlaneEnergy vertical;
  PlaneEnergy diagonal;
  double total = 0.0;
};

SubbandEnergy subband_energy(const Decomposition2D& d);

/// Small dense square matrix, row-major.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t size) : size_(size), a_(size * size, 0.0) {}

  std::size_t size() const { return size_; }
  double& at(std::size_t r, std::size_t c) { return a_[r * size_ + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * size_ + c]; }
  const std::vector<double>& data() const { return a_; }

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> multiply_transpose(std::span<const double> x) const;
  DenseMatrix times_transpose() const;
  /// max |a_ij - delta_ij|
  double max_abs_diff_identity() const;

 private:
  std::size_t size_ = 0;
  std::vector<double> a_;
};

/// Dense m-by-m matrix W of the Periodic analysis operator: rows 1..m/2 are
/// the low-pass coefficient functionals, rows m/2+1..m the high-pass ones, so
/// W*s == concat(p, q). Used as an independent oracle for the transforms.
/// Requires even m >= 4n.
DenseMatrix build_analysis_matrix(const FilterBank& bank, std::size_t m);

/// Convenience multi-level driver: level i+1 re-decomposes level i's main
/// plane. Element 0 is the first level. Throws when a level's input
/// dimensions are odd or smaller than 4n.
std::vector<Decomposition2D> analyze_2d_multilevel(const Image2D& img, const FilterBank& bank,
                                                   BoundaryMode mode, int levels);

/// Inverse of analyze_2d_multilevel. The main planes of all but the deepest
/// level are ignored (they are reconstructed from the deeper levels).
Image2D synthesize_2d_multilevel(std::span<const Decomposition2D> levels, const FilterBank& bank);

}  // namespace wavegen
