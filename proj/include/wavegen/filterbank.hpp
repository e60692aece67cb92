#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wavegen {

/// An even-length sequence of real filter taps. Tap positions are 1-based
/// wherever the library reports them (residual labels, pinning maps); storage
/// is 0-based, left to right.
class Filter {
 public:
  /// Throws std::invalid_argument unless `taps` has even length >= 2 and
  /// every value is finite.
  explicit Filter(std::vector<double> taps);

  std::size_t size() const { return taps_.size(); }
  /// Half-length: size() == 2 * n().
  int n() const { return static_cast<int>(taps_.size() / 2); }
  double operator[](std::size_t i) const { return taps_[i]; }
  const std::vector<double>& taps() const { return taps_; }
  std::span<const double> span() const { return taps_; }

  bool operator==(const Filter&) const = default;

 private:
  std::vector<double> taps_;
};

/// Decomposition/reconstruction quadruple. Fully determined by l_d:
/// h_d = -qmf(l_d), l_r = rev(l_d), h_r = qmf(l_r). Build with derive_bank().
struct FilterBank {
  Filter l_d;
  Filter h_d;
  Filter l_r;
  Filter h_r;
};

/// Quadrature mirror operator: out_i = sign_i * f_(L+1-i) with signs
/// alternating +, -, +, ... from the first output position (1-based).
Filter qmf(const Filter& f);

/// Plain reversal. rev(rev(f)) == f.
Filter rev(const Filter& f);

Filter negate(const Filter& f);

double dot(const Filter& a, const Filter& b);

FilterBank derive_bank(const Filter& l_d);

/// Residuals of the constraint system a candidate low-pass filter must
/// satisfy: n-1 double-shift orthogonality products, the odd/even parity
/// balance, and the unit-norm condition.
struct ResidualReport {
  /// orthogonality[k-1] = sum_j l_j * l_(j+2k) for shift k = 1..n-1,
  /// stored in ascending shift order. (Classical listings of the system go
  /// largest shift first; total_abs is independent of the ordering.)
  /// Empty for n = 1.
  std::vector<double> orthogonality;
  /// Sum of odd-position taps minus sum of even-position taps (1-based).
  double parity = 0.0;
  /// Sum of squared taps minus 1.
  double norm = 0.0;
  /// Sum of the absolute values of all n+1 residuals above.
  double total_abs = 0.0;
};

ResidualReport constraint_residuals(const Filter& l_d);

/// Descent objective of the coordinate solver: the sum of squared residuals
/// of the orthogonality and parity equations (the norm equation is excluded).
double lyapunov(const Filter& l_d);

namespace detail {

/// Writes the n-1 orthogonality residuals followed by the parity residual
/// into `out` (size must be n). Shared by lyapunov() and the solver.
void first_n_residuals(std::span<const double> taps, std::span<double> out);

double norm_residual(std::span<const double> taps);

}  // namespace detail

}  // namespace wavegen
