#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wavegen/filterbank.hpp"

namespace wavegen {

struct SolverConfig {
  /// Half-length of the filter to solve for (2n taps).
  int n = 0;
  /// Stop threshold on the total absolute residual.
  double epsilon = 1e-13;
  int max_sweeps = 20000;
  std::uint64_t seed = 0;
  /// Taps held fixed during solving, keyed by 1-based position in 1..2n.
  std::map<int, double> pinned;
  /// Explicit starting point; bypasses the random draw when set.
  std::optional<Filter> init;
};

enum class SolveStatus { Converged, MaxSweeps };

struct SweepRecord {
  int sweep = 0;  // 1-based sweep index
  double lyapunov = 0.0;
  double total_abs = 0.0;
};

struct ConvergenceTrace {
  std::vector<SweepRecord> records;  // one per executed sweep
  SolveStatus status = SolveStatus::MaxSweeps;
  int sweeps_used = 0;
  /// Coordinate updates skipped because the least-squares denominator was
  /// degenerate (the objective is flat in that tap).
  std::uint64_t degenerate_skips = 0;
};

struct SolveResult {
  Filter filter;
  ResidualReport report;
  ConvergenceTrace trace;
  SolverConfig config;
};

/// Replaces tap `position` (1-based) with the least-squares minimizer of the
/// descent objective over that tap, all other taps held fixed. Leaves the tap
/// unchanged when the denominator is degenerate (< 1e-30).
Filter coordinate_update(const Filter& f, int position);

/// One full pass: coordinate_update for positions 1..2n in ascending order,
/// skipping pinned positions. When nothing is pinned the result is rescaled
/// to unit norm; throws std::domain_error on a zero vector.
Filter sweep(const Filter& f, const std::vector<int>& pinned_positions);

/// Iterates sweeps from a seeded random start (or config.init) until the
/// total absolute residual drops below epsilon or max_sweeps is reached.
/// Pinned taps are written after initialization and never move; with pins
/// present the per-sweep normalization is skipped.
SolveResult solve(const SolverConfig& config);

struct ZeroDivisorError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Closed-form completion of a 6-tap filter from taps 1, 5 and 6: returns
/// [l1, l2, l3, l4, l5, l6] satisfying the two orthogonality equations and
/// the parity equation (the unit-norm condition is not enforced; rescaling
/// the whole vector preserves all three). Throws ZeroDivisorError when
/// |l6| < 1e-12 or the completion denominator is below 1e-12.
Filter closed_form_n3(double l1, double l5, double l6);

}  // namespace wavegen
