#include "wavegen/solver.hpp"

#include <cmath>
#include <random>
#include <string>

namespace wavegen {

namespace {

constexpr double kDegenerateDenominator = 1e-30;
constexpr double kMinNorm = 1e-300;

double l2_norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

// Least-squares update of tap `i` (0-based) against the first n equations.
// `eq` is scratch for the residual values. Returns false when the update was
// skipped because the denominator was degenerate.
bool update_tap(std::vector<double>& l, std::size_t i, std::span<double> eq) {
  const std::size_t len = l.size();
  const std::size_t n = len / 2;
  detail::first_n_residuals(l, eq);

  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    double beta = 0.0;
    if (i + 2 * k < len) beta += l[i + 2 * k];
    if (i >= 2 * k) beta += l[i - 2 * k];
    num += (beta * l[i] - eq[k - 1]) * beta;
    den += beta * beta;
  }
  // Parity equation: coefficient +1 at odd 1-based positions, -1 at even.
  const double beta_parity = (i % 2 == 0) ? 1.0 : -1.0;
  num += (beta_parity * l[i] - eq[n - 1]) * beta_parity;
  den += 1.0;

  if (den < kDegenerateDenominator) return false;
  l[i] = num / den;
  return true;
}

// One Gauss-Seidel pass over positions 1..2n in ascending order.
void sweep_inplace(std::vector<double>& l, const std::vector<bool>& pinned_mask, bool any_pinned,
                   std::span<double> eq, std::uint64_t& degenerate_skips) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (pinned_mask[i]) continue;
    if (!update_tap(l, i, eq)) ++degenerate_skips;
  }
  if (!any_pinned) {
    const double norm = l2_norm(l);
    if (norm < kMinNorm) throw std::domain_error("sweep: cannot normalize zero vector");
    for (double& x : l) x /= norm;
  }
}

// Bit-reproducible uniform draw on [-1, 1).
double uniform_pm1(std::mt19937_64& eng) {
  const double u01 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return 2.0 * u01 - 1.0;
}

void validate_config(const SolverConfig& c) {
  if (c.n < 1) throw std::invalid_argument("solve: n must be >= 1");
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
    throw std::invalid_argument("solve: epsilon must be finite and positive");
  }
  if (c.max_sweeps < 1) throw std::invalid_argument("solve: max_sweeps must be >= 1");
  for (const auto& [pos, val] : c.pinned) {
    if (pos < 1 || pos > 2 * c.n) {
      throw std::invalid_argument("solve: pinned position " + std::to_string(pos) +
                                  " out of range 1.." + std::to_string(2 * c.n));
    }
    if (!std::isfinite(val)) throw std::invalid_argument("solve: pinned value must be finite");
  }
  if (c.init && c.init->n() != c.n) {
    throw std::invalid_argument("solve: init length does not match n");
  }
}

}  // namespace

Filter coordinate_update(const Filter& f, int position) {
  if (position < 1 || position > static_cast<int>(f.size())) {
    throw std::invalid_argument("coordinate_update: position out of range");
  }
  std::vector<double> l = f.taps();
  std::vector<double> eq(l.size() / 2);
  update_tap(l, static_cast<std::size_t>(position - 1), eq);
  return Filter(std::move(l));
}

Filter sweep(const Filter& f, const std::vector<int>& pinned_positions) {
  std::vector<bool> mask(f.size(), false);
  for (int pos : pinned_positions) {
    if (pos < 1 || pos > static_cast<int>(f.size())) {
      throw std::invalid_argument("sweep: pinned position out of range");
    }
    mask[static_cast<std::size_t>(pos - 1)] = true;
  }
  std::vector<double> l = f.taps();
  std::vector<double> eq(l.size() / 2);
  std::uint64_t skips = 0;
  sweep_inplace(l, mask, !pinned_positions.empty(), eq, skips);
  return Filter(std::move(l));
}

SolveResult solve(const SolverConfig& config) {
  validate_config(config);
  const std::size_t len = static_cast<std::size_t>(2 * config.n);

  std::vector<double> taps;
  if (config.init) {
    taps = config.init->taps();
  } else {
    std::mt19937_64 eng(config.seed);
    taps.resize(len);
    bool ok = false;
    for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
      for (double& t : taps) t = uniform_pm1(eng);
      const double norm = l2_norm(taps);
      if (norm >= kMinNorm) {
        for (double& t : taps) t /= norm;
        ok = true;
      }
    }
    if (!ok) throw std::runtime_error("solve: random initialization produced a zero vector");
  }
  for (const auto& [pos, val] : config.pinned) {
    taps[static_cast<std::size_t>(pos - 1)] = val;
  }

  std::vector<bool> mask(len, false);
  for (const auto& [pos, val] : config.pinned) mask[static_cast<std::size_t>(pos - 1)] = true;
  const bool any_pinned = !config.pinned.empty();

  ConvergenceTrace trace;
  trace.records.reserve(64);
  std::vector<double> eq(static_cast<std::size_t>(config.n));
  trace.status = SolveStatus::MaxSweeps;

  for (int s = 1; s <= config.max_sweeps; ++s) {
    sweep_inplace(taps, mask, any_pinned, eq, trace.degenerate_skips);

    detail::first_n_residuals(taps, eq);
    double lyap = 0.0;
    for (double r : eq) lyap += r * r;
    // Canonical stop metric: evaluate through the same path callers use.
    const ResidualReport rep = constraint_residuals(Filter(std::vector<double>(taps)));
    trace.records.push_back({s, lyap, rep.total_abs});
    if (rep.total_abs < config.epsilon) {
      trace.status = SolveStatus::Converged;
      break;
    }
  }
  trace.sweeps_used = static_cast<int>(trace.records.size());

  Filter filter(std::move(taps));
  ResidualReport report = constraint_residuals(filter);
  return SolveResult{std::move(filter), std::move(report), std::move(trace), config};
}

Filter closed_form_n3(double l1, double l5, double l6) {
  constexpr double kGuard = 1e-12;
  if (std::abs(l6) < kGuard) {
    throw ZeroDivisorError("closed_form_n3: |l6| below 1e-12");
  }
  const double l2 = -l1 * l5 / l6;
  const double a = l1 + l5;       // odd-tap partial sum entering the completion
  const double b = l2 + l6;       // even-tap counterpart
  if (std::abs(a + b) < kGuard) {
    throw ZeroDivisorError("closed_form_n3: completion denominator below 1e-12");
  }
  const double l3 = (b - a) * b / (a + b);
  const double l4 = -(b - a) * a / (a + b);
  return Filter({l1, l2, l3, l4, l5, l6});
}

}  // namespace wavegen
