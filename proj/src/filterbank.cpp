#include "wavegen/filterbank.hpp"

#include <cmath>
#include <stdexcept>

namespace wavegen {

Filter::Filter(std::vector<double> taps) : taps_(std::move(taps)) {
  if (taps_.size() < 2 || taps_.size() % 2 != 0) {
    throw std::invalid_argument("Filter: tap count must be even and >= 2");
  }
  for (double t : taps_) {
    if (!std::isfinite(t)) {
      throw std::invalid_argument("Filter: taps must be finite");
    }
  }
}

Filter qmf(const Filter& f) {
  const std::size_t len = f.size();
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double v = f[len - 1 - i];
    out[i] = (i % 2 == 0) ? v : -v;
  }
  return Filter(std::move(out));
}

Filter rev(const Filter& f) {
  std::vector<double> out(f.taps().rbegin(), f.taps().rend());
  return Filter(std::move(out));
}

Filter negate(const Filter& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = -f[i];
  return Filter(std::move(out));
}

double dot(const Filter& a, const Filter& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: filter lengths differ");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

FilterBank derive_bank(const Filter& l_d) {
  Filter h_d = negate(qmf(l_d));
  Filter l_r = rev(l_d);
  Filter h_r = qmf(l_r);
  return FilterBank{l_d, std::move(h_d), std::move(l_r), std::move(h_r)};
}

ResidualReport constraint_residuals(const Filter& l_d) {
  const auto& l = l_d.taps();
  const std::size_t len = l.size();
  const int n = l_d.n();

  ResidualReport report;
  report.orthogonality.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (int k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j + 2 * static_cast<std::size_t>(k) < len; ++j) {
      s += l[j] * l[j + 2 * static_cast<std::size_t>(k)];
    }
    report.orthogonality.push_back(s);
  }

  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    if (i % 2 == 0) {
      odd += l[i];  // 1-based position i+1 is odd
    } else {
      even += l[i];
    }
  }
  report.parity = odd - even;

  double sq = 0.0;
  for (double t : l) sq += t * t;
  report.norm = sq - 1.0;

  double total = 0.0;
  for (double r : report.orthogonality) total += std::abs(r);
  total += std::abs(report.parity);
  total += std::abs(report.norm);
  report.total_abs = total;
  return report;
}

namespace detail {

void first_n_residuals(std::span<const double> taps, std::span<double> out) {
  const std::size_t len = taps.size();
  const std::size_t n = len / 2;
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j + 2 * k < len; ++j) s += taps[j] * taps[j + 2 * k];
    out[k - 1] = s;
  }
  double parity = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    parity += (i % 2 == 0) ? taps[i] : -taps[i];
  }
  out[n - 1] = parity;
}

double norm_residual(std::span<const double> taps) {
  double sq = 0.0;
  for (double t : taps) sq += t * t;
  return sq - 1.0;
}

}  // namespace detail

double lyapunov(const Filter& l_d) {
  const std::size_t n = l_d.size() / 2;
  std::vector<double> eq(n);
  detail::first_n_residuals(l_d.span(), eq);
  double acc = 0.0;
  for (double r : eq) acc += r * r;
  return acc;
}

}  // namespace wavegen
