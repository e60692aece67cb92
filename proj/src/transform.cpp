#include "wavegen/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavegen {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Wrap a 1-based index into 0-based storage of length m.
std::size_t wrap_index(std::ptrdiff_t idx_1based, std::size_t m) {
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(m);
  std::ptrdiff_t r = (idx_1based - 1) % len;
  if (r < 0) r += len;
  return static_cast<std::size_t>(r);
}

double resolve_sample(std::span<const double> s, std::ptrdiff_t idx_1based, BoundaryMode mode) {
  if (mode == BoundaryMode::Periodic || idx_1based >= 1) {
    return s[wrap_index(idx_1based, s.size())];
  }
  // Left mirror duplicating the first sample: index 0 -> s_1, -1 -> s_2, ...
  return s[static_cast<std::size_t>(-idx_1based)];
}

// Core of analyze_1d on a raw span; p_out/q_out have length m/2.
void analyze_span(std::span<const double> s, std::span<const double> l, BoundaryMode mode,
                  std::span<double> p_out, std::span<double> q_out) {
  const std::size_t len = l.size();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(len / 2);
  const std::size_t half = s.size() / 2;
  for (std::size_t j = 1; j <= half; ++j) {
    const std::ptrdiff_t base = 2 * (static_cast<std::ptrdiff_t>(j) - n);
    double p = 0.0;
    double q = 0.0;
    for (std::size_t t = 1; t <= len; ++t) {
      const double v = resolve_sample(s, base + static_cast<std::ptrdiff_t>(t), mode);
      p += v * l[len - t];
      q += (t % 2 == 1) ? v * l[t - 1] : -v * l[t - 1];
    }
    p_out[j - 1] = p;
    q_out[j - 1] = q;
  }
}

// Core of synthesize_1d; p/q have length m/2, out has length m. Coefficient
// indices wrap modulo m/2.
void synthesize_span(std::span<const double> p, std::span<const double> q,
                     std::span<const double> l, std::span<double> out) {
  const std::size_t half = p.size();
  const std::size_t n = l.size() / 2;
  auto pw = [&](std::size_t i_1based) { return p[wrap_index(static_cast<std::ptrdiff_t>(i_1based), half)]; };
  auto qw = [&](std::size_t i_1based) { return q[wrap_index(static_cast<std::ptrdiff_t>(i_1based), half)]; };
  for (std::size_t k = 1; k <= half; ++k) {
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t t = 1; t <= n; ++t) {
      const double lo = l[2 * t - 2];
      const double le = l[2 * t - 1];
      const double pv = pw(k + t - 1);
      const double qv = qw(n + k - t);
      odd += lo * qv + le * pv;
      even += lo * pv - le * qv;
    }
    out[2 * k - 2] = odd;
    out[2 * k - 1] = even;
  }
}

void check_signal_vs_bank(std::size_t m, int n) {
  if (m < 4 * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("signal length " + std::to_string(m) +
                                " violates the m >= 4n rule for filter half-length n = " +
                                std::to_string(n));
  }
}

}  // namespace

Signal1D::Signal1D(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty() || samples_.size() % 2 != 0) {
    throw std::invalid_argument("Signal1D: length must be even and positive");
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Signal1D: samples must be finite");
  }
}

Image2D::Image2D(std::size_t rows, std::size_t cols, std::vector<double> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (rows_ == 0 || cols_ == 0 || rows_ % 2 != 0 || cols_ % 2 != 0) {
    throw std::invalid_argument("Image2D: dimensions must be positive and even");
  }
  if (pixels_.size() != rows_ * cols_) {
    throw std::invalid_argument("Image2D: pixel count does not match dimensions");
  }
  for (double v : pixels_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Image2D: pixels must be finite");
  }
}

std::vector<double> extend(const Signal1D& s, int half_length) {
  require(half_length >= 1, "extend: half_length must be >= 1");
  const std::size_t m = s.size();
  const std::size_t prefix = 2 * static_cast<std::size_t>(half_length) - 1;
  if (m < prefix) {
    throw std::invalid_argument("extend: signal shorter than 2n-1");
  }
  std::vector<double> out;
  out.reserve(m + prefix);
  for (std::size_t i = prefix; i-- > 0;) out.push_back(s[i]);
  out.insert(out.end(), s.samples().begin(), s.samples().end());
  return out;
}

Decomposition1D analyze_1d(const Signal1D& s, const FilterBank& bank, BoundaryMode mode) {
  check_signal_vs_bank(s.size(), bank.l_d.n());
  Decomposition1D d;
  d.mode = mode;
  d.m = s.size();
  d.p.resize(s.size() / 2);
  d.q.resize(s.size() / 2);
  analyze_span(s.span(), bank.l_d.span(), mode, d.p, d.q);
  return d;
}

Synthesis1D synthesize_1d(const Decomposition1D& d, const FilterBank& bank) {
  if (d.p.size() != d.q.size() || d.p.empty() || d.m != 2 * d.p.size()) {
    throw std::invalid_argument("synthesize_1d: inconsistent decomposition shape");
  }
  check_signal_vs_bank(d.m, bank.l_d.n());
  std::vector<double> out(d.m);
  synthesize_span(d.p, d.q, bank.l_d.span(), out);

  std::size_t approximate_from = d.m;
  const std::size_t n = bank.l_d.size() / 2;
  if (d.mode == BoundaryMode::PaperExtension && n >= 2) {
    // Reconstruction windows for trailing samples reference coefficients past
    // m/2, which only wrap; those samples are approximate.
    approximate_from = d.m - 2 * n + 2;
  }
  return Synthesis1D{Signal1D(std::move(out)), approximate_from};
}

Decomposition2D analyze_2d(const Image2D& img, const FilterBank& bank, BoundaryMode mode) {
  const int n = bank.l_d.n();
  check_signal_vs_bank(img.rows(), n);
  check_signal_vs_bank(img.cols(), n);
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  const std::size_t hr = rows / 2;
  const std::size_t hc = cols / 2;
  const auto l = bank.l_d.span();

  // Pass 1: filter along each row.
  Plane row_low(rows, hc);
  Plane row_high(rows, hc);
  for (std::size_t r = 0; r < rows; ++r) {
    analyze_span(img.span().subspan(r * cols, cols), l, mode,
                 std::span<double>(&row_low.at(r, 0), hc), std::span<double>(&row_high.at(r, 0), hc));
  }

  // Pass 2: filter along each column of both halves.
  Decomposition2D d;
  d.mode = mode;
  d.rows = rows;
  d.cols = cols;
  d.main = Plane(hr, hc);
  d.horizontal = Plane(hr, hc);
  d.vertical = Plane(hr, hc);
  d.diagonal = Plane(hr, hc);

  std::vector<double> col(rows);
  std::vector<double> p(hr);
  std::vector<double> q(hr);
  for (std::size_t c = 0; c < hc; ++c) {
    for (std::size_t r = 0; r < rows; ++r) col[r] = row_low.at(r, c);
    analyze_span(col, l, mode, p, q);
    for (std::size_t r = 0; r < hr; ++r) {
      d.main.at(r, c) = p[r];
      d.horizontal.at(r, c) = q[r];
    }
    for (std::size_t r = 0; r < rows; ++r) col[r] = row_high.at(r, c);
    analyze_span(col, l, mode, p, q);
    for (std::size_t r = 0; r < hr; ++r) {
      d.vertical.at(r, c) = p[r];
      d.diagonal.at(r, c) = q[r];
    }
  }
  return d;
}

Image2D synthesize_2d(const Decomposition2D& d, const FilterBank& bank) {
  const std::size_t hr = d.main.rows;
  const std::size_t hc = d.main.cols;
  if (d.horizontal.rows != hr || d.horizontal.cols != hc || d.vertical.rows != hr ||
      d.vertical.cols != hc || d.diagonal.rows != hr || d.diagonal.cols != hc || hr == 0 ||
      hc == 0 || d.rows != 2 * hr || d.cols != 2 * hc) {
    throw std::invalid_argument("synthesize_2d: inconsistent plane shapes");
  }
  const int n = bank.l_d.n();
  check_signal_vs_bank(d.rows, n);
  check_signal_vs_bank(d.cols, n);
  const std::size_t rows = d.rows;
  const std::size_t cols = d.cols;
  const auto l = bank.l_d.span();

  // Invert the column pass.
  Plane row_low(rows, hc);
  Plane row_high(rows, hc);
  std::vector<double> p(hr);
  std::vector<double> q(hr);
  std::vector<double> col(rows);
  for (std::size_t c = 0; c < hc; ++c) {
    for (std::size_t r = 0; r < hr; ++r) {
      p[r] = d.main.at(r, c);
      q[r] = d.horizontal.at(r, c);
    }
    synthesize_span(p, q, l, col);
    for (std::size_t r = 0; r < rows; ++r) row_low.at(r, c) = col[r];
    for (std::size_t r = 0; r < hr; ++r) {
      p[r] = d.vertical.at(r, c);
      q[r] = d.diagonal.at(r, c);
    }
    synthesize_span(p, q, l, col);
    for (std::size_t r = 0; r < rows; ++r) row_high.at(r, c) = col[r];
  }

  // Invert the row pass.
  std::vector<double> pixels(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    synthesize_span(std::span<const double>(&row_low.at(r, 0), hc),
                    std::span<const double>(&row_high.at(r, 0), hc), l,
                    std::span<double>(pixels.data() + r * cols, cols));
  }
  return Image2D(rows, cols, std::move(pixels));
}

double reconstruction_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("reconstruction_error: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double reconstruction_error(const Signal1D& a, const Signal1D& b) {
  return reconstruction_error(a.span(), b.span());
}

double reconstruction_error(const Image2D& a, const Image2D& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("reconstruction_error: shape mismatch");
  }
  return reconstruction_error(a.span(), b.span());
}

SubbandEnergy subband_energy(const Decomposition2D& d) {
  auto plane_energy = [](const Plane& pl) {
    double e = 0.0;
    for (double v : pl.v) e += v * v;
    return e;
  };
  SubbandEnergy e;
  e.main.energy = plane_energy(d.main);
  e.horizontal.energy = plane_energy(d.horizontal);
  e.vertical.energy = plane_energy(d.vertical);
  e.diagonal.energy = plane_energy(d.diagonal);
  e.total = e.main.energy + e.horizontal.energy + e.vertical.energy + e.diagonal.energy;
  if (e.total > 0.0) {
    e.main.fraction = e.main.energy / e.total;
    e.horizontal.fraction = e.horizontal.energy / e.total;
    e.vertical.fraction = e.vertical.energy / e.total;
    e.diagonal.fraction = e.diagonal.energy / e.total;
  }
  return e;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != size_) throw std::invalid_argument("DenseMatrix: size mismatch");
  std::vector<double> y(size_, 0.0);
  for (std::size_t r = 0; r < size_; ++r) {
    double acc = 0.0;
    const double* row = a_.data() + r * size_;
    for (std::size_t c = 0; c < size_; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

std::vector<double> DenseMatrix::multiply_transpose(std::span<const double> x) const {
  if (x.size() != size_) throw std::invalid_argument("DenseMatrix: size mismatch");
  std::vector<double> y(size_, 0.0);
  for (std::size_t c = 0; c < size_; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < size_; ++r) acc += a_[r * size_ + c] * x[r];
    y[c] = acc;
  }
  return y;
}

DenseMatrix DenseMatrix::times_transpose() const {
  DenseMatrix out(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      double acc = 0.0;
      const double* ri = a_.data() + i * size_;
      const double* rj = a_.data() + j * size_;
      for (std::size_t t = 0; t < size_; ++t) acc += ri[t] * rj[t];
      out.at(i, j) = acc;
    }
  }
  return out;
}

double DenseMatrix::max_abs_diff_identity() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(at(i, j) - target));
    }
  }
  return worst;
}

DenseMatrix build_analysis_matrix(const FilterBank& bank, std::size_t m) {
  if (m % 2 != 0) throw std::invalid_argument("build_analysis_matrix: m must be even");
  check_signal_vs_bank(m, bank.l_d.n());
  const auto l = bank.l_d.span();
  const std::size_t len = l.size();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(len / 2);
  const std::size_t half = m / 2;

  DenseMatrix w(m);
  for (std::size_t j = 1; j <= half; ++j) {
    const std::ptrdiff_t base = 2 * (static_cast<std::ptrdiff_t>(j) - n);
    for (std::size_t t = 1; t <= len; ++t) {
      const std::size_t col = wrap_index(base + static_cast<std::ptrdiff_t>(t), m);
      w.at(j - 1, col) += l[len - t];
      w.at(half + j - 1, col) += (t % 2 == 1) ? l[t - 1] : -l[t - 1];
    }
  }
  return w;
}

std::vector<Decomposition2D> analyze_2d_multilevel(const Image2D& img, const FilterBank& bank,
                                                   BoundaryMode mode, int levels) {
  require(levels >= 1, "analyze_2d_multilevel: levels must be >= 1");
  std::vector<Decomposition2D> out;
  out.reserve(static_cast<std::size_t>(levels));
  Image2D current = img;
  for (int lvl = 0; lvl < levels; ++lvl) {
    out.push_back(analyze_2d(current, bank, mode));
    if (lvl + 1 < levels) {
      const Plane& main = out.back().main;
      current = Image2D(main.rows, main.cols, main.v);
    }
  }
  return out;
}

Image2D synthesize_2d_multilevel(std::span<const Decomposition2D> levels, const FilterBank& bank) {
  require(!levels.empty(), "synthesize_2d_multilevel: no levels");
  Image2D img = synthesize_2d(levels.back(), bank);
  for (std::size_t i = levels.size() - 1; i-- > 0;) {
    Decomposition2D d = levels[i];
    if (d.main.rows != img.rows() || d.main.cols != img.cols()) {
      throw std::invalid_argument("synthesize_2d_multilevel: level shapes do not chain");
    }
    d.main.v = img.pixels();
    img = synthesize_2d(d, bank);
  }
  return img;
}

}  // namespace wavegen
