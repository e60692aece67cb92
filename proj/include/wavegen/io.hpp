#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavegen/solver.hpp"
#include "wavegen/transform.hpp"

namespace wavegen {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or unrecognized file contents (bad magic, bad JSON, ...).
struct FormatError : IoError {
  using IoError::IoError;
};

/// Contents of a bank file: only the decomposition low-pass filter is stored;
/// the derived filters are always recomputed.
struct BankFile {
  int n = 0;
  std::vector<double> l_d;
  std::optional<std::string> name;
  std::optional<double> residual_total_abs;
  std::optional<bool> converged;
};

/// JSON object with format tag "wavegen-bank/1"; tap values are written with
/// full round-trip precision.
BankFile load_bank(const std::filesystem::path& path);
void save_bank(const std::filesystem::path& path, const BankFile& bank);

/// CSV with header `sweep,lyapunov,total_abs_residual`, one row per sweep,
/// floats printed with 17 significant digits.
void write_trace_csv(const std::filesystem::path& path, const ConvergenceTrace& trace);

/// One sample per line.
std::vector<double> read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples);

/// PGM (P2 or P5, maxval <= 255). Pixel values map to doubles unchanged.
Image2D read_pgm(const std::filesystem::path& path);
/// Writes binary (P5) PGM; values are rounded to nearest and clamped to 0..255.
void write_pgm(const std::filesystem::path& path, const Image2D& img);

/// Affine mapping used to render a coefficient plane as an 8-bit preview:
/// pixel = round((value - offset) * scale).
struct PreviewScale {
  double offset = 0.0;
  double scale = 0.0;
};
PreviewScale write_plane_preview_pgm(const std::filesystem::path& path, const Plane& plane);

/// Binary coefficient container, little-endian: magic "DRC1", u32 version=1,
/// u32 n, u32 rows, u32 cols, u8 mode, then the four planes (main,
/// horizontal, vertical, diagonal), each row-major float64.
void write_drc(const std::filesystem::path& path, const Decomposition2D& d, int n);
struct DrcFile {
  Decomposition2D decomposition;
  int n = 0;
};
DrcFile read_drc(const std::filesystem::path& path);

/// Writes via a temporary file in the same directory followed by a rename.
void atomic_write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace wavegen
