#include "wavegen/io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wavegen {

namespace {

constexpr char kBankFormat[] = "wavegen-bank/1";
constexpr char kDrcMagic[4] = {'D', 'R', 'C', '1'};
constexpr std::uint32_t kDrcVersion = 1;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("cannot read " + path.string());
  return std::move(ss).str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void append_u32le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f64le(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint32_t u32le() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(byte()) << (8 * i);
    return v;
  }

  double f64le() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(byte()) << (8 * i);
    return std::bit_cast<double>(v);
  }

  std::uint8_t u8() {
    need(1);
    return byte();
  }

  bool at_end() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t count) {
    if (pos_ + count > data_.size()) throw FormatError("unexpected end of file");
  }
  std::uint8_t byte() { return static_cast<std::uint8_t>(data_[pos_++]); }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

void atomic_write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename temporary file onto " + path.string());
  }
}

BankFile load_bank(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw FormatError(path.string() + ": not a JSON object");
  }
  if (!j.contains("format") || !j["format"].is_string() || j["format"] != kBankFormat) {
    throw FormatError(path.string() + ": missing or unsupported format tag");
  }
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1) {
    throw FormatError(path.string() + ": bad n");
  }
  BankFile bank;
  bank.n = j["n"].get<int>();
  if (!j.contains("l_d") || !j["l_d"].is_array() ||
      j["l_d"].size() != static_cast<std::size_t>(2 * bank.n)) {
    throw FormatError(path.string() + ": l_d must be an array of 2n numbers");
  }
  for (const auto& item : j["l_d"]) {
    if (!item.is_number()) throw FormatError(path.string() + ": l_d entries must be numbers");
    const double v = item.get<double>();
    if (!std::isfinite(v)) throw FormatError(path.string() + ": l_d entries must be finite");
    bank.l_d.push_back(v);
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw FormatError(path.string() + ": name must be a string");
    bank.name = j["name"].get<std::string>();
  }
  if (j.contains("residual_total_abs")) {
    if (!j["residual_total_abs"].is_number()) {
      throw FormatError(path.string() + ": residual_total_abs must be a number");
    }
    bank.residual_total_abs = j["residual_total_abs"].get<double>();
  }
  if (j.contains("converged")) {
    if (!j["converged"].is_boolean()) {
      throw FormatError(path.string() + ": converged must be a boolean");
    }
    bank.converged = j["converged"].get<bool>();
  }
  return bank;
}

void save_bank(const std::filesystem::path& path, const BankFile& bank) {
  nlohmann::ordered_json j;
  j["format"] = kBankFormat;
  j["n"] = bank.n;
  j["l_d"] = bank.l_d;
  if (bank.name) j["name"] = *bank.name;
  if (bank.residual_total_abs) j["residual_total_abs"] = *bank.residual_total_abs;
  if (bank.converged) j["converged"] = *bank.converged;
  atomic_write_file(path, j.dump(2) + "\n");
}

void write_trace_csv(const std::filesystem::path& path, const ConvergenceTrace& trace) {
  std::string out = "sweep,lyapunov,total_abs_residual\n";
  for (const auto& rec : trace.records) {
    out += std::to_string(rec.sweep);
    out += ',';
    out += format_double(rec.lyapunov);
    out += ',';
    out += format_double(rec.total_abs);
    out += '\n';
  }
  atomic_write_file(path, out);
}

std::vector<double> read_signal_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<double> samples;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const char* begin = line.c_str() + start;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
      throw FormatError(path.string() + ": bad sample on line " + std::to_string(line_no));
    }
    samples.push_back(v);
  }
  return samples;
}

void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples) {
  std::string out;
  out.reserve(samples.size() * 20);
  for (double v : samples) {
    out += format_double(v);
    out += '\n';
  }
  atomic_write_file(path, out);
}

namespace {

// Header tokenizer for PGM: skips whitespace and '#' comments.
class PnmHeader {
 public:
  explicit PnmHeader(std::string_view data) : data_(data) {}

  std::string token() {
    skip();
    std::size_t start = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (start == pos_) throw FormatError("truncated PGM header");
    return std::string(data_.substr(start, pos_ - start));
  }

  long integer() {
    const std::string tok = token();
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') throw FormatError("bad integer in PGM header");
    return v;
  }

  // Position of the raster: one whitespace character past the current point.
  std::size_t raster_offset() {
    if (pos_ >= data_.size()) throw FormatError("truncated PGM file");
    return pos_ + 1;
  }

  std::string_view remainder() {
    skip();
    return data_.substr(pos_);
  }

 private:
  void skip() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

Image2D read_pgm(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  PnmHeader header(text);
  const std::string magic = header.token();
  if (magic != "P2" && magic != "P5") {
    throw FormatError(path.string() + ": not a PGM (P2/P5) file");
  }
  const long width = header.integer();
  const long height = header.integer();
  const long maxval = header.integer();
  if (width < 1 || height < 1) throw FormatError(path.string() + ": bad PGM dimensions");
  if (maxval < 1 || maxval > 255) {
    throw FormatError(path.string() + ": PGM maxval must be in 1..255");
  }
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> pixels;
  pixels.reserve(count);
  if (magic == "P5") {
    const std::size_t offset = header.raster_offset();
    if (text.size() < offset + count) throw FormatError(path.string() + ": truncated PGM raster");
    for (std::size_t i = 0; i < count; ++i) {
      pixels.push_back(static_cast<double>(static_cast<std::uint8_t>(text[offset + i])));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = header.integer();
      if (v < 0 || v > maxval) throw FormatError(path.string() + ": PGM sample out of range");
      pixels.push_back(static_cast<double>(v));
    }
  }
  try {
    return Image2D(static_cast<std::size_t>(height), static_cast<std::size_t>(width),
                   std::move(pixels));
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

namespace {

std::uint8_t quantize_u8(double v) {
  const double r = std::lround(v);
  if (r < 0.0) return 0;
  if (r > 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

std::string pgm_bytes(std::size_t rows, std::size_t cols, const double* values,
                      double offset, double scale) {
  std::string out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
  out.reserve(out.size() + rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    out.push_back(static_cast<char>(quantize_u8((values[i] - offset) * scale)));
  }
  return out;
}

}  // namespace

void write_pgm(const std::filesystem::path& path, const Image2D& img) {
  atomic_write_file(path, pgm_bytes(img.rows(), img.cols(), img.pixels().data(), 0.0, 1.0));
}

PreviewScale write_plane_preview_pgm(const std::filesystem::path& path, const Plane& plane) {
  double lo = plane.v.empty() ? 0.0 : plane.v.front();
  double hi = lo;
  for (double v : plane.v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  PreviewScale mapping;
  mapping.offset = lo;
  mapping.scale = (hi > lo) ? 255.0 / (hi - lo) : 0.0;
  atomic_write_file(path, pgm_bytes(plane.rows, plane.cols, plane.v.data(), mapping.offset,
                                    mapping.scale));
  return mapping;
}

void write_drc(const std::filesystem::path& path, const Decomposition2D& d, int n) {
  std::string out;
  out.append(kDrcMagic, sizeof(kDrcMagic));
  append_u32le(out, kDrcVersion);
  append_u32le(out, static_cast<std::uint32_t>(n));
  append_u32le(out, static_cast<std::uint32_t>(d.rows));
  append_u32le(out, static_cast<std::uint32_t>(d.cols));
  out.push_back(static_cast<char>(d.mode));
  for (const Plane* pl : {&d.main, &d.horizontal, &d.vertical, &d.diagonal}) {
    for (double v : pl->v) append_f64le(out, v);
  }
  atomic_write_file(path, out);
}

DrcFile read_drc(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  ByteReader reader(text);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(reader.u8());
  if (std::string_view(magic, 4) != std::string_view(kDrcMagic, 4)) {
    throw FormatError(path.string() + ": bad magic, not a DRC1 container");
  }
  const std::uint32_t version = reader.u32le();
  if (version != kDrcVersion) {
    throw FormatError(path.string() + ": unsupported DRC version " + std::to_string(version));
  }
  DrcFile file;
  file.n = static_cast<int>(reader.u32le());
  const std::uint32_t rows = reader.u32le();
  const std::uint32_t cols = reader.u32le();
  const std::uint8_t mode = reader.u8();
  if (file.n < 1 || rows == 0 || cols == 0 || rows % 2 != 0 || cols % 2 != 0) {
    throw FormatError(path.string() + ": bad DRC geometry");
  }
  if (mode > 1) throw FormatError(path.string() + ": bad DRC boundary mode");

  Decomposition2D& d = file.decomposition;
  d.rows = rows;
  d.cols = cols;
  d.mode = static_cast<BoundaryMode>(mode);
  const std::size_t hr = rows / 2;
  const std::size_t hc = cols / 2;
  for (Plane* pl : {&d.main, &d.horizontal, &d.vertical, &d.diagonal}) {
    *pl = Plane(hr, hc);
    for (double& v : pl->v) v = reader.f64le();
  }
  if (!reader.at_end()) throw FormatError(path.string() + ": trailing bytes in DRC container");
  return file;
}

}  // namespace wavegen
