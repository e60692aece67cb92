#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "wavegen/catalog.hpp"
#include "wavegen/io.hpp"
#include "wavegen/solver.hpp"
#include "wavegen/transform.hpp"

using namespace wavegen;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("wavegen_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path operator/(const char* name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, std::string_view bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  REQUIRE(out.good());
}

}  // namespace

TEST_CASE("bank JSON round trip is value- and byte-stable") {
  TempDir dir;
  BankFile bank;
  bank.n = 3;
  bank.l_d = lookup("db3-exact")->taps.taps();
  bank.name = "db3-exact";
  bank.residual_total_abs = 5.3e-16;
  bank.converged = true;

  const fs::path first = dir / "bank.json";
  save_bank(first, bank);
  const BankFile loaded = load_bank(first);
  CHECK(loaded.n == bank.n);
  CHECK(loaded.l_d == bank.l_d);
  CHECK(loaded.name == bank.name);
  CHECK(loaded.residual_total_abs == bank.residual_total_abs);
  CHECK(loaded.converged == bank.converged);

  const fs::path second = dir / "bank2.json";
  save_bank(second, loaded);
  CHECK(slurp(first) == slurp(second));
}

TEST_CASE("bank JSON omits unset optional fields") {
  TempDir dir;
  BankFile bank;
  bank.n = 1;
  bank.l_d = {0.5, 0.5};
  const fs::path p = dir / "minimal.json";
  save_bank(p, bank);
  const std::string text = slurp(p);
  CHECK(text.find("name") == std::string::npos);
  CHECK(text.find("converged") == std::string::npos);
  const BankFile loaded = load_bank(p);
  CHECK(!loaded.name.has_value());
  CHECK(!loaded.converged.has_value());
}

TEST_CASE("bank JSON loader rejects malformed files") {
  TempDir dir;
  const fs::path p = dir / "bad.json";

  spit(p, "{\"format\": \"wavegen-bank/1\", \"n\": 3, \"l_d\": [0.1, 0.2");
  CHECK_THROWS_AS(load_bank(p), FormatError);

  spit(p, "{\"format\": \"other/9\", \"n\": 1, \"l_d\": [0.5, 0.5]}");
  CHECK_THROWS_AS(load_bank(p), FormatError);

  spit(p, "{\"format\": \"wavegen-bank/1\", \"n\": 2, \"l_d\": [0.5, 0.5]}");
  CHECK_THROWS_AS(load_bank(p), FormatError);

  spit(p, "{\"format\": \"wavegen-bank/1\", \"n\": 1, \"l_d\": [0.5, \"x\"]}");
  CHECK_THROWS_AS(load_bank(p), FormatError);

  spit(p, "{\"format\": \"wavegen-bank/1\", \"n\": 0, \"l_d\": []}");
  CHECK_THROWS_AS(load_bank(p), FormatError);

  CHECK_THROWS_AS(load_bank(dir / "missing.json"), IoError);
}

TEST_CASE("DRC container round trip is bit exact") {
  TempDir dir;
  std::mt19937_64 eng(42);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);

  Decomposition2D d;
  d.rows = 8;
  d.cols = 12;
  d.mode = BoundaryMode::PaperExtension;
  for (Plane* pl : {&d.main, &d.horizontal, &d.vertical, &d.diagonal}) {
    *pl = Plane(4, 6);
    for (double& v : pl->v) v = dist(eng);
  }

  const fs::path p = dir / "coeffs.drc";
  write_drc(p, d, 2);
  const DrcFile file = read_drc(p);
  CHECK(file.n == 2);
  CHECK(file.decomposition.rows == 8);
  CHECK(file.decomposition.cols == 12);
  CHECK(file.decomposition.mode == BoundaryMode::PaperExtension);
  CHECK(file.decomposition.main.v == d.main.v);
  CHECK(file.decomposition.horizontal.v == d.horizontal.v);
  CHECK(file.decomposition.vertical.v == d.vertical.v);
  CHECK(file.decomposition.diagonal.v == d.diagonal.v);

  const fs::path p2 = dir / "coeffs2.drc";
  write_drc(p2, file.decomposition, file.n);
  CHECK(slurp(p) == slurp(p2));
}

TEST_CASE("DRC reader rejects corrupted containers") {
  TempDir dir;
  Decomposition2D d;
  d.rows = 4;
  d.cols = 4;
  for (Plane* pl : {&d.main, &d.horizontal, &d.vertical, &d.diagonal}) *pl = Plane(2, 2);
  const fs::path p = dir / "c.drc";
  write_drc(p, d, 1);

  std::string bytes = slurp(p);
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  spit(dir / "bad_magic.drc", bad_magic);
  CHECK_THROWS_WITH_AS(read_drc(dir / "bad_magic.drc"), doctest::Contains("magic"), FormatError);

  std::string bad_version = bytes;
  bad_version[4] = 9;
  spit(dir / "bad_version.drc", bad_version);
  CHECK_THROWS_AS(read_drc(dir / "bad_version.drc"), FormatError);

  spit(dir / "short.drc", std::string_view(bytes).substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_drc(dir / "short.drc"), FormatError);

  spit(dir / "long.drc", bytes + "zz");
  CHECK_THROWS_AS(read_drc(dir / "long.drc"), FormatError);
}

TEST_CASE("PGM write/read preserves integer pixel values") {
  TempDir dir;
  std::vector<double> pixels;
  for (int i = 0; i < 6 * 4; ++i) pixels.push_back(static_cast<double>((i * 37) % 256));
  const Image2D img(4, 6, pixels);
  const fs::path p = dir / "img.pgm";
  write_pgm(p, img);
  const Image2D back = read_pgm(p);
  CHECK(back == img);
}

TEST_CASE("PGM reader handles P2 with comments and rejects bad headers") {
  TempDir dir;
  const fs::path p = dir / "ascii.pgm";
  spit(p,
       "P2\n# a comment\n4 2\n255\n"
       "0 10 20 30\n40 50 60 70\n");
  const Image2D img = read_pgm(p);
  CHECK(img.rows() == 2);
  CHECK(img.cols() == 4);
  CHECK(img.at(1, 3) == 70.0);

  spit(p, "P3\n2 2\n255\n0 0 0 0\n");
  CHECK_THROWS_AS(read_pgm(p), FormatError);

  spit(p, "P2\n2 2\n70000\n0 0 0 0\n");
  CHECK_THROWS_AS(read_pgm(p), FormatError);

  spit(p, "P2\n2 2\n255\n0 0 0\n");  // one sample short
  CHECK_THROWS_AS(read_pgm(p), FormatError);

  spit(p, "P2\n3 2\n255\n0 0 0 0 0 0\n");  // odd width
  CHECK_THROWS_AS(read_pgm(p), FormatError);

  std::string p5 = "P5\n4 2\n255\n";
  p5 += std::string(7, '\0');  // raster one byte short
  spit(p, p5);
  CHECK_THROWS_AS(read_pgm(p), FormatError);
}

TEST_CASE("plane previews are affinely normalized to 0..255") {
  TempDir dir;
  Plane plane(2, 4);
  plane.v = {-1.0, 0.0, 1.0, 3.0, -1.0, 1.0, 2.0, 0.5};
  const fs::path p = dir / "prev.pgm";
  const PreviewScale mapping = write_plane_preview_pgm(p, plane);
  CHECK(mapping.offset == -1.0);
  CHECK(mapping.scale == doctest::Approx(255.0 / 4.0));
  const Image2D back = read_pgm(p);
  CHECK(back.at(0, 0) == 0.0);
  CHECK(back.at(0, 3) == 255.0);
  CHECK(back.at(1, 0) == 0.0);

  Plane flat(2, 2);
  flat.v = {5.0, 5.0, 5.0, 5.0};
  const PreviewScale flat_mapping = write_plane_preview_pgm(dir / "flat.pgm", flat);
  CHECK(flat_mapping.scale == 0.0);
  const Image2D flat_img = read_pgm(dir / "flat.pgm");
  CHECK(flat_img.at(0, 0) == 0.0);

  // Coefficient planes may have odd dimensions; the preview is still a valid
  // PGM even though it is not loadable as an input image.
  Plane odd(3, 3);
  odd.v = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  write_plane_preview_pgm(dir / "odd.pgm", odd);
  CHECK(slurp(dir / "odd.pgm").rfind("P5\n3 3\n255\n", 0) == 0);
}

TEST_CASE("signal CSV round trip is exact") {
  TempDir dir;
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> samples(64);
  for (double& v : samples) v = dist(eng);

  const fs::path p = dir / "sig.csv";
  write_signal_csv(p, samples);
  CHECK(read_signal_csv(p) == samples);

  spit(p, "0.5\nnot-a-number\n");
  CHECK_THROWS_AS(read_signal_csv(p), FormatError);
}

TEST_CASE("trace CSV format") {
  TempDir dir;
  ConvergenceTrace trace;
  trace.records = {{1, 0.25, 1.5}, {2, 1.0 / 3.0, 0.125}};
  trace.sweeps_used = 2;
  const fs::path p = dir / "trace.csv";
  write_trace_csv(p, trace);
  const std::string text = slurp(p);
  CHECK(text.rfind("sweep,lyapunov,total_abs_residual\n", 0) == 0);
  CHECK(text.find("\n1,0.25,1.5\n") != std::string::npos);
  // 17 significant digits round-trip doubles exactly.
  CHECK(text.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("atomic writes do not leave temporaries behind") {
  TempDir dir;
  const fs::path p = dir / "out.bin";
  atomic_write_file(p, "payload");
  CHECK(slurp(p) == "payload");
  int entries = 0;
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    (void)entry;
    ++entries;
  }
  CHECK(entries == 1);

  CHECK_THROWS_AS(atomic_write_file(dir.path / "no_dir" / "x.bin", "x"), IoError);
}
