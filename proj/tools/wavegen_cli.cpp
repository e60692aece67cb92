// Command-line front end: solve for filter banks, verify candidates,
// decompose and reconstruct signals/images, and export reference filters.
//
// Exit codes (stable contract):
//   0  success
//   1  verification or accuracy failure
//   2  usage error
//   3  I/O or format error
//   4  solver non-convergence

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wavegen/catalog.hpp"
#include "wavegen/filterbank.hpp"
#include "wavegen/io.hpp"
#include "wavegen/solver.hpp"
#include "wavegen/transform.hpp"

namespace {

using namespace wavegen;

constexpr int kExitOk = 0;
constexpr int kExitAccuracy = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoConvergence = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// --- solve -----------------------------------------------------------------

struct SolveArgs {
  int n = 0;
  std::uint64_t seed = 0;
  double epsilon = 1e-13;
  int max_sweeps = 20000;
  std::vector<std::string> fixes;
  std::string out;
  std::string trace;
};

std::map<int, double> parse_fixes(const std::vector<std::string>& fixes, int n) {
  std::map<int, double> pinned;
  for (const std::string& fix : fixes) {
    const std::size_t eq = fix.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == fix.size()) {
      throw UsageError("--fix expects POS=VALUE, got '" + fix + "'");
    }
    int pos = 0;
    const auto [ptr, ec] = std::from_chars(fix.data(), fix.data() + eq, pos);
    if (ec != std::errc() || ptr != fix.data() + eq) {
      throw UsageError("--fix position is not an integer in '" + fix + "'");
    }
    if (pos < 1 || pos > 2 * n) {
      throw UsageError("--fix position " + std::to_string(pos) + " out of range 1.." +
                       std::to_string(2 * n));
    }
    char* end = nullptr;
    const double value = std::strtod(fix.c_str() + eq + 1, &end);
    if (end == fix.c_str() + eq + 1 || *end != '\0' || !std::isfinite(value)) {
      throw UsageError("--fix value is not a finite number in '" + fix + "'");
    }
    if (!pinned.emplace(pos, value).second) {
      throw UsageError("--fix position " + std::to_string(pos) + " given twice");
    }
  }
  return pinned;
}

int run_solve(const SolveArgs& args) {
  SolverConfig config;
  config.n = args.n;
  config.seed = args.seed;
  config.epsilon = args.epsilon;
  config.max_sweeps = args.max_sweeps;
  config.pinned = parse_fixes(args.fixes, args.n);

  const SolveResult res = solve(config);
  const bool converged = res.trace.status == SolveStatus::Converged;

  BankFile bank;
  bank.n = config.n;
  bank.l_d = res.filter.taps();
  bank.residual_total_abs = res.report.total_abs;
  bank.converged = converged;
  save_bank(args.out, bank);
  if (!args.trace.empty()) write_trace_csv(args.trace, res.trace);

  std::cout << "status: " << (converged ? "converged" : "max-sweeps") << "\n"
            << "sweeps: " << res.trace.sweeps_used << "\n"
            << "total_abs_residual: " << format_g17(res.report.total_abs) << "\n"
            << "bank: " << args.out << "\n";
  if (!args.trace.empty()) std::cout << "trace: " << args.trace << "\n";
  return converged ? kExitOk : kExitNoConvergence;
}

// --- verify ----------------------------------------------------------------

int run_verify(const std::string& bank_path, double tolerance) {
  const BankFile bank = load_bank(bank_path);
  const Filter l_d{std::vector<double>(bank.l_d)};
  const ResidualReport rep = constraint_residuals(l_d);

  for (std::size_t k = rep.orthogonality.size(); k-- > 0;) {
    std::cout << "orthogonality[shift=" << (k + 1) << "]: " << format_g17(rep.orthogonality[k])
              << "\n";
  }
  std::cout << "parity: " << format_g17(rep.parity) << "\n"
            << "norm: " << format_g17(rep.norm) << "\n"
            << "total_abs: " << format_g17(rep.total_abs) << "\n"
            << "tolerance: " << format_g17(tolerance) << "\n";
  const bool pass = rep.total_abs <= tolerance;
  std::cout << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitAccuracy;
}

// --- decompose / reconstruct -------------------------------------------------

FilterBank resolve_bank(const std::string& bank_path, const std::string& ref_name) {
  if (!bank_path.empty()) {
    const BankFile bank = load_bank(bank_path);
    return derive_bank(Filter{std::vector<double>(bank.l_d)});
  }
  const ReferenceEntry* entry = lookup(ref_name);
  if (entry == nullptr) {
    throw UsageError("unknown reference filter '" + ref_name + "'");
  }
  return derive_bank(entry->taps);
}

BoundaryMode parse_mode(const std::string& mode) {
  return mode == "paper" ? BoundaryMode::PaperExtension : BoundaryMode::Periodic;
}

nlohmann::ordered_json energy_json(const SubbandEnergy& e) {
  nlohmann::ordered_json j;
  for (const auto& [name, pe] :
       {std::pair{"main", e.main}, {"horizontal", e.horizontal}, {"vertical", e.vertical},
        {"diagonal", e.diagonal}}) {
    j[name] = {{"energy", pe.energy}, {"fraction", pe.fraction}};
  }
  j["total"] = e.total;
  return j;
}

int run_decompose(const std::string& image_path, const std::string& signal_path,
                  const std::string& bank_path, const std::string& ref_name,
                  const std::string& mode_name, const std::string& prefix) {
  const FilterBank bank = resolve_bank(bank_path, ref_name);
  const BoundaryMode mode = parse_mode(mode_name);

  if (!signal_path.empty()) {
    const Signal1D signal{read_signal_csv(signal_path)};
    const Decomposition1D d = analyze_1d(signal, bank, mode);
    write_signal_csv(prefix + ".p.csv", d.p);
    write_signal_csv(prefix + ".q.csv", d.q);

    double low = 0.0;
    double high = 0.0;
    for (double v : d.p) low += v * v;
    for (double v : d.q) high += v * v;
    const double total = low + high;
    nlohmann::ordered_json j;
    j["low"] = {{"energy", low}, {"fraction", total > 0 ? low / total : 0.0}};
    j["high"] = {{"energy", high}, {"fraction", total > 0 ? high / total : 0.0}};
    j["total"] = total;
    atomic_write_file(prefix + ".energy.json", j.dump(2) + "\n");
    std::cout << "coefficients: " << prefix << ".p.csv, " << prefix << ".q.csv\n"
              << "energy: " << prefix << ".energy.json\n";
    return kExitOk;
  }

  const Image2D img = read_pgm(image_path);
  const Decomposition2D d = analyze_2d(img, bank, mode);
  write_drc(prefix + ".drc", d, bank.l_d.n());

  nlohmann::ordered_json previews;
  for (const auto& [name, plane] :
       {std::pair{"main", &d.main}, {"horizontal", &d.horizontal}, {"vertical", &d.vertical},
        {"diagonal", &d.diagonal}}) {
    const std::string path = prefix + "." + name + ".pgm";
    const PreviewScale mapping = write_plane_preview_pgm(path, *plane);
    previews[name] = {{"file", path}, {"offset", mapping.offset}, {"scale", mapping.scale}};
  }
  atomic_write_file(prefix + ".preview.json", previews.dump(2) + "\n");

  const SubbandEnergy e = subband_energy(d);
  atomic_write_file(prefix + ".energy.json", energy_json(e).dump(2) + "\n");

  std::cout << "container: " << prefix << ".drc\n"
            << "energy fractions: main " << e.main.fraction << ", horizontal "
            << e.horizontal.fraction << ", vertical " << e.vertical.fraction << ", diagonal "
            << e.diagonal.fraction << "\n";
  return kExitOk;
}

int run_reconstruct(const std::string& container_path, const std::string& bank_path,
                    const std::string& ref_name, const std::string& reference_image,
                    const std::string& out_path) {
  const FilterBank bank = resolve_bank(bank_path, ref_name);
  const DrcFile file = read_drc(container_path);
  if (file.n != bank.l_d.n()) {
    throw FormatError("container was produced with n = " + std::to_string(file.n) +
                      " but the bank has n = " + std::to_string(bank.l_d.n()));
  }
  const Image2D img = synthesize_2d(file.decomposition, bank);
  write_pgm(out_path, img);
  std::cout << "reconstruction: " << out_path << "\n";

  if (!reference_image.empty()) {
    const Image2D reference = read_pgm(reference_image);
    if (reference.rows() != img.rows() || reference.cols() != img.cols()) {
      throw FormatError("reference image dimensions do not match the container");
    }
    const double delta = reconstruction_error(img, reference);
    std::cout << "delta: " << format_g17(delta) << "\n";
    return delta < 1e-10 ? kExitOk : kExitAccuracy;
  }
  return kExitOk;
}

// --- catalog -----------------------------------------------------------------

int run_catalog(const std::vector<std::string>& export_args) {
  if (export_args.empty()) {
    std::printf("%-14s %3s %-13s %-9s %s\n", "name", "n", "total_abs", "tolerance", "source");
    for (const ReferenceEntry& entry : catalog()) {
      const ResidualReport rep = constraint_residuals(entry.taps);
      std::printf("%-14s %3d %-13.3e %-9.0e %s\n", entry.name.c_str(), entry.taps.n(),
                  rep.total_abs, entry.tolerance, entry.source.c_str());
    }
    return kExitOk;
  }

  const ReferenceEntry* entry = lookup(export_args[0]);
  if (entry == nullptr) {
    throw UsageError("unknown reference filter '" + export_args[0] + "'");
  }
  BankFile bank;
  bank.n = entry->taps.n();
  bank.l_d = entry->taps.taps();
  bank.name = entry->name;
  bank.residual_total_abs = constraint_residuals(entry->taps).total_abs;
  save_bank(export_args[1], bank);
  std::cout << "exported " << entry->name << " to " << export_args[1] << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"filter bank synthesis, verification and signal decomposition"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* cmd_solve = app.add_subcommand("solve", "numerically solve for a new filter bank");
  cmd_solve->add_option("--n", solve_args.n, "filter half-length (2n taps)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_solve->add_option("--seed", solve_args.seed, "random initialization seed");
  cmd_solve->add_option("--epsilon", solve_args.epsilon, "stop threshold on the total residual")
      ->check(CLI::PositiveNumber);
  cmd_solve->add_option("--max-sweeps", solve_args.max_sweeps, "sweep limit")
      ->check(CLI::PositiveNumber);
  cmd_solve->add_option("--fix", solve_args.fixes,
                        "pin tap POS (1-based) to VALUE, e.g. --fix 1=0.0352");
  cmd_solve->add_option("--out", solve_args.out, "output bank JSON path")->required();
  cmd_solve->add_option("--trace", solve_args.trace, "optional convergence trace CSV path");

  std::string verify_bank;
  double verify_tolerance = 1e-10;
  CLI::App* cmd_verify = app.add_subcommand("verify", "check a bank file against the constraints");
  cmd_verify->add_option("bank", verify_bank, "bank JSON file")->required();
  cmd_verify->add_option("--tolerance", verify_tolerance, "acceptance bound on total_abs");

  std::string dec_image;
  std::string dec_signal;
  std::string dec_bank;
  std::string dec_ref;
  std::string dec_mode = "periodic";
  std::string dec_prefix;
  CLI::App* cmd_decompose =
      app.add_subcommand("decompose", "split an image or signal into subbands");
  cmd_decompose->add_option("image", dec_image, "input PGM image");
  cmd_decompose->add_option("--signal", dec_signal, "input CSV signal (one sample per line)");
  cmd_decompose->add_option("--bank", dec_bank, "bank JSON file");
  cmd_decompose->add_option("--ref", dec_ref, "catalog filter name");
  cmd_decompose->add_option("--mode", dec_mode, "boundary handling")
      ->check(CLI::IsMember({"periodic", "paper"}));
  cmd_decompose->add_option("--out-prefix", dec_prefix, "output path prefix")->required();

  std::string rec_container;
  std::string rec_bank;
  std::string rec_ref;
  std::string rec_reference;
  std::string rec_out;
  CLI::App* cmd_reconstruct =
      app.add_subcommand("reconstruct", "rebuild an image from a coefficient container");
  cmd_reconstruct->add_option("container", rec_container, "DRC coefficient container")->required();
  cmd_reconstruct->add_option("--bank", rec_bank, "bank JSON file");
  cmd_reconstruct->add_option("--ref", rec_ref, "catalog filter name");
  cmd_reconstruct->add_option("--reference", rec_reference,
                              "original PGM to compare against (prints delta)");
  cmd_reconstruct->add_option("--out", rec_out, "output PGM path")->required();

  std::vector<std::string> catalog_export;
  CLI::App* cmd_catalog = app.add_subcommand("catalog", "list built-in reference filters");
  cmd_catalog->add_option("--export", catalog_export, "write entry NAME to bank JSON PATH")
      ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_solve->parsed()) return run_solve(solve_args);
    if (cmd_verify->parsed()) return run_verify(verify_bank, verify_tolerance);
    if (cmd_decompose->parsed()) {
      if (dec_image.empty() == dec_signal.empty()) {
        throw UsageError("decompose needs exactly one of an image argument or --signal");
      }
      if (dec_bank.empty() == dec_ref.empty()) {
        throw UsageError("decompose needs exactly one of --bank or --ref");
      }
      return run_decompose(dec_image, dec_signal, dec_bank, dec_ref, dec_mode, dec_prefix);
    }
    if (cmd_reconstruct->parsed()) {
      if (rec_bank.empty() == rec_ref.empty()) {
        throw UsageError("reconstruct needs exactly one of --bank or --ref");
      }
      return run_reconstruct(rec_container, rec_bank, rec_ref, rec_reference, rec_out);
    }
    if (cmd_catalog->parsed()) return run_catalog(catalog_export);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    // Library-level validation failures (dimension rules, malformed inputs).
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
