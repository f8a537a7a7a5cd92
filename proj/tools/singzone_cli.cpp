#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "singzone/control.hpp"
#include "singzone/decoupling.hpp"
#include "singzone/errors.hpp"
#include "singzone/scenario_io.hpp"
#include "singzone/sim.hpp"
#include "singzone/singularity.hpp"
#include "singzone/verify.hpp"

namespace fs = std::filesystem;
using namespace singzone;

namespace {

enum Exit : int { kOk = 0, kIo = 1, kUsage = 2, kVerifyFail = 3, kSingular = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

struct SingmapArgs {
  double range = 1.5;
  long res = 301;
  std::string out_dir = "out";
  bool det_oracle = false;
  double psi = 0.0;
  double zeta = 9.81;
};

int run_singmap(const SingmapArgs& a) {
  if (!(a.range > 0.0) || !std::isfinite(a.range)) throw ConfigError("--range must be positive");
  if (a.res < 2) throw ConfigError("--res must be at least 2");
  if (a.det_oracle && a.zeta == 0.0) {
    throw ConfigError("--det-oracle requires zeta != 0: the decoupling matrix is singular "
                      "everywhere at zero thrust");
  }

  ScanRequest req;
  req.theta = {-a.range, a.range, a.res};
  req.phi = req.theta;
  req.fixed_psi = a.psi;
  req.fixed_zeta = a.zeta;
  req.kind = ScanKind::SFunction;
  const GridScan s_scan = scan_grid(req);

  ContourSet contour;
  try {
    contour = zero_contour(s_scan);
  } catch (const EmptyContour& e) {
    std::cerr << "warning: " << e.what() << "\n";
  }

  const fs::path dir(a.out_dir);
  ensure_dir(dir);
  write_file(dir / "s_grid.csv", [&](std::ostream& os) { write_grid_csv(os, s_scan); });
  write_file(dir / "s_contour.csv", [&](std::ostream& os) { write_contour_csv(os, contour); });
  std::cout << "grid " << a.res << "x" << a.res << " over [" << -a.range << ", " << a.range
            << "]^2\n";
  std::cout << "S contour: " << contour.polylines.size() << " polylines, "
            << contour.vertex_count() << " vertices\n";

  if (a.det_oracle) {
    req.kind = ScanKind::DetOracle;
    const GridScan det_scan = scan_grid(req);
    const DiscrepancyReport report = discrepancy_report(s_scan, det_scan);
    write_file(dir / "det_grid.csv", [&](std::ostream& os) { write_grid_csv(os, det_scan); });
    write_file(dir / "discrepancy.csv",
               [&](std::ostream& os) { write_discrepancy_csv(os, report); });
    write_discrepancy_summary(std::cout, report);
    std::cout << "cell at (0, 0): " << cell_class_name(report.at(0.0, 0.0)) << "\n";
  }
  return kOk;
}

struct SimulateArgs {
  std::string scenario;
  std::string out_dir = "out";
};

int run_simulate(const SimulateArgs& a) {
  if (!std::ifstream(a.scenario)) throw IoError("cannot read scenario file " + a.scenario);
  // Parse and validate before touching the output directory.
  const Scenario sc = load_scenario(a.scenario);
  const TimeSeries ts = run_scenario(sc);

  const fs::path dir(a.out_dir);
  ensure_dir(dir);
  write_file(dir / "timeseries.csv", [&](std::ostream& os) { write_timeseries_csv(os, ts); });
  write_file(dir / "events.csv", [&](std::ostream& os) { write_events_csv(os, ts); });

  std::cout << "scenario: " << sc.name << "\n";
  std::cout << "termination: " << termination_name(ts.termination) << " at t = " << ts.final_time
            << "\n";
  if (!ts.events.empty()) std::cout << "detail: " << ts.events.back().detail << "\n";
  std::cout << "switches: " << ts.switch_count << "\n";
  std::cout << "final mode: " << mode_name(ts.final_mode) << "\n";
  std::cout << "final attitude: phi = " << ts.final_state(kPhi)
            << ", theta = " << ts.final_state(kTheta) << ", psi = " << ts.final_state(kPsi)
            << "\n";
  return kOk;
}

struct VerifyArgs {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  std::vector<std::string> suites;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.suites = a.suites;
  const auto results = run_verification(opt);
  write_verification_report(std::cout, results);
  for (const auto& r : results)
    if (!r.passed) return kVerifyFail;
  return kOk;
}

struct DeltaArgs {
  bool hover = false;
  std::vector<double> state;
  double zeta = std::nan("");
  std::string mode = "yawpos";
  std::string coefficients = "chain_rule";
};

int run_delta(const DeltaArgs& a) {
  const QuadParams params;
  if (a.hover == !a.state.empty()) {
    throw ConfigError("give either --hover or 14 state values");
  }
  State14 s = a.hover ? hover_state(params) : state_from_json(nlohmann::json(a.state));
  if (!std::isnan(a.zeta)) s(kZeta) = a.zeta;
  require_finite(s, "state");
  const Mode mode = parse_mode(a.mode);
  const CoefficientVariant variant = parse_coefficient_variant(a.coefficients);

  const DecouplingSystem sys = decoupling_system(mode, s, params, {}, variant);
  nlohmann::json out = to_json(sys);
  out["state"] = state_to_json(s);
  const bool singular = sys.is_singular();
  out["singular"] = singular;
  std::cout << std::setprecision(17) << out.dump(2) << "\n";
  return singular ? kSingular : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrotor feedback-linearization singularity lab"};
  app.require_subcommand(1);

  SingmapArgs sm;
  auto* singmap = app.add_subcommand("singmap", "Map S(theta, phi) and optionally det(Delta)");
  singmap->add_option("--range", sm.range, "Half-width of the square (theta, phi) grid, rad")
      ->envname("SINGZONE_RANGE")->capture_default_str();
  singmap->add_option("--res", sm.res, "Grid nodes per axis")
      ->envname("SINGZONE_RES")->capture_default_str();
  singmap->add_option("--out-dir", sm.out_dir, "Output directory")
      ->envname("SINGZONE_OUT_DIR")->capture_default_str();
  singmap->add_flag("--det-oracle", sm.det_oracle, "Also scan det(Delta) and compare cells")
      ->envname("SINGZONE_DET_ORACLE");
  singmap->add_option("--psi", sm.psi, "Yaw used by the determinant scan")
      ->envname("SINGZONE_PSI")->capture_default_str();
  singmap->add_option("--zeta", sm.zeta, "Thrust used by the determinant scan")
      ->envname("SINGZONE_ZETA")->capture_default_str();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a closed-loop scenario");
  simulate->add_option("--scenario", sim.scenario, "Scenario JSON file")
      ->required()->envname("SINGZONE_SCENARIO");
  simulate->add_option("--out-dir", sim.out_dir, "Output directory")
      ->envname("SINGZONE_OUT_DIR")->capture_default_str();

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the self-check suites");
  verify->add_option("--samples", ver.samples, "Random samples per suite")
      ->envname("SINGZONE_SAMPLES")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--seed", ver.seed, "Base seed")
      ->envname("SINGZONE_SEED")->capture_default_str();
  verify->add_option("--suite", ver.suites, "Run only these suites")
      ->envname("SINGZONE_SUITE")->delimiter(',');

  DeltaArgs del;
  auto* delta = app.add_subcommand("delta", "Print the decoupling system at one state");
  delta->add_flag("--hover", del.hover, "Use the hover state")->envname("SINGZONE_HOVER");
  delta->add_option("--state", del.state, "14 state values x y z psi theta phi vx vy vz zeta xi p q r")
      ->expected(14)->envname("SINGZONE_STATE");
  delta->add_option("--zeta", del.zeta, "Override the thrust state")->envname("SINGZONE_ZETA");
  delta->add_option("--mode", del.mode, "yawpos or altatt")
      ->envname("SINGZONE_MODE")->capture_default_str();
  delta->add_option("--coefficients", del.coefficients, "chain_rule or sphi_variant")
      ->envname("SINGZONE_COEFFICIENTS")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*singmap) return run_singmap(sm);
    if (*simulate) return run_simulate(sim);
    if (*verify) return run_verify(ver);
    if (*delta) return run_delta(del);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}
