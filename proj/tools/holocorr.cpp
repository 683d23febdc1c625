#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "acceptance.hpp"
#include "commands.hpp"
#include "holocorr/parallel.hpp"

using namespace holocorr;

namespace {

struct CommonFlags {
  cli::CommonOptions opts;
  std::string c_text = "0+0i";
  std::string output_dir;  // empty: environment override or "."
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--p", f.opts.p, "Degree of z in the relation (p > q >= 2, gcd(p, q) = 1)")->capture_default_str();
  sub->add_option("--q", f.opts.q, "Degree of w - c in the relation")->capture_default_str();
  sub->add_option("--c", f.c_text, "Parameter c as a+bi")->capture_default_str();
  sub->add_option("--seed", f.opts.rng_seed, "RNG seed")->capture_default_str();
  sub->add_option("--output-dir", f.output_dir,
                  std::string("Artifact directory (default: $") + cli::kOutputDirEnv + " or .)");
}

int run_verify(bool quick, bool fault, const std::vector<int>& only, const std::string& scratch) {
  acceptance::Options opts;
  opts.quick = quick;
  opts.derivative = fault ? acceptance::faulty_derivative() : acceptance::library_derivative();
  opts.scratch_dir = scratch;
  std::vector<int> ids = !only.empty() ? only : quick ? acceptance::quick_criteria() : acceptance::all_criteria();
  int failed = 0;
  for (int id : ids) {
    const auto r = acceptance::run_criterion(id, opts);
    std::cout << acceptance::format_line(r) << "\n";
    acceptance::print_details(std::cout, r);
    std::cout.flush();
    failed += r.pass ? 0 : 1;
  }
  std::cout << (ids.size() - static_cast<std::size_t>(failed)) << " of " << ids.size() << " criteria passed\n";
  return failed == 0 ? cli::kExitOk : cli::kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pressure, Bowen parameter and Julia-set tools for (w - c)^q = z^p"};
  app.set_version_flag("--version", std::string(HOLOCORR_VERSION));
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: hardware parallelism)")->capture_default_str();

  CommonFlags common;
  cli::BowenOptions bowen;
  cli::JuliaOptions julia;
  cli::BoxdimOptions boxdim;
  cli::ScanOptions scan;
  cli::CentreOptions centre;

  auto add_bowen_opts = [&](CLI::App* sub) {
    sub->add_option("--n-min", bowen.n_min, "Smallest period for periodic-orbit pressure")->capture_default_str();
    sub->add_option("--n-max", bowen.n_max, "Largest period (p^n capped at 2^22)")->capture_default_str();
    sub->add_option("--m", bowen.m, "Transfer-operator cylinder depth (p^m capped at 2^20)")->capture_default_str();
    sub->add_option("--tol", bowen.tol, "Root tolerance")->capture_default_str();
    sub->add_option("--cert-cloud", bowen.cert_cloud, "Certificate cloud size")->capture_default_str();
    sub->add_option("--cert-transient", bowen.cert_transient, "Certificate cloud transient")->capture_default_str();
    sub->add_option("--cert-samples", bowen.cert_samples, "Certificate sample count")->capture_default_str();
    sub->add_option("--curve-points", bowen.curve_points, "Pressure curve grid size")->capture_default_str();
    sub->add_option("--t-max", bowen.t_max, "Pressure curve upper end (0: 2 t_c)")->capture_default_str();
  };

  auto* s_bowen = app.add_subcommand("bowen", "Bowen parameter t_c with certificate gate and cross-checks");
  add_common(s_bowen, common);
  add_bowen_opts(s_bowen);

  auto* s_curve = app.add_subcommand("pressure-curve", "Pressure curves of both estimators as CSV");
  add_common(s_curve, common);
  add_bowen_opts(s_curve);

  auto* s_julia = app.add_subcommand("julia", "Sample the repeller and render it as PGM");
  add_common(s_julia, common);
  s_julia->add_option("--mode", julia.mode, "random | tree")->capture_default_str();
  s_julia->add_option("--count", julia.count, "Points for random mode")->capture_default_str();
  s_julia->add_option("--transient", julia.transient, "Discarded steps per chain")->capture_default_str();
  s_julia->add_option("--depth", julia.depth, "Tree depth for tree mode")->capture_default_str();
  s_julia->add_option("--width", julia.width, "Image width")->capture_default_str();
  s_julia->add_option("--height", julia.height, "Image height")->capture_default_str();
  s_julia->add_option("--cloud-format", julia.cloud_format, "bin | csv | none")->capture_default_str();

  auto* s_box = app.add_subcommand("boxdim", "Box-counting dimension of a sampled or loaded cloud");
  add_common(s_box, common);
  s_box->add_option("--input", boxdim.input, "Cloud file (.bin or .csv); default samples one");
  s_box->add_option("--count", boxdim.count, "Points to sample")->capture_default_str();
  s_box->add_option("--transient", boxdim.transient, "Discarded steps per chain")->capture_default_str();
  s_box->add_option("--k-min", boxdim.k_min, "Coarsest grid 2^k")->capture_default_str();
  s_box->add_option("--k-max", boxdim.k_max, "Finest grid 2^k")->capture_default_str();
  s_box->add_flag("--with-bowen", boxdim.with_bowen, "Also compute t_c and compare");

  auto* s_scan = app.add_subcommand("scan", "Classify and compute t_c over a grid of c");
  add_common(s_scan, common);
  s_scan->add_option("--re-min", scan.re_min, "Grid lower end of Re c")->capture_default_str();
  s_scan->add_option("--re-max", scan.re_max, "Grid upper end of Re c")->capture_default_str();
  s_scan->add_option("--im-min", scan.im_min, "Grid lower end of Im c")->capture_default_str();
  s_scan->add_option("--im-max", scan.im_max, "Grid upper end of Im c")->capture_default_str();
  s_scan->add_option("--nx", scan.nx, "Grid points along Re c")->capture_default_str();
  s_scan->add_option("--ny", scan.ny, "Grid points along Im c")->capture_default_str();
  s_scan->add_option("--classify-depth", scan.classify_depth, "Critical-orbit tree depth")->capture_default_str();
  s_scan->add_option("--n", scan.n, "Periodic-orbit depth per cell")->capture_default_str();
  s_scan->add_option("--m", scan.m, "Transfer-operator depth per cell")->capture_default_str();
  s_scan->add_option("--cert-cloud", scan.cert_cloud, "Certificate cloud size per cell")->capture_default_str();
  s_scan->add_option("--cert-samples", scan.cert_samples, "Certificate sample count per cell")->capture_default_str();

  auto* s_centre = app.add_subcommand("centre-test", "Classify the forward orbits of 0");
  add_common(s_centre, common);
  s_centre->add_option("--depth", centre.depth, "Tree depth")->capture_default_str();

  bool quick = false;
  bool fault = false;
  std::vector<int> only;
  std::string scratch;
  auto* s_verify = app.add_subcommand("verify", "Run the acceptance criteria");
  s_verify->add_flag("--quick", quick, "Run the fast subset");
  s_verify->add_flag("--inject-derivative-fault", fault, "Test hook: use a wrong branch derivative");
  s_verify->add_option("--only", only, "Criterion ids to run");
  s_verify->add_option("--scratch-dir", scratch, "Working directory for the determinism check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    if (threads < 0) throw Error(ErrorCode::invalid_argument, "--threads must be >= 0");
    set_worker_threads(threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
    common.opts.threads = threads;
    common.opts.c = cli::parse_complex(common.c_text);
    common.opts.output_dir = cli::resolve_output_dir(common.output_dir);
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kExitUsage;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*s_bowen) return cli::cmd_bowen(common.opts, bowen, out, err);
  if (*s_curve) return cli::cmd_pressure_curve(common.opts, bowen, out, err);
  if (*s_julia) return cli::cmd_julia(common.opts, julia, out, err);
  if (*s_box) return cli::cmd_boxdim(common.opts, boxdim, out, err);
  if (*s_scan) return cli::cmd_scan(common.opts, scan, out, err);
  if (*s_centre) return cli::cmd_centre_test(common.opts, centre, out, err);
  if (*s_verify) return run_verify(quick, fault, only, scratch);
  return cli::kExitUsage;
}
