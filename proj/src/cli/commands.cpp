#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "holocorr/julia.hpp"
#include "holocorr/parallel.hpp"

namespace holocorr::cli {

BowenConfig BowenOptions::config(std::uint64_t rng_seed) const {
  BowenConfig cfg;
  cfg.n_min = n_min;
  cfg.n_max = n_max;
  cfg.m = m;
  cfg.tol = tol;
  cfg.cert_cloud = cert_cloud;
  cfg.cert_transient = cert_transient;
  cfg.cert_samples = cert_samples;
  cfg.rng_seed = rng_seed;
  return cfg;
}

io::json BowenOptions::echo() const {
  const BowenConfig d;
  return {{"n_min", n_min},
          {"n_max", n_max},
          {"m", m},
          {"tol", tol},
          {"cert_cloud", cert_cloud},
          {"cert_transient", cert_transient},
          {"cert_samples", cert_samples},
          {"cert_delta", d.certificate.delta},
          {"cert_chain_length", d.certificate.chain_length},
          {"curve_points", curve_points},
          {"t_max", t_max},
          {"power_tol", d.power.tol},
          {"power_max_iter", d.power.max_iter},
          {"orbit_fix_tol", d.orbit.fix_tol},
          {"orbit_dedup_tol", d.orbit.dedup_tol},
          {"orbit_residual_tol", d.orbit.residual_tol},
          {"word_cap", d.word_cap},
          {"state_cap", d.state_cap}};
}

io::json JuliaOptions::echo() const {
  return {{"mode", mode},       {"count", count}, {"transient", transient},
          {"depth", depth},     {"width", width}, {"height", height},
          {"cloud_format", cloud_format}};
}

io::json BoxdimOptions::echo() const {
  return {{"input", input}, {"count", count}, {"transient", transient},
          {"k_min", k_min}, {"k_max", k_max}, {"with_bowen", with_bowen}};
}

io::json ScanOptions::echo() const {
  return {{"re_min", re_min},       {"re_max", re_max},     {"im_min", im_min},
          {"im_max", im_max},       {"nx", nx},             {"ny", ny},
          {"classify_depth", classify_depth}, {"n", n},     {"m", m},
          {"cert_cloud", cert_cloud}, {"cert_samples", cert_samples}};
}

io::json CentreOptions::echo() const { return {{"depth", depth}}; }

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::invalid_argument, "cannot create output directory " + dir);
}

RunConfig make_config(const std::string& command, const CommonOptions& common, io::json options) {
  RunConfig rc;
  rc.command = command;
  rc.common = common;
  rc.options = std::move(options);
  return rc;
}

std::string write_artifact(const CommonOptions& common, const std::string& name,
                           const std::string& content) {
  const std::string path = join_path(common.output_dir, name);
  io::write_text_file(path, content);
  return path;
}

std::vector<PressureSample> curve_for(const Params& params, const BowenArtifacts& art,
                                      const BowenOptions& opts) {
  const double t_max = opts.t_max > 0.0 ? opts.t_max : 2.0 * art.result.t_c;
  return pressure_curve(params, art, t_max, opts.curve_points);
}

io::json bowen_document(const RunConfig& rc, const BowenArtifacts& art) {
  io::json doc;
  doc["config"] = rc.echo();
  doc["result"] = io::to_json(art.result);
  doc["seed"] = io::to_json(art.seed);
  doc["certificate"] = io::to_json(art.certificate);
  io::json invs = io::json::array();
  for (const auto& inv : art.inventories) invs.push_back(io::to_json(inv));
  doc["inventories"] = invs;
  if (art.transfer) {
    doc["transfer"] = {{"depth", art.transfer->depth()}, {"state_count", art.transfer->state_count()}};
  }
  return doc;
}

std::string pressure_csv(const RunConfig& rc, const std::vector<PressureSample>& curve) {
  std::ostringstream os;
  io::write_pressure_csv(os, curve, rc.preamble());
  return os.str();
}

PointCloud sample_cloud(const Params& params, const JuliaOptions& opts, std::uint64_t seed) {
  if (opts.mode == "random") return julia_backward(params, opts.count, opts.transient, seed);
  if (opts.mode == "tree") return julia_tree(params, opts.depth);
  throw Error(ErrorCode::invalid_argument, "julia: mode must be 'random' or 'tree'");
}

PointCloud load_cloud(const std::string& path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".csv") return io::read_cloud_csv(path);
  return io::read_cloud_binary(path);
}

}  // namespace

int cmd_bowen(const CommonOptions& common, const BowenOptions& opts, std::ostream& out,
              std::ostream& err) {
  return guarded(
      [&] {
        const Params params(common.p, common.q, common.c);
        const RunConfig rc = make_config("bowen", common, opts.echo());
        ensure_dir(common.output_dir);
        const BowenArtifacts art = run_bowen(params, opts.config(common.rng_seed));
        const auto curve = curve_for(params, art, opts);
        write_artifact(common, "bowen.json", io::dump(bowen_document(rc, art)));
        write_artifact(common, "bowen_pressure.csv", pressure_csv(rc, curve));
        out << io::dump(io::to_json(art.result));
        return int{kExitOk};
      },
      err);
}

int cmd_pressure_curve(const CommonOptions& common, const BowenOptions& opts, std::ostream& out,
                       std::ostream& err) {
  return guarded(
      [&] {
        const Params params(common.p, common.q, common.c);
        const RunConfig rc = make_config("pressure-curve", common, opts.echo());
        ensure_dir(common.output_dir);
        const BowenArtifacts art = run_bowen(params, opts.config(common.rng_seed));
        const auto curve = curve_for(params, art, opts);
        const std::string path = write_artifact(common, "pressure.csv", pressure_csv(rc, curve));
        out << io::dump({{"pressure_csv", path}, {"samples", curve.size()}, {"t_c", art.result.t_c}});
        return int{kExitOk};
      },
      err);
}

int cmd_julia(const CommonOptions& common, const JuliaOptions& opts, std::ostream& out,
              std::ostream& err) {
  return guarded(
      [&] {
        const Params params(common.p, common.q, common.c);
        const RunConfig rc = make_config("julia", common, opts.echo());
        ensure_dir(common.output_dir);
        const PointCloud cloud = sample_cloud(params, opts, common.rng_seed);
        const GrayImage img = render(cloud, opts.width, opts.height);
        const RenderFrame frame = render_frame(cloud);

        std::ostringstream pgm;
        io::write_pgm(pgm, img, rc.preamble());
        write_artifact(common, "julia.pgm", pgm.str());

        io::json summary;
        summary["config"] = rc.echo();
        summary["points"] = cloud.points.size();
        summary["source"] = to_string(cloud.source);
        summary["frame"] = {frame.x0, frame.x1, frame.y0, frame.y1};
        summary["escape_radius"] = escape_radius(params);
        if (opts.cloud_format == "bin") {
          io::write_cloud_binary(join_path(common.output_dir, "julia_cloud.bin"), cloud);
          summary["cloud"] = "julia_cloud.bin";
          summary["cloud_layout"] = "little-endian float64 pairs (re, im)";
        } else if (opts.cloud_format == "csv") {
          std::ostringstream csv;
          io::write_cloud_csv(csv, cloud, rc.preamble());
          write_artifact(common, "julia_cloud.csv", csv.str());
          summary["cloud"] = "julia_cloud.csv";
        } else if (opts.cloud_format != "none") {
          throw Error(ErrorCode::invalid_argument, "julia: cloud format must be bin, csv or none");
        }
        write_artifact(common, "julia.json", io::dump(summary));
        out << io::dump({{"points", cloud.points.size()}, {"image", "julia.pgm"}});
        return int{kExitOk};
      },
      err);
}

int cmd_boxdim(const CommonOptions& common, const BoxdimOptions& opts, std::ostream& out,
               std::ostream& err) {
  return guarded(
      [&] {
        const Params params(common.p, common.q, common.c);
        const RunConfig rc = make_config("boxdim", common, opts.echo());
        ensure_dir(common.output_dir);
        const PointCloud cloud = opts.input.empty()
                                     ? julia_backward(params, opts.count, opts.transient, common.rng_seed)
                                     : load_cloud(opts.input);
        const BoxCountResult res = box_counting(cloud, opts.k_min, opts.k_max);
        io::json doc;
        doc["config"] = rc.echo();
        doc["points"] = cloud.points.size();
        doc["box_count"] = io::to_json(res);
        if (opts.with_bowen) {
          BowenConfig cfg;
          cfg.rng_seed = common.rng_seed;
          cfg.n_min = cfg.n_max = 4;
          const BowenResult b = bowen_parameter(params, cfg);
          doc["t_c"] = b.t_c;
          doc["dimension_le_t_c_plus_0.1"] = res.dimension <= b.t_c + 0.1;
        }
        write_artifact(common, "boxdim.json", io::dump(doc));
        out << io::dump(doc["box_count"]);
        return int{kExitOk};
      },
      err);
}

ScanRow scan_cell(int p, int q, cplx c, const ScanOptions& opts, std::uint64_t rng_seed) {
  ScanRow row;
  row.c = c;
  const Params params(p, q, c);
  row.verdict = critical_orbit_classify(params, opts.classify_depth).verdict;
  try {
    BowenConfig cfg;
    cfg.n_min = cfg.n_max = opts.n;
    cfg.m = opts.m;
    cfg.cert_cloud = opts.cert_cloud;
    cfg.cert_samples = opts.cert_samples;
    cfg.rng_seed = rng_seed;
    const BowenArtifacts art = run_bowen(params, cfg);
    row.kappa = art.result.kappa;
    row.t_c = art.result.t_c;
  } catch (const Error&) {
    // Recorded as NA.
  }
  return row;
}

int cmd_scan(const CommonOptions& common, const ScanOptions& opts, std::ostream& out,
             std::ostream& err) {
  return guarded(
      [&] {
        if (opts.nx < 1 || opts.ny < 1) throw Error(ErrorCode::invalid_argument, "scan: nx, ny must be >= 1");
        Params(common.p, common.q, common.c);  // validate p, q
        const RunConfig rc = make_config("scan", common, opts.echo());
        ensure_dir(common.output_dir);
        auto axis = [](double lo, double hi, int n, int i) {
          return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        };
        const auto cells = static_cast<std::size_t>(opts.nx) * static_cast<std::size_t>(opts.ny);
        std::vector<ScanRow> rows(cells);
        // Row-major: imaginary part outer, real part inner.
        for_each_index(static_cast<std::int64_t>(cells), Exec::parallel, [&](std::int64_t k) {
          const int iy = static_cast<int>(k / opts.nx);
          const int ix = static_cast<int>(k % opts.nx);
          const cplx c{axis(opts.re_min, opts.re_max, opts.nx, ix),
                       axis(opts.im_min, opts.im_max, opts.ny, iy)};
          try {
            rows[static_cast<std::size_t>(k)] = scan_cell(common.p, common.q, c, opts, common.rng_seed);
          } catch (const Error&) {
            rows[static_cast<std::size_t>(k)].c = c;
          }
        });
        std::ostringstream csv;
        for (const auto& line : rc.preamble()) csv << "# " << line << "\n";
        csv << "c_re,c_im,verdict,kappa,t_c\n";
        csv.precision(17);
        auto na = [](const std::optional<double>& v) {
          std::ostringstream s;
          s.precision(17);
          if (v) s << *v; else s << "NA";
          return s.str();
        };
        std::size_t with_tc = 0;
        for (const auto& r : rows) {
          csv << r.c.real() << ',' << r.c.imag() << ',' << to_string(r.verdict) << ',' << na(r.kappa)
              << ',' << na(r.t_c) << '\n';
          with_tc += r.t_c ? 1 : 0;
        }
        write_artifact(common, "scan.csv", csv.str());
        out << io::dump({{"cells", cells}, {"cells_with_t_c", with_tc}, {"csv", "scan.csv"}});
        return int{kExitOk};
      },
      err);
}

int cmd_centre_test(const CommonOptions& common, const CentreOptions& opts, std::ostream& out,
                    std::ostream& err) {
  return guarded(
      [&] {
        const Params params(common.p, common.q, common.c);
        const RunConfig rc = make_config("centre-test", common, opts.echo());
        ensure_dir(common.output_dir);
        const CentreClassification cls = critical_orbit_classify(params, opts.depth);
        io::json doc;
        doc["config"] = rc.echo();
        doc["classification"] = io::to_json(cls);
        write_artifact(common, "centre.json", io::dump(doc));
        out << io::dump(doc["classification"]);
        return int{kExitOk};
      },
      err);
}

}  // namespace holocorr::cli
