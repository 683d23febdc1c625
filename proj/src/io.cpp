#include "holocorr/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

namespace holocorr::io {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json to_json(const Params& params) {
  return {{"p", params.p()}, {"q", params.q()}, {"c", to_json(params.c())}};
}

json to_json(const Orbit& orbit) {
  json pts = json::array();
  for (const cplx& z : orbit.points) pts.push_back(to_json(z));
  return {{"points", pts}, {"residual", orbit.residual}};
}

json to_json(const HyperbolicityCertificate& cert) {
  return {{"kappa", cert.kappa},
          {"passing", cert.passing()},
          {"sample_count", cert.sample_count},
          {"min_pair", json::array({to_json(cert.min_pair.first), to_json(cert.min_pair.second)})},
          {"expansion", {{"C", cert.expansion.C}, {"lambda", cert.expansion.lambda}}},
          {"note", "empirical check over a sampled repeller, not a proof"}};
}

json to_json(const OrbitInventory& inv, std::size_t max_orbits, std::size_t max_failures) {
  json j{{"period", inv.period},
         {"found_count", inv.found_count},
         {"expected_count", inv.expected_count},
         {"duplicates_merged", inv.duplicates_merged},
         {"failure_count", inv.failures.size()}};
  json orbits = json::array();
  for (std::size_t i = 0; i < std::min(max_orbits, inv.orbits.size()); ++i) {
    const auto& po = inv.orbits[i];
    orbits.push_back({{"word", po.word.symbols},
                      {"multiplier_modulus", po.multiplier_modulus},
                      {"orbit", to_json(po.orbit)}});
  }
  if (max_orbits > 0) j["orbits"] = orbits;
  json failures = json::array();
  for (std::size_t i = 0; i < std::min(max_failures, inv.failures.size()); ++i) {
    failures.push_back({{"word", inv.failures[i].word.symbols}, {"reason", inv.failures[i].reason}});
  }
  j["failures"] = failures;
  return j;
}

json to_json(const BowenResult& res) {
  json roots = json::array();
  for (const auto& d : res.per_depth_roots) roots.push_back({{"n", d.n}, {"t_c", d.t_c}});
  json j{{"t_c", res.t_c},
         {"method", "transfer_matrix"},
         {"depth", res.depth},
         {"bracket", json::array({res.bracket.first, res.bracket.second})},
         {"pressure_at_root", res.pressure_at_root},
         {"per_depth_roots", roots}};
  j["extrapolated"] = res.extrapolated ? json(*res.extrapolated) : json(nullptr);
  j["method_agreement"] = res.method_agreement;
  j["kappa"] = res.kappa;
  j["closed_form_bound"] = res.closed_form;
  j["zero_area_regime"] = res.zero_area_regime;
  j["area_informative"] = res.area_informative;
  j["note"] = res.note;
  return j;
}

json to_json(const BoxCountResult& res) {
  json scales = json::array();
  for (const auto& [eps, n] : res.scales) scales.push_back({{"eps", eps}, {"count", n}});
  return {{"dimension", res.dimension},
          {"r_squared", res.r_squared},
          {"scale_range", json::array({res.scale_range.first, res.scale_range.second})},
          {"scales", scales},
          {"note", "box-counting dimension, an upper bound for Hausdorff dimension"}};
}

json to_json(const CentreClassification& cls) {
  json j{{"verdict", to_string(cls.verdict)},
         {"depth_used", cls.depth_used},
         {"escape_radius", cls.escape_radius_used},
         {"closed_branches", cls.closed_branches},
         {"surviving_branches", cls.surviving_branches},
         {"pruned_branches", cls.pruned_branches},
         {"node_cap_hit", cls.node_cap_hit}};
  j["periodic_witness"] = cls.periodic_witness ? to_json(*cls.periodic_witness) : json(nullptr);
  return j;
}

json to_json(const GibbsStats& stats) {
  return {{"min_ratio", stats.min_ratio},
          {"max_ratio", stats.max_ratio},
          {"spread", stats.spread},
          {"count", stats.count}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace {

void write_preamble(std::ostream& os, const std::vector<std::string>& preamble) {
  for (const auto& line : preamble) os << "# " << line << "\n";
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void put_le(std::ostream& os, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(buf, 8);
}

double get_le(const unsigned char* buf) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | buf[i];
  return std::bit_cast<double>(bits);
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot open " + path + " for writing");
  return f;
}

}  // namespace

void write_pressure_csv(std::ostream& os, const std::vector<PressureSample>& samples,
                        const std::vector<std::string>& preamble) {
  write_preamble(os, preamble);
  os << "t,pressure,method,depth\n";
  for (const auto& s : samples) {
    os << format_double(s.t) << ',' << format_double(s.pressure) << ',' << to_string(s.method)
       << ',' << s.depth << '\n';
  }
}

void write_cloud_binary(const std::string& path, const PointCloud& cloud) {
  auto f = open_out(path, std::ios::out | std::ios::binary);
  for (const cplx& z : cloud.points) {
    put_le(f, z.real());
    put_le(f, z.imag());
  }
}

PointCloud read_cloud_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (bytes.size() % 16 != 0) {
    throw Error(ErrorCode::invalid_argument, path + ": size is not a multiple of 16 bytes");
  }
  PointCloud cloud;
  cloud.source = CloudSource::synthetic;
  cloud.points.reserve(bytes.size() / 16);
  for (std::size_t i = 0; i < bytes.size(); i += 16) {
    cloud.points.emplace_back(get_le(&bytes[i]), get_le(&bytes[i + 8]));
  }
  return cloud;
}

void write_cloud_csv(std::ostream& os, const PointCloud& cloud,
                     const std::vector<std::string>& preamble) {
  write_preamble(os, preamble);
  os << "re,im\n";
  for (const cplx& z : cloud.points) os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
}

PointCloud read_cloud_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  PointCloud cloud;
  cloud.source = CloudSource::synthetic;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.rfind("re,", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::invalid_argument, path + ":" + std::to_string(lineno) + ": expected re,im");
    }
    try {
      cloud.points.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  return cloud;
}

void write_pgm(std::ostream& os, const GrayImage& img, const std::vector<std::string>& comments) {
  os << "P5\n";
  for (const auto& c : comments) os << "# " << c << "\n";
  os << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
}

void write_text_file(const std::string& path, const std::string& content) {
  auto f = open_out(path);
  f << content;
}

}  // namespace holocorr::io
