#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "holocorr/julia.hpp"
#include "holocorr/thermo.hpp"

namespace holocorr::io {

using json = nlohmann::ordered_json;

// Complex numbers are written as [re, im].
json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const Params& params);
json to_json(const Orbit& orbit);
json to_json(const HyperbolicityCertificate& cert);
/// Summary plus at most `max_orbits` orbits and `max_failures` failures.
json to_json(const OrbitInventory& inv, std::size_t max_orbits = 0, std::size_t max_failures = 16);
json to_json(const BowenResult& res);
json to_json(const BoxCountResult& res);
json to_json(const CentreClassification& cls);
json to_json(const GibbsStats& stats);

/// Pretty JSON with a trailing newline.
std::string dump(const json& j);

/// CSV with header `t,pressure,method,depth`; each `preamble` line is written
/// first, prefixed by "# ".
void write_pressure_csv(std::ostream& os, const std::vector<PressureSample>& samples,
                        const std::vector<std::string>& preamble);

/// Little-endian float64 pairs (re, im), no header.
void write_cloud_binary(const std::string& path, const PointCloud& cloud);
PointCloud read_cloud_binary(const std::string& path);

/// CSV with header `re,im`; lines starting with '#' are comments.
void write_cloud_csv(std::ostream& os, const PointCloud& cloud,
                     const std::vector<std::string>& preamble);
PointCloud read_cloud_csv(const std::string& path);

/// Binary PGM (P5) with one comment line per `comments` entry.
void write_pgm(std::ostream& os, const GrayImage& img, const std::vector<std::string>& comments);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace holocorr::io
