#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "holocorr/io.hpp"
#include "holocorr/types.hpp"

namespace holocorr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailure = 1,
  kExitPrecondition = 2,
  kExitNumeric = 3,
  kExitUsage = 64,
};

inline constexpr const char* kOutputDirEnv = "HOLOCORR_OUTPUT_DIR";

/// Parses `a+bi`, `a-bi`, `a`, `bi` and `i`-forms with optional exponents.
cplx parse_complex(const std::string& text);
/// Shortest round-trip `a+bi` rendering.
std::string format_complex(cplx z);

struct CommonOptions {
  int p = 5;
  int q = 2;
  cplx c{0.0, 0.0};
  std::uint64_t rng_seed = 0x5eed;
  std::string output_dir = ".";
  int threads = 0;  // 0: hardware parallelism
};

/// Everything that determines a run, echoed into each artifact.
struct RunConfig {
  std::string command;
  CommonOptions common;
  io::json options = io::json::object();

  io::json echo() const;
  /// One line per top-level echo field, for CSV and PGM comment preambles.
  std::vector<std::string> preamble() const;
};

/// Flag value if given, else the environment override, else ".".
std::string resolve_output_dir(const std::string& flag_value);

std::string join_path(const std::string& dir, const std::string& file);

/// Runs body and maps library errors to exit codes, printing the diagnostic.
int guarded(const std::function<int()>& body, std::ostream& err);

int exit_code_for(ErrorCode code);

}  // namespace holocorr::cli
