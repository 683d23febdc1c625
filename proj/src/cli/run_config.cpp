#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>

namespace holocorr::cli {

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+" || s == "-") return s == "-" ? -1.0 : 1.0;
  const char* begin = s.data() + (s[0] == '+' ? 1 : 0);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::invalid_argument, "invalid complex number '" + whole + "'");
  }
  return v;
}

std::string shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "empty complex number");
  if (s.back() != 'i') {
    if (s == "+" || s == "-") throw Error(ErrorCode::invalid_argument, "invalid complex number '" + text + "'");
    return {parse_real(s, text), 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(s, text)};
  const std::string re = s.substr(0, split);
  if (re.empty()) throw Error(ErrorCode::invalid_argument, "invalid complex number '" + text + "'");
  return {parse_real(re, text), parse_real(s.substr(split), text)};
}

std::string format_complex(cplx z) {
  const std::string im = shortest(std::abs(z.imag()));
  return shortest(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

io::json RunConfig::echo() const {
  io::json j;
  j["version"] = HOLOCORR_VERSION;
  j["command"] = command;
  j["p"] = common.p;
  j["q"] = common.q;
  j["c"] = io::to_json(common.c);
  j["rng_seed"] = common.rng_seed;
  j["output_dir"] = common.output_dir;
  j["threads"] = common.threads;
  j["options"] = options;
  return j;
}

std::vector<std::string> RunConfig::preamble() const {
  std::vector<std::string> lines;
  const io::json e = echo();
  for (const auto& [key, value] : e.items()) lines.push_back(key + ": " + value.dump());
  return lines;
}

std::string resolve_output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return ".";
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::hyperbolicity_unverified:
    case ErrorCode::bracket_failure:
    case ErrorCode::seed_failure:
      return kExitPrecondition;
    case ErrorCode::singular_point:
    case ErrorCode::inconsistent_pair:
    case ErrorCode::numeric_failure:
      return kExitNumeric;
  }
  return kExitNumeric;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace holocorr::cli
