#pragma once

// Command-line front end. Exit codes: 0 success, 1 check failure, 2 usage or
// parse error.

#include "lpval/lab.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lpval::cli {

enum class Format { Csv, Json };

struct RunConfig {
  double p = 2.0;
  Index n = 3;
  std::uint64_t seed = 1;
  std::int64_t samples = 1000000;
  double tol = 1e-8;
  int directions = 0;  // 0: command default
  Format format = Format::Csv;
};

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

/// Decimal text with 17 significant digits.
std::string formatNumber(double v);

int cmdConstants(const RunConfig& cfg, std::ostream& out);

/// `directionsPath` may be empty, in which case cfg.directions seeded unit
/// vectors are used. With `monteCarlo`, M-family rows gain a sampled estimate.
int cmdEval(const RunConfig& cfg, const std::string& op, const std::string& bodyPath,
            const std::string& directionsPath, bool monteCarlo, std::ostream& out);

int cmdVerify(const RunConfig& cfg, Suite suite, std::ostream& out);

/// `spec` is a built-in operator name or a coefficient file.
int cmdFit(const RunConfig& cfg, const std::string& spec, Domain domain, const std::string& bodiesDir, bool includeJ,
           std::ostream& out, std::ostream& err);

int cmdDemoDiscontinuity(const RunConfig& cfg, const std::vector<double>& epsilons, std::ostream& out);

/// Parses arguments (argv[0] is the program name) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpval::cli
