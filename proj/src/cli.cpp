#include "lpval/cli.hpp"

#include "lpval/io.hpp"
#include "lpval/moment.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lpval::cli {

using nlohmann::json;

std::string formatNumber(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double deviation(double computed, double expected) {
  const double d = std::abs(computed - expected);
  return expected == 0.0 ? d : d / std::abs(expected);
}

std::string directionLabel(const Vector& u) {
  std::string s = "(";
  for (Index i = 0; i < u.size(); ++i) {
    if (i) s += ";";
    s += formatNumber(u(i) + 0.0);
  }
  return s + ")";
}

struct ConstantRow {
  std::string name;
  Vector direction;
  double computed;
  double expected;
};

std::vector<ConstantRow> constantRows(Index n, double p) {
  std::vector<ConstantRow> rows;
  const auto add = [&](std::string name, OperatorKind kind, const Body& K, const Vector& u, double expected) {
    rows.push_back({std::move(name), u, evaluate(kind, K, u, p), expected});
  };
  const auto e = [n](Index i) { return Vector(Vector::Unit(n, i)); };
  const OperatorKind Ipp{Family::I, Sign::Plus}, Ipm{Family::I, Sign::Minus};
  const OperatorKind Jpp{Family::J, Sign::Plus}, Jpm{Family::J, Sign::Minus};
  const OperatorKind Mpp{Family::M, Sign::Plus}, Mpps{Family::Mstar, Sign::Plus};

  double moment = 1.0;
  for (Index k = 1; k <= n; ++k) moment /= p + double(k);

  const Body simplex = referenceBody<double>(ReferenceBody::StandardSimplex, n);
  const Body facet = referenceBody<double>(ReferenceBody::FacetSimplex, n);
  for (Index i = 0; i < n; ++i) {
    add("Mpp(T^n)", Mpp, simplex, e(i), moment);
    add("Mpp(T^n)", Mpp, simplex, -e(i), 0.0);
  }
  for (Index i = 0; i < n; ++i) {
    add("Mpps(facet)", Mpps, facet, e(i), moment);
    add("Mpps(facet)", Mpps, facet, -e(i), 0.0);
  }

  const Body seg = referenceBody<double>(ReferenceBody::SegmentOriginE1, n);
  const Body seg12 = referenceBody<double>(ReferenceBody::SegmentE1TwoE1, n);
  add("Ipp([o,e1])", Ipp, seg, e(0), 1.0);
  add("Ipp([o,e1])", Ipp, seg, -e(0), 0.0);
  add("Ipp([e1,2e1])", Ipp, seg12, e(0), std::pow(2.0, p));
  add("Ipp([e1,2e1])", Ipp, seg12, -e(0), 0.0);
  add("Jpp([e1,2e1])", Jpp, seg12, e(0), 1.0);
  add("Jpp([e1,2e1])", Jpp, seg12, -e(0), 0.0);

  const Body tri = referenceBody<double>(ReferenceBody::Triangle112, n);
  const Vector e12 = e(0) + e(1);
  const Vector e212 = 2.0 * e(0) + e(1);
  for (const auto& [u, ip, jp] : {std::tuple{e(0), 1.0, 0.0}, std::tuple{e(1), 1.0, 0.0},
                                   std::tuple{e12, std::pow(2.0, p), 1.0}}) {
    add("Ipp(conv{e1,e2,e1+e2})", Ipp, tri, u, ip);
    add("Jpp(conv{e1,e2,e1+e2})", Jpp, tri, u, jp);
    add("Ipm(conv{e1,e2,e1+e2})", Ipm, tri, u, 0.0);
    add("Jpm(conv{e1,e2,e1+e2})", Jpm, tri, u, 0.0);
  }

  Matrix edge = Matrix::Zero(n, 2);
  edge(0, 0) = 1.0;
  edge(1, 1) = 1.0;
  const Body t1 = simplexBody<double>(edge);
  for (const auto& [u, ip, jp] : {std::tuple{e(0), 1.0, 0.0}, std::tuple{e12, 1.0, 1.0},
                                   std::tuple{e212, std::pow(2.0, p), 1.0}}) {
    add("Ipp(conv{e1,e2})", Ipp, t1, u, ip);
    add("Jpp(conv{e1,e2})", Jpp, t1, u, jp);
    add("Ipm(conv{e1,e2})", Ipm, t1, u, 0.0);
    add("Jpm(conv{e1,e2})", Jpm, t1, u, 0.0);
  }

  if (n == 2) {
    const OperatorKind Epp{Family::E, Sign::Plus}, Fpp{Family::F, Sign::Plus};
    for (Index i = 0; i < 2; ++i) {
      add("Epp(T^2)", Epp, simplex, e(i), 0.5);
      add("Epp(T^2)", Epp, simplex, -e(i), 0.0);
      add("Epp(conv{e1,e2})", Epp, t1, e(i), 0.5);
      add("Epp(conv{e1,e2})", Epp, t1, -e(i), 0.0);
      add("Fpp(T^2)", Fpp, simplex, e(i), 0.0);
      for (const Vector& u : {e(i), Vector(-e(i))}) {
        const double combined = evaluate(Ipp, simplex, u, p) - evaluate(Epp, simplex, u, p) +
                                evaluate(Jpp, simplex, u, p) - evaluate(Fpp, simplex, u, p);
        rows.push_back({"(Ipp-Epp+Jpp-Fpp)(T^2)", u, combined, u(i) > 0 ? 0.5 : 0.0});
      }
    }
    Matrix lifted(2, 2);
    lifted << 0.0, 1.0, 1e-3, 1e-3;
    rows.push_back({"(Jpp-Fpp)(eps e2+[o,e1]), eps=1e-3", e(0),
                    evaluate(Jpp, simplexBody<double>(lifted), e(0), p) -
                        evaluate(Fpp, simplexBody<double>(lifted), e(0), p),
                    -0.5});
  }
  return rows;
}

std::vector<Vector> readDirections(const std::string& path, Index n) {
  const json j = readJsonFile(path);
  const json& list = j.is_object() && j.contains("directions") ? j["directions"] : j;
  if (!list.is_array()) throw ParseError("directions file must hold an array of vectors");
  std::vector<Vector> dirs;
  for (const json& v : list) dirs.push_back(vectorFromJson(v, n));
  return dirs;
}

std::vector<Body> readBodies(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  if (ec) throw ParseError("cannot read directory " + dir);
  std::sort(files.begin(), files.end());
  std::vector<Body> bodies;
  for (const auto& f : files) bodies.push_back(readBody(f));
  if (bodies.empty()) throw ParseError("no body files in " + dir);
  return bodies;
}

BlackBoxValuation valuationFromSpec(const std::string& spec, Index n, double p) {
  if (const auto kind = parseOperator(spec)) {
    const auto available = builtinOperators(n);
    if (std::find(available.begin(), available.end(), *kind) == available.end())
      throw UsageError(spec + " is not available for n = " + std::to_string(n));
    return builtinValuation(*kind, n, p);
  }
  if (!std::filesystem::exists(spec)) throw UsageError("unknown operator or missing coefficient file: " + spec);
  const json j = readJsonFile(spec);
  std::vector<WeightedOperator> terms;
  if (j.contains("terms")) {
    if (!j["terms"].is_object()) throw ParseError("terms must map operator names to weights");
    for (const auto& [name, w] : j["terms"].items()) {
      const auto kind = parseOperator(name);
      if (!kind) throw ParseError("unknown operator " + name);
      if (!w.is_number()) throw ParseError("weight of " + name + " is not a number");
      terms.push_back({w.get<double>(), *kind});
    }
  } else if (j.contains("coefficients")) {
    const json& c = j["coefficients"];
    std::vector<OperatorKind> basis;
    if (c.is_array() && c.size() == 4) basis = fitBasis(Domain::Kno, false);
    else if (c.is_array() && c.size() == 6) basis = fitBasis(Domain::Kn, false);
    else if (c.is_array() && c.size() == 8) basis = fitBasis(Domain::Kn, true);
    else throw ParseError("coefficients must list 4, 6 or 8 numbers");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!c[i].is_number()) throw ParseError("coefficient is not a number");
      terms.push_back({c[i].get<double>(), basis[i]});
    }
  } else {
    throw ParseError("coefficient file needs \"coefficients\" or \"terms\"");
  }
  BlackBoxValuation phi = linearCombination(terms, n, p);
  phi.name = std::filesystem::path(spec).stem().string();
  return phi;
}

std::vector<Body> defaultFitBodies(Domain domain, Index n, std::uint64_t seed) {
  std::vector<Body> bodies;
  for (std::uint64_t i = 0; i < 8; ++i) {
    const std::uint64_t s = seed * 1000 + i;
    if (domain == Domain::Kno || i % 2 == 0)
      bodies.push_back(randomBodyContainingOrigin(n, s));
    else
      bodies.push_back(randomBody(n, s));
  }
  return bodies;
}

}  // namespace

int cmdConstants(const RunConfig& cfg, std::ostream& out) {
  const auto rows = constantRows(cfg.n, cfg.p);
  bool ok = true;
  std::ostringstream text;
  if (cfg.format == Format::Json) {
    json arr = json::array();
    for (const auto& r : rows) {
      const double dev = deviation(r.computed, r.expected);
      ok = ok && dev <= cfg.tol;
      arr.push_back({{"name", r.name}, {"direction", toJson(r.direction)}, {"computed", r.computed},
                     {"expected", r.expected}, {"deviation", dev}});
    }
    text << json{{"n", cfg.n}, {"p", cfg.p}, {"rows", arr}}.dump(2) << '\n';
  } else {
    text << "name,direction,computed,expected,deviation\n";
    for (const auto& r : rows) {
      const double dev = deviation(r.computed, r.expected);
      ok = ok && dev <= cfg.tol;
      text << '"' << r.name << "\"," << directionLabel(r.direction) << ',' << formatNumber(r.computed) << ','
           << formatNumber(r.expected) << ',' << formatNumber(dev) << '\n';
    }
  }
  out << text.str();
  return ok ? kOk : kCheckFailed;
}

int cmdEval(const RunConfig& cfg, const std::string& op, const std::string& bodyPath,
            const std::string& directionsPath, bool monteCarlo, std::ostream& out) {
  const auto kind = parseOperator(op);
  if (!kind) throw UsageError("unknown operator " + op);
  const Body K = readBody(bodyPath);
  const Index n = K.ambientDim();
  if ((kind->family == Family::E || kind->family == Family::F) && n != 2)
    throw UsageError(op + " is defined for n = 2 only");
  if ((kind->family == Family::M || kind->family == Family::Mstar) && !K.hasTriangulation())
    throw UsageError(op + " needs a body with a triangulation");
  if (monteCarlo && kind->family != Family::M) throw UsageError("--mc applies to Mpp and Mpm only");
  const std::vector<Vector> dirs = directionsPath.empty()
                                       ? randomDirections(n, cfg.directions > 0 ? cfg.directions : 20, cfg.seed)
                                       : readDirections(directionsPath, n);

  const PHomFunction f = bind(*kind, K, cfg.p);
  const Body mcBody = kind->sign == Sign::Plus ? K : reflect(K);
  const MomentParams<double> params(cfg.p, n);

  std::ostringstream text;
  json rows = json::array();
  if (cfg.format == Format::Csv) {
    for (Index i = 0; i < n; ++i) text << 'u' << i + 1 << ',';
    text << "value_hp,value";
    if (monteCarlo) text << ",mc_value_hp,mc_stderr";
    text << '\n';
  }
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const Vector& u = dirs[k];
    const double hp = f(u);
    const double value = std::pow(std::max(hp, 0.0), 1.0 / cfg.p);
    McEstimate mc;
    if (monteCarlo) mc = mcMoment(mcBody, u, params, cfg.samples, cfg.seed + k);
    if (cfg.format == Format::Csv) {
      for (Index i = 0; i < n; ++i) text << formatNumber(u(i)) << ',';
      text << formatNumber(hp) << ',' << formatNumber(value);
      if (monteCarlo) text << ',' << formatNumber(mc.value) << ',' << formatNumber(mc.standardError);
      text << '\n';
    } else {
      json row{{"u", toJson(u)}, {"value_hp", hp}, {"value", value}};
      if (monteCarlo) {
        row["mc_value_hp"] = mc.value;
        row["mc_stderr"] = mc.standardError;
      }
      rows.push_back(row);
    }
  }
  if (cfg.format == Format::Json)
    text << json{{"operator", op}, {"p", cfg.p}, {"seed", cfg.seed}, {"rows", rows}}.dump(2) << '\n';
  out << text.str();
  return kOk;
}

int cmdVerify(const RunConfig& cfg, Suite suite, std::ostream& out) {
  SuiteConfig sc;
  sc.n = cfg.n;
  sc.p = cfg.p;
  sc.seed = cfg.seed;
  sc.tol = cfg.tol;
  sc.directions = cfg.directions > 0 ? cfg.directions : 20;
  const std::vector<CheckReport> reports = runSuite(suite, sc);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
  std::ostringstream text;
  if (cfg.format == Format::Csv) {
    text << "name,cases,max_abs_deviation,max_rel_deviation,passed\n";
    for (const auto& r : reports)
      text << r.name << ',' << r.cases << ',' << formatNumber(r.max_abs_deviation) << ','
           << formatNumber(r.max_rel_deviation) << ',' << (r.passed ? "true" : "false") << '\n';
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(toJson(r));
    text << json{{"n", cfg.n}, {"p", cfg.p}, {"seed", cfg.seed}, {"tolerance", cfg.tol}, {"passed", ok},
                 {"reports", arr}}
                .dump(2)
         << '\n';
  }
  out << text.str();
  return ok ? kOk : kCheckFailed;
}

int cmdFit(const RunConfig& cfg, const std::string& spec, Domain domain, const std::string& bodiesDir, bool includeJ,
           std::ostream& out, std::ostream& err) {
  const std::vector<Body> bodies = bodiesDir.empty() ? defaultFitBodies(domain, cfg.n, cfg.seed) : readBodies(bodiesDir);
  const Index n = bodies.front().ambientDim();
  for (const Body& K : bodies)
    if (K.ambientDim() != n) throw ParseError("sample bodies differ in dimension");
  if (domain == Domain::Kno)
    for (const Body& K : bodies)
      if (!originIn(K)) throw UsageError("domain Kno requires every sample body to contain the origin");
  const BlackBoxValuation phi = valuationFromSpec(spec, n, cfg.p);
  const auto dirs = randomDirections(n, cfg.directions > 0 ? cfg.directions : 40, cfg.seed);
  const FitResult fit = fitClassification(phi, bodies, dirs, domain, includeJ);
  for (const auto& w : fit.warnings) err << "warning: " << w << '\n';
  json j = toJson(fit);
  j["valuation"] = phi.name;
  j["seed"] = cfg.seed;
  out << j.dump(2) << '\n';
  return kOk;
}

int cmdDemoDiscontinuity(const RunConfig& cfg, const std::vector<double>& epsilons, std::ostream& out) {
  const DiscontinuityTable table = discontinuityDemo(cfg.p, epsilons);
  std::ostringstream text;
  if (cfg.format == Format::Csv) {
    text << "eps,value,hausdorff\n";
    for (const auto& r : table.rows)
      text << formatNumber(r.epsilon) << ',' << formatNumber(r.value) << ',' << formatNumber(r.hausdorff) << '\n';
    text << "limit," << formatNumber(table.limitValue) << ",0\n";
  } else {
    json rows = json::array();
    for (const auto& r : table.rows) rows.push_back({{"eps", r.epsilon}, {"value", r.value}, {"hausdorff", r.hausdorff}});
    text << json{{"p", cfg.p}, {"rows", rows}, {"limit", table.limitValue}}.dump(2) << '\n';
  }
  out << text.str();
  return kOk;
}

namespace {

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"L_p Minkowski valuation operators on polytopes"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string outPath;
  std::string format = "csv";
  bool formatGiven = false;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "exponent, p > 1")->capture_default_str();
    sub->add_option("--n", cfg.n, "ambient dimension")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "relative tolerance")->capture_default_str();
    sub->add_option("--dirs", cfg.directions, "number of seeded directions");
    sub->add_option("--out", outPath, "write output to a file");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->each([&](const std::string&) {
      formatGiven = true;
    });
  };

  CLI::App* constants = app.add_subcommand("constants", "closed-form constants against computed values");
  common(constants);

  CLI::App* eval = app.add_subcommand("eval", "evaluate an operator on a body");
  std::string op, bodyPath, dirsPath;
  bool mc = false;
  eval->add_option("operator", op, "Ipp, Ipm, Jpp, Jpm, Mpp, Mpm, Mpps, Mpms, Epp, Epm, Fpp, Fpm")->required();
  eval->add_option("body", bodyPath, "body JSON file")->required();
  eval->add_option("--directions", dirsPath, "JSON file of direction vectors");
  eval->add_flag("--mc", mc, "append Monte Carlo estimates (M family)");
  common(eval);

  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  std::string suiteName = "all";
  verify->add_option("suite", suiteName, "valuation, covariance, scaling, functional, projection or all")
      ->capture_default_str();
  common(verify);

  CLI::App* fit = app.add_subcommand("fit", "recover classification coefficients");
  std::string spec, domainName = "Kn", bodiesDir;
  bool withJ = false;
  fit->add_option("valuation", spec, "built-in operator name or coefficient file")->required();
  fit->add_option("--domain", domainName, "Kno or Kn")->capture_default_str();
  fit->add_option("--bodies", bodiesDir, "directory of body JSON files");
  fit->add_flag("--with-j", withJ, "extend the basis by Jpp and Jpm");
  common(fit);

  CLI::App* demo = app.add_subcommand("demo-discontinuity", "discontinuity of Ipp - Epp at [o,e1]");
  std::vector<double> epsilons{0.1, 0.01, 0.001};
  demo->add_option("--eps", epsilons, "epsilon values")->delimiter(',')->capture_default_str();
  common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!(cfg.p > 1.0)) {
    err << "error: p must satisfy p > 1 (the standing assumption of the L_p theory); got " << cfg.p << '\n';
    return kUsage;
  }
  if (cfg.n < 2) {
    err << "error: n must be at least 2\n";
    return kUsage;
  }
  if (cfg.samples < 1000) {
    err << "error: --samples must be at least 1000\n";
    return kUsage;
  }
  if (cfg.directions < 0) {
    err << "error: --dirs must be positive\n";
    return kUsage;
  }
  if (!(cfg.tol >= 0.0)) {
    err << "error: --tol must be nonnegative\n";
    return kUsage;
  }
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  if (!formatGiven && (verify->parsed() || fit->parsed())) cfg.format = Format::Json;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!outPath.empty()) {
    file.open(outPath, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << outPath << '\n';
      return kUsage;
    }
    sink = &file;
  }

  try {
    if (constants->parsed()) return cmdConstants(cfg, *sink);
    if (eval->parsed()) return cmdEval(cfg, op, bodyPath, dirsPath, mc, *sink);
    if (verify->parsed()) {
      const auto suite = parseSuite(suiteName);
      if (!suite) throw UsageError("unknown suite " + suiteName);
      return cmdVerify(cfg, *suite, *sink);
    }
    if (fit->parsed()) {
      const auto domain = parseDomain(domainName);
      if (!domain) throw UsageError("domain must be Kno or Kn");
      return cmdFit(cfg, spec, *domain, bodiesDir, withJ, *sink, err);
    }
    if (demo->parsed()) return cmdDemoDiscontinuity(cfg, epsilons, *sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RankDeficientError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return dispatch(argc, argv, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"lpval"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lpval::cli
