#include "lpval/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lpval {

using nlohmann::json;

json toJson(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json toJson(const Body& K) {
  json out;
  out["n"] = K.ambientDim();
  out["vertices"] = json::array();
  for (Index i = 0; i < K.vertexCount(); ++i) out["vertices"].push_back(toJson(Vector(K.vertex(i))));
  if (K.hasTriangulation()) out["simplices"] = K.cells();
  return out;
}

json toJson(const LinearMap<double>& map) {
  json out;
  out["n"] = map.dim();
  out["entries"] = json::array();
  for (Index i = 0; i < map.dim(); ++i) out["entries"].push_back(toJson(Vector(map.matrix().row(i).transpose())));
  return out;
}

json toJson(const CheckReport& report) {
  json out;
  out["name"] = report.name;
  out["cases"] = report.cases;
  out["max_abs_deviation"] = report.max_abs_deviation;
  out["max_rel_deviation"] = std::isfinite(report.max_rel_deviation) ? json(report.max_rel_deviation) : json(nullptr);
  out["passed"] = report.passed;
  out["worst_case"] = report.worst_case.empty() ? json(nullptr) : json::parse(report.worst_case);
  out["seed"] = report.seed;
  out["tolerance"] = report.tolerance;
  return out;
}

json toJson(const FitResult& fit) {
  json out;
  out["domain"] = domainName(fit.domain);
  out["basis"] = fit.basis;
  out["coefficients"] = fit.coefficients;
  json c = json::array();
  for (double v : fit.minkowskiCoefficients()) c.push_back(std::isnan(v) ? json(nullptr) : json(v));
  out["minkowski_coefficients"] = c;
  out["residual"] = fit.residual;
  out["p"] = fit.p;
  out["warnings"] = fit.warnings;
  return out;
}

Vector vectorFromJson(const json& j, Index n) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n) throw ParseError("expected a coordinate list of length " + std::to_string(n));
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) throw ParseError("coordinate is not a number");
    v(i) = j[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

Body bodyFromJson(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("vertices")) throw ParseError("body needs fields n and vertices");
  if (!j["n"].is_number_integer()) throw ParseError("n must be an integer");
  const Index n = j["n"].get<Index>();
  if (n < 1) throw ParseError("n must be at least 1");
  const json& verts = j["vertices"];
  if (!verts.is_array()) throw ParseError("vertices must be an array");
  Matrix v(n, static_cast<Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) v.col(static_cast<Index>(i)) = vectorFromJson(verts[i], n);
  std::optional<std::vector<Cell>> cells;
  if (j.contains("simplices")) {
    if (!j["simplices"].is_array()) throw ParseError("simplices must be an array");
    try {
      cells = j["simplices"].get<std::vector<Cell>>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad simplices: ") + e.what());
    }
  }
  try {
    return Body(n, std::move(v), std::move(cells));
  } catch (const GeometryError& e) {
    throw ParseError(e.what());
  }
}

LinearMap<double> linearMapFromJson(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries")) throw ParseError("matrix needs fields n and entries");
  const Index n = j["n"].get<Index>();
  const json& rows = j["entries"];
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n) throw ParseError("entries must have n rows");
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m.row(i) = vectorFromJson(rows[static_cast<std::size_t>(i)], n).transpose();
  return LinearMap<double>(std::move(m));
}

json readJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Body readBody(const std::filesystem::path& path) { return bodyFromJson(readJsonFile(path)); }

void writeBody(const std::filesystem::path& path, const Body& K) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << toJson(K).dump(2) << '\n';
}

}  // namespace lpval
