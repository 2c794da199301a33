#pragma once

// JSON forms of bodies, matrices and reports.
//
//   body:   {"n": 3, "vertices": [[0,0,0], ...], "simplices": [[0,1,2,3], ...]}
//   matrix: {"n": 3, "entries": [[1,0,0], ...]}   (row-major)

#include "lpval/geometry.hpp"
#include "lpval/lab.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace lpval {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json toJson(const Vector& v);
nlohmann::json toJson(const Body& K);
nlohmann::json toJson(const LinearMap<double>& map);
nlohmann::json toJson(const CheckReport& report);
nlohmann::json toJson(const FitResult& fit);

Vector vectorFromJson(const nlohmann::json& j, Index n);
Body bodyFromJson(const nlohmann::json& j);
LinearMap<double> linearMapFromJson(const nlohmann::json& j);

nlohmann::json readJsonFile(const std::filesystem::path& path);
Body readBody(const std::filesystem::path& path);
void writeBody(const std::filesystem::path& path, const Body& K);

}  // namespace lpval
