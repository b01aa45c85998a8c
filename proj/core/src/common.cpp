#include "pareto_tame/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace pareto_tame {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0 into 0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string format_roundtrip(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string format_vec(const Vec& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_real(v[i]);
  }
  return out + ")";
}

std::string format_index_set(const IndexSet& indices) {
  std::string out;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(indices[k] + 1);
  }
  return out;
}

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Vec to_vec(const std::vector<double>& values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = values[i];
  }
  return v;
}

std::size_t thread_cap() {
  static const std::size_t cap = [] {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PARETO_TAME_THREADS")) {
      char* end = nullptr;
      const long requested = std::strtol(env, &end, 10);
      if (end != env && requested > 0) {
        hw = std::min<std::size_t>(hw, static_cast<std::size_t>(requested));
      }
    }
    return hw;
  }();
  return cap;
}

}  // namespace pareto_tame
