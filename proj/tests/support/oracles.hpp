// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
//
// Test-only reference implementations, deliberately independent of the
// production code paths: vocabulary alignment through std::map and literal
// textbook formulas for the similarity coefficients and the SAW procedure.

#pragma once

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "medselect/term_vector.hpp"

namespace oracle {

struct Aligned {
  std::vector<double> u;
  std::vector<double> s;
};

inline Aligned align(const medselect::TermVector& u, const medselect::TermVector& s) {
  std::map<std::string, std::pair<double, double>> merged;
  for (const auto& e : u.entries()) merged[e.term].first = e.weight;
  for (const auto& e : s.entries()) merged[e.term].second = e.weight;
  Aligned out;
  for (const auto& [term, weights] : merged) {
    out.u.push_back(weights.first);
    out.s.push_back(weights.second);
  }
  return out;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double cosine(const medselect::TermVector& u, const medselect::TermVector& s) {
  const Aligned al = align(u, s);
  const double a = dot(al.u, al.s);
  if (a == 0.0) return 0.0;
  return a / std::sqrt(dot(al.u, al.u) * dot(al.s, al.s));
}

inline double jaccard(const medselect::TermVector& u, const medselect::TermVector& s) {
  const Aligned al = align(u, s);
  const double a = dot(al.u, al.s);
  if (a == 0.0) return 0.0;
  return a / (dot(al.u, al.u) + dot(al.s, al.s) - a);
}

inline double dice(const medselect::TermVector& u, const medselect::TermVector& s) {
  const Aligned al = align(u, s);
  const double a = dot(al.u, al.s);
  if (a == 0.0) return 0.0;
  return 2.0 * a / (dot(al.u, al.u) + dot(al.s, al.s));
}

inline double average(const medselect::TermVector& u, const medselect::TermVector& s) {
  return (cosine(u, s) + jaccard(u, s) + dice(u, s)) / 3.0;
}

// Brute-force SAW: raw values per (row, column), scaled by column min-max,
// weighted sum, sorted by (score desc, id asc).
struct SawInstance {
  std::vector<std::string> ids;                  // n rows
  std::vector<std::vector<double>> values;       // n x m
  std::vector<double> weights;                   // m
};

inline std::vector<std::pair<std::string, double>> saw_rank(const SawInstance& instance) {
  const std::size_t n = instance.ids.size();
  const std::size_t m = instance.weights.size();
  std::vector<std::pair<std::string, double>> scored;
  for (std::size_t i = 0; i < n; ++i) scored.emplace_back(instance.ids[i], 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double lo = instance.values[0][j], hi = instance.values[0][j];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, instance.values[i][j]);
      hi = std::max(hi, instance.values[i][j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double scaled = hi == lo ? 0.0 : (instance.values[i][j] - lo) / (hi - lo);
      scored[i].second += scaled * instance.weights[j];
    }
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return scored;
}

// --- deterministic random inputs -------------------------------------------

inline medselect::TermVector random_vector(std::mt19937& rng, int max_dims = 12,
                                           int pool = 16) {
  std::uniform_int_distribution<int> dims(1, max_dims);
  std::uniform_int_distribution<int> pick(0, pool - 1);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  const int n = dims(rng);
  std::map<std::string, double> terms;
  for (int i = 0; i < n; ++i) terms["t" + std::to_string(pick(rng))] = weight(rng);
  std::vector<medselect::TermEntry> entries;
  for (const auto& [term, w] : terms) entries.push_back({term, w});
  return medselect::TermVector::from_canonical(std::move(entries));
}

inline SawInstance random_saw_instance(std::mt19937& rng, int rows = 5, int cols = 4) {
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::uniform_int_distribution<int> weight_pick(0, 3);
  static const double kWeights[] = {0.4, 0.3, 0.2, 0.1};
  SawInstance instance;
  for (int i = 0; i < rows; ++i) {
    instance.ids.push_back("s" + std::to_string(i + 1));
    std::vector<double> row;
    for (int j = 0; j < cols; ++j) row.push_back(value(rng));
    instance.values.push_back(std::move(row));
  }
  for (int j = 0; j < cols; ++j) instance.weights.push_back(kWeights[weight_pick(rng)]);
  return instance;
}

}  // namespace oracle
