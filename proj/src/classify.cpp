#include "pptkit/classify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "pptkit/permanent.hpp"

namespace pptkit {

namespace {

struct SweepShape {
  int n;
  int free_bits;
  std::uint64_t count;
};

SweepShape sweep_shape(int n, SweepMode mode, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("matrix order must be positive");
  if (mode == SweepMode::Exhaustive && n > kExhaustiveMaxOrder) {
    throw UnsupportedError("exhaustive sweep supports n <= " + std::to_string(kExhaustiveMaxOrder));
  }
  if (mode == SweepMode::NormalizedSearch && n > kNormalizedMaxOrder) {
    throw UnsupportedError("normalized search supports n <= " + std::to_string(kNormalizedMaxOrder));
  }
  const int bits = mode == SweepMode::Exhaustive ? n * n : (n - 1) * (n - 1);
  std::uint64_t count = std::uint64_t{1} << bits;
  if (budget && budget < count) count = budget;
  return {n, bits, count};
}

// Pattern bit b set means the b-th free entry is -1.
void fill_pattern(std::int8_t* e, int n, SweepMode mode, std::uint64_t pattern) {
  if (mode == SweepMode::Exhaustive) {
    for (int k = 0; k < n * n; ++k) e[k] = (pattern >> k) & 1U ? -1 : 1;
    return;
  }
  int b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == 0 || j == 0) e[i * n + j] = 1;
      else e[i * n + j] = (pattern >> b++) & 1U ? -1 : 1;
    }
}

ClassificationResult finish(std::set<SignMatrix> classes, const SweepShape& shape) {
  ClassificationResult r;
  r.classes.assign(classes.begin(), classes.end());
  r.examined = shape.count;
  r.complete = shape.count == (std::uint64_t{1} << shape.free_bits);
  return r;
}

}  // namespace

ClassificationResult classify_vanishing(int n, SweepMode mode, std::uint64_t budget) {
  const auto shape = sweep_shape(n, mode, budget);
  std::set<SignMatrix> merged;
  std::uint64_t vanishing = 0, odd = 0;

#pragma omp parallel
  {
    std::set<SignMatrix> local;
    std::vector<std::int8_t> e(static_cast<std::size_t>(n) * n);
    std::uint64_t v = 0, o = 0;
#pragma omp for schedule(static) nowait
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(shape.count); ++p) {
      fill_pattern(e.data(), n, mode, static_cast<std::uint64_t>(p));
      if (permanent_small(e.data(), n) != 0) continue;
      ++v;
      const auto minus = std::count(e.begin(), e.end(), std::int8_t{-1});
      if (minus % 2) ++o;
      local.insert(canonical_form(SignMatrix(n, n, e)));
    }
#pragma omp critical
    {
      merged.insert(local.begin(), local.end());
      vanishing += v;
      odd += o;
    }
  }
  auto r = finish(std::move(merged), shape);
  r.vanishing = vanishing;
  r.vanishing_odd_mu = odd;
  return r;
}

std::map<int, std::pair<std::uint64_t, std::uint64_t>> vanishing_by_minus_count(int n) {
  const auto shape = sweep_shape(n, SweepMode::Exhaustive, 0);
  std::map<int, std::pair<std::uint64_t, std::uint64_t>> out;
  std::vector<std::int8_t> e(static_cast<std::size_t>(n) * n);
  for (std::uint64_t p = 0; p < shape.count; ++p) {
    fill_pattern(e.data(), n, SweepMode::Exhaustive, p);
    auto& slot = out[static_cast<int>(std::count(e.begin(), e.end(), std::int8_t{-1}))];
    ++slot.first;
    if (permanent_small(e.data(), n) == 0) ++slot.second;
  }
  return out;
}

namespace reference {

ClassificationResult classify_vanishing(int n, SweepMode mode, std::uint64_t budget) {
  const auto shape = sweep_shape(n, mode, budget);
  std::set<SignMatrix> classes;
  std::uint64_t vanishing = 0, odd = 0;
  std::vector<std::int8_t> e(static_cast<std::size_t>(n) * n);
  for (std::uint64_t p = 0; p < shape.count; ++p) {
    fill_pattern(e.data(), n, mode, p);
    SignMatrix m(n, n, e);
    if (reference::permanent_ryser(m) != 0) continue;
    ++vanishing;
    if (m.minus_count() % 2) ++odd;
    classes.insert(canonical_form(m));
  }
  auto r = finish(std::move(classes), shape);
  r.vanishing = vanishing;
  r.vanishing_odd_mu = odd;
  return r;
}

}  // namespace reference

}  // namespace pptkit
