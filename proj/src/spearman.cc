// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/spearman.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smearcount/errors.h"
#include "smearcount/rng.h"

namespace smearcount {
namespace {

std::optional<double> Pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0 || sbb == 0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

void CheckLengths(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("spearman: length mismatch (" +
                          std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw ValidationError("spearman: need at least 2 pairs");
}

}  // namespace

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    const double rank = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> SpearmanRho(std::span<const double> x,
                                  std::span<const double> y) {
  CheckLengths(x, y);
  const auto rx = AverageRanks(x);
  const auto ry = AverageRanks(y);
  return Pearson(rx, ry);
}

std::optional<double> SpearmanPermutationPValue(std::span<const double> x,
                                                std::span<const double> y,
                                                int samples, std::uint64_t seed) {
  CheckLengths(x, y);
  const auto rx = AverageRanks(x);
  auto ry = AverageRanks(y);
  const auto observed = Pearson(rx, ry);
  if (!observed) return std::nullopt;
  // Guards against ties in |rho| that differ only by rounding.
  const double cutoff = std::abs(*observed) - 1e-12;

  auto extreme = [&](const std::vector<double>& perm) {
    auto r = Pearson(rx, perm);
    return r && std::abs(*r) >= cutoff;
  };

  if (x.size() <= 8) {
    std::vector<std::size_t> idx(ry.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> perm(ry.size());
    long long hits = 0, total = 0;
    do {
      for (std::size_t i = 0; i < idx.size(); ++i) perm[i] = ry[idx[i]];
      hits += extreme(perm) ? 1 : 0;
      ++total;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
  }

  Rng rng(seed);
  long long hits = 1;  // the observed arrangement
  for (int s = 0; s < samples; ++s) {
    rng.Shuffle(ry.begin(), ry.end());
    hits += extreme(ry) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(samples + 1);
}

}  // namespace smearcount
