// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace smearcount {

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

// Spearman's rho: Pearson correlation of the average-rank vectors.
// Throws ValidationError when the lengths differ or are below 2. Returns
// nullopt when either input is constant (zero rank variance).
std::optional<double> SpearmanRho(std::span<const double> x,
                                  std::span<const double> y);

// Two-sided permutation p-value for rho: the share of permutations of y whose
// |rho| is at least the observed |rho|. Enumerates every permutation when
// n <= 8, otherwise draws `samples` seeded random permutations (counting the
// observed one). nullopt when rho itself is undefined.
std::optional<double> SpearmanPermutationPValue(std::span<const double> x,
                                                std::span<const double> y,
                                                int samples = 10000,
                                                std::uint64_t seed = 0);

}  // namespace smearcount
