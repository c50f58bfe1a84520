// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/split.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "smearcount/errors.h"
#include "smearcount/rng.h"

namespace smearcount {
namespace {

bool ById(const ImageRecord& a, const ImageRecord& b) {
  return a.image_id < b.image_id;
}

std::size_t TargetTrainSize(std::size_t n, double fraction) {
  auto target = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * fraction));
  if (n >= 2) target = std::clamp<std::size_t>(target, 1, n - 1);
  return target;
}

}  // namespace

SplitResult SplitDataset(const Dataset& dataset, const SplitOptions& options) {
  if (dataset.empty()) throw ValidationError("cannot split an empty dataset");
  if (!(options.train_fraction > 0 && options.train_fraction < 1)) {
    throw ValidationError("train fraction must lie in (0, 1)");
  }

  std::vector<ImageRecord> sorted = dataset.records;
  std::sort(sorted.begin(), sorted.end(), ById);
  const std::size_t target = TargetTrainSize(sorted.size(), options.train_fraction);
  Rng rng(options.seed);
  SplitResult out;

  if (!options.group_by_slide) {
    rng.Shuffle(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      (i < target ? out.train : out.test).records.push_back(std::move(sorted[i]));
    }
  } else {
    std::map<std::string, std::vector<ImageRecord>> by_slide;
    for (auto& r : sorted) by_slide[r.metadata.slide_id].push_back(std::move(r));
    std::vector<std::vector<ImageRecord>*> groups;
    for (auto& [slide, records] : by_slide) groups.push_back(&records);
    rng.Shuffle(groups.begin(), groups.end());

    std::size_t taken = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const bool last_group = g + 1 == groups.size();
      const bool to_train =
          taken < target && !(last_group && g > 0 && out.test.empty());
      for (auto& r : *groups[g]) {
        (to_train ? out.train : out.test).records.push_back(std::move(r));
      }
      if (to_train) taken += groups[g]->size();
    }
  }

  std::sort(out.train.records.begin(), out.train.records.end(), ById);
  std::sort(out.test.records.begin(), out.test.records.end(), ById);
  return out;
}

}  // namespace smearcount
