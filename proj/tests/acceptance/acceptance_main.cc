// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

// Acceptance gate: runs each criterion and prints one PASS/FAIL line per
// criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.h"
#include "commands.h"
#include "json.hpp"
#include "smearcount/augment.h"
#include "smearcount/bbox.h"
#include "smearcount/errors.h"
#include "smearcount/manifest.h"
#include "smearcount/metrics.h"
#include "smearcount/quantify.h"
#include "smearcount/rng.h"
#include "smearcount/spearman.h"
#include "smearcount/synthetic.h"
#include "smearcount/text.h"
#include "smearcount/voc.h"

namespace smearcount {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kIouTolerance = 1e-9;
constexpr double kIouTimeLimitSeconds = 5.0;
constexpr double kApTolerance = 1e-12;
constexpr double kPrecisionTarget = 0.686;
constexpr double kPrecisionTolerance = 0.002;
constexpr double kRecallTarget = 0.930;
constexpr double kSpearmanTolerance = 1e-9;
constexpr double kReferenceMaximumDensity = 47982;
constexpr double kPipelineTimeLimitSeconds = 60.0;

const std::string kFixtures = SMEARCOUNT_FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BBox ToBBox(const oracle::IntBox& b) {
  return {double(b.xmin), double(b.ymin), double(b.xmax), double(b.ymax)};
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("smearcount_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Outcome IouOracle() {
  Rng rng(1);
  const auto start = Clock::now();
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    auto box = [&] {
      const int x = static_cast<int>(rng.Between(0, 40));
      const int y = static_cast<int>(rng.Between(0, 40));
      return oracle::IntBox{x, y, x + static_cast<int>(rng.Between(1, 24)),
                            y + static_cast<int>(rng.Between(1, 24))};
    };
    const auto a = box(), b = box();
    worst = std::max(worst, std::abs(Iou(ToBBox(a), ToBBox(b)) - oracle::RasterIou(a, b)));
  }
  const double elapsed = Seconds(start);
  std::ostringstream s;
  s << "max |diff| " << worst << ", " << elapsed << " s";
  return {worst <= kIouTolerance && elapsed < kIouTimeLimitSeconds, s.str()};
}

Outcome MatchingOracle() {
  Rng rng(2);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<oracle::MicroObject> ogt, odet;
    std::vector<GroundTruthObject> gt;
    std::vector<Detection> dets;
    auto box = [&] {
      const int x = static_cast<int>(rng.Between(0, 10));
      const int y = static_cast<int>(rng.Between(0, 10));
      return oracle::IntBox{x, y, x + static_cast<int>(rng.Between(2, 8)),
                            y + static_cast<int>(rng.Between(2, 8))};
    };
    for (int i = 0, n = static_cast<int>(rng.Between(0, 6)); i < n; ++i) {
      const auto b = box();
      const int label = static_cast<int>(rng.Below(2));
      ogt.push_back({b, label, 0});
      gt.push_back({ToBBox(b), static_cast<ClassLabel>(label)});
    }
    for (int i = 0, n = static_cast<int>(rng.Between(0, 6)); i < n; ++i) {
      const auto b = box();
      const int label = static_cast<int>(rng.Below(2));
      const double score = static_cast<double>(rng.Between(1, 5)) / 5;
      odet.push_back({b, label, score});
      dets.push_back({"img", ToBBox(b), static_cast<ClassLabel>(label), score});
    }
    const auto got = MatchDetections(gt, dets, 0.5).Total();
    const auto want = oracle::BruteForceGreedyMatch(ogt, odet, 0.5);
    mismatches += got.tp != want.tp || got.fp != want.fp || got.fn != want.fn;
  }
  return {mismatches == 0, std::to_string(mismatches) + " of 1000 instances differ"};
}

Outcome ApHandCases() {
  const std::vector<ScoredMatch> hand = {{0.9, true}, {0.8, false}, {0.7, true}};
  const std::vector<ScoredMatch> perfect = {{0.9, true}, {0.6, true}, {0.3, true}};
  const std::vector<ScoredMatch> misses = {{0.9, false}, {0.2, false}};
  const double a = *AveragePrecision(hand, 2);
  const double b = *AveragePrecision(perfect, 3);
  const double c = *AveragePrecision(misses, 4);
  std::ostringstream s;
  s.precision(17);
  s << "hand " << a << ", perfect " << b << ", zero-TP " << c;
  return {std::abs(a - 5.0 / 6.0) <= kApTolerance && std::abs(b - 1.0) <= kApTolerance &&
              std::abs(c) <= kApTolerance,
          s.str()};
}

Outcome TableShapedCounts() {
  // 100 trophozoites over 10 images; 93 found exactly, 43 spurious boxes.
  Dataset dataset;
  DetectionSet detections;
  int found = 0, spurious = 0;
  for (int i = 0; i < 10; ++i) {
    ImageRecord r;
    r.image_id = "fixture_" + std::to_string(i);
    r.width = 400;
    r.height = 400;
    r.metadata.slide_id = "fixture";
    for (int k = 0; k < 10; ++k) {
      const BBox b{double(20 * k), 0, double(20 * k + 10), 10};
      r.objects.push_back({b, ClassLabel::kTrophozoite});
      if (found < 93) {
        detections.Add({r.image_id, b, ClassLabel::kTrophozoite, 0.9});
        ++found;
      }
    }
    for (int k = 0; k < 5 && spurious < 43; ++k, ++spurious) {
      detections.Add({r.image_id, {double(30 * k), 200, double(30 * k + 10), 210},
                      ClassLabel::kTrophozoite, 0.8});
    }
    dataset.records.push_back(r);
  }
  const auto report = Evaluate(dataset, detections, {});
  const auto& c = report.classes[ClassIndex(ClassLabel::kTrophozoite)];
  const double precision = c.precision.value_or(-1);
  const double recall = c.recall.value_or(-1);
  std::ostringstream s;
  s << "TP=" << c.counts.tp << " FP=" << c.counts.fp << " FN=" << c.counts.fn
    << " precision " << precision << " (target " << kPrecisionTarget << " +/- "
    << kPrecisionTolerance << "), recall " << recall;
  return {c.counts.tp == 93 && c.counts.fp == 43 && c.counts.fn == 7 &&
              std::abs(precision - kPrecisionTarget) <= kPrecisionTolerance &&
              recall == kRecallTarget,
          s.str()};
}

Outcome SpearmanOracle() {
  Rng rng(5);
  double worst = 0;
  int definedness_mismatch = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = static_cast<int>(rng.Between(2, 12));
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.Between(0, 5));
      y[i] = static_cast<double>(rng.Between(0, 5));
    }
    const auto got = SpearmanRho(x, y);
    const auto want = oracle::RankThenPearson(x, y);
    if (got.has_value() != want.has_value()) {
      ++definedness_mismatch;
    } else if (got) {
      worst = std::max(worst, std::abs(*got - *want));
    }
  }
  const std::vector<double> v = {3, 1, 4, 1, 5, 9, 2, 6};
  const std::vector<double> r(v.rbegin(), v.rend());
  const std::vector<double> up = {1, 2, 3, 4, 5, 6};
  const std::vector<double> down = {6, 5, 4, 3, 2, 1};
  const double same = *SpearmanRho(v, v);
  const double reversed = *SpearmanRho(up, down);
  std::ostringstream s;
  s << "max |diff| " << worst << ", undefined mismatches " << definedness_mismatch
    << ", identical " << same << ", reversed " << reversed << ", mirrored "
    << *SpearmanRho(v, r);
  return {worst <= kSpearmanTolerance && definedness_mismatch == 0 && same == 1.0 &&
              reversed == -1.0,
          s.str()};
}

Outcome ParasitemiaFormula() {
  auto counts = [](long long t, long long w) {
    return FilmCounts{"f", t, w, 1, CountSource::kModel};
  };
  const double base = Parasitemia(counts(1200, 200)).parasites_per_ul;
  Rng rng(6);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const long long t = rng.Between(0, 100000), w = rng.Between(1, 100000);
    const double d = Parasitemia(counts(t, w)).parasites_per_ul;
    violations += Parasitemia(counts(2 * t, 2 * w)).parasites_per_ul != d;
    violations += Parasitemia(counts(2 * t, w)).parasites_per_ul != 2 * d;
    violations += Parasitemia(counts(t, 2 * w)).parasites_per_ul != d / 2;
  }
  const auto table = InterpretationTable::Default();
  const auto reference = Parasitemia(counts(47982, 8000));
  const bool band_ok = reference.parasites_per_ul == kReferenceMaximumDensity &&
                       reference.interpretation == kBandMaximum &&
                       table.Interpret(base) == kBandMaximum &&
                       table.Interpret(kReferenceMaximumDensity - 1) != kBandMaximum;
  std::ostringstream s;
  s << "1200/200 -> " << base << "/ul, homogeneity violations " << violations
    << ", 47982/ul band '" << reference.interpretation << "'";
  return {base == 48000.0 && violations == 0 && band_ok, s.str()};
}

Outcome SyntheticPipeline() {
  const auto start = Clock::now();
  const fs::path dir = ScratchDir("pipeline");
  std::ostringstream log;
  cli::SynthOptions synth;
  synth.out_dir = (dir / "synth").string();
  synth.count = 50;
  synth.films = 2;
  synth.spec.seed = 2026;
  cli::RunSynth(synth, log);

  cli::IngestOptions ingest;
  ingest.voc_dir = synth.out_dir + "/annotations";
  ingest.metadata_csv = synth.out_dir + "/metadata.csv";
  ingest.manifest_out = (dir / "manifest.jsonl").string();
  cli::RunIngest(ingest, log);

  cli::DetectOptions detect;
  detect.image_dir = synth.out_dir + "/images";
  detect.detections_out = (dir / "detections.csv").string();
  detect.size_split = SuggestedSizeSplit(synth.spec);
  cli::RunDetect(detect, log);

  cli::EvaluateOptions evaluate;
  evaluate.manifest = ingest.manifest_out;
  evaluate.detections = detect.detections_out;
  evaluate.out_dir = (dir / "eval").string();
  const EvalReport report = cli::RunEvaluate(evaluate, log);
  bool perfect = report.map == 1.0;
  for (const auto& c : report.classes) {
    perfect = perfect && c.precision == 1.0 && c.recall == 1.0;
  }

  // Densities by hand from the annotation files and film assignment.
  const Dataset dataset = ReadManifest(ingest.manifest_out);
  const FilmMap films = ReadFilmMap(synth.out_dir + "/films.csv");
  std::map<std::string, std::pair<long long, long long>> totals;
  for (const auto& r : dataset.records) {
    auto& [t, w] = totals[films.at(r.image_id)];
    for (const auto& o : r.objects) (o.label == ClassLabel::kWbc ? w : t) += 1;
  }
  cli::QuantifyOptions quantify;
  quantify.manifest = ingest.manifest_out;
  quantify.detections = detect.detections_out;
  quantify.film_map = synth.out_dir + "/films.csv";
  quantify.out_dir = (dir / "quant").string();
  cli::RunQuantify(quantify, log);
  const auto quant =
      nlohmann::json::parse(text::ReadFile(quantify.out_dir + "/quant_report.json"));
  bool densities_ok = quant["films"].size() == 2 && totals.size() == 2;
  for (const auto& f : quant["films"]) {
    const auto& [t, w] = totals[f["film_id"].get<std::string>()];
    const double hand = static_cast<double>(t) * 8000.0 / static_cast<double>(w);
    densities_ok = densities_ok && f["parasites_per_ul"].is_number() &&
                   f["parasites_per_ul"].get<double>() == hand;
  }
  const double elapsed = Seconds(start);
  fs::remove_all(dir);
  std::ostringstream s;
  s << "mAP " << report.map;
  for (const auto& c : report.classes) {
    s << ", " << ClassName(c.label) << " P " << c.precision.value_or(-1) << " R "
      << c.recall.value_or(-1);
  }
  s << ", film densities " << (densities_ok ? "match" : "differ") << ", " << elapsed << " s";
  return {perfect && densities_ok && elapsed < kPipelineTimeLimitSeconds, s.str()};
}

Outcome RoundTripAndDeterminism() {
  int voc_failures = 0, voc_files = 0;
  for (const char* sub : {"voc", "voc_bad"}) {
    for (const auto& entry : fs::directory_iterator(kFixtures + "/" + sub)) {
      if (entry.path().extension() != ".xml") continue;
      VocAnnotation first;
      try {
        first = ParseVoc(text::ReadFile(entry.path().string()));
      } catch (const Error&) {
        continue;  // malformed fixtures have no fixed point to check
      }
      ++voc_files;
      const std::string once = WriteVoc(entry.path().filename().string(), first.width,
                                        first.height, first.objects);
      const VocAnnotation second = ParseVoc(once);
      const std::string twice = WriteVoc(entry.path().filename().string(), second.width,
                                         second.height, second.objects);
      voc_failures += !(second.objects == first.objects && second.width == first.width &&
                        second.height == first.height && once == twice);
    }
  }

  const Dataset manifest = ReadManifest(kFixtures + "/eval/gt_manifest.jsonl");
  const bool manifest_ok = ParseManifest(SerializeManifest(manifest)) == manifest &&
                           SerializeManifest(ParseManifest(SerializeManifest(manifest))) ==
                               SerializeManifest(manifest);

  auto run = [](const fs::path& dir) {
    std::ostringstream log;
    cli::SynthOptions synth;
    synth.out_dir = (dir / "synth").string();
    synth.count = 6;
    synth.films = 3;
    synth.spec.noise = 0.25;
    synth.spec.seed = 77;
    cli::RunSynth(synth, log);
    cli::IngestOptions ingest;
    ingest.voc_dir = synth.out_dir + "/annotations";
    ingest.manifest_out = (dir / "manifest.jsonl").string();
    cli::RunIngest(ingest, log);
    cli::DetectOptions detect;
    detect.image_dir = synth.out_dir + "/images";
    detect.detections_out = (dir / "detections.csv").string();
    cli::RunDetect(detect, log);
    cli::EvaluateOptions evaluate;
    evaluate.manifest = ingest.manifest_out;
    evaluate.detections = detect.detections_out;
    evaluate.out_dir = (dir / "out").string();
    evaluate.timestamp = false;
    cli::RunEvaluate(evaluate, log);
    cli::QuantifyOptions quantify;
    quantify.manifest = ingest.manifest_out;
    quantify.detections = detect.detections_out;
    quantify.film_map = synth.out_dir + "/films.csv";
    quantify.out_dir = (dir / "out").string();
    quantify.timestamp = false;
    cli::RunQuantify(quantify, log);
    std::string bytes;
    for (const char* f : {"out/eval_report.json", "out/eval_report.csv",
                          "out/quant_report.json", "out/quant_report.csv"}) {
      bytes += text::ReadFile((dir / f).string());
    }
    return bytes;
  };
  const fs::path a = ScratchDir("determinism_a"), b = ScratchDir("determinism_b");
  const bool reports_identical = run(a) == run(b);
  fs::remove_all(a);
  fs::remove_all(b);

  std::ostringstream s;
  s << voc_files << " VOC fixtures, " << voc_failures << " not fixed points; manifest "
    << (manifest_ok ? "round-trips" : "differs") << "; reports "
    << (reports_identical ? "byte-identical" : "differ");
  return {voc_files > 0 && voc_failures == 0 && manifest_ok && reports_identical, s.str()};
}

Outcome FlipInvolution() {
  Rng rng(9);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const double w = static_cast<double>(rng.Between(1, 4000));
    const double h = static_cast<double>(rng.Between(1, 4000));
    // Coordinates on a 1/1024-pixel grid; flipping them is exact in binary.
    auto coord = [&](double extent) {
      return static_cast<double>(rng.Between(0, static_cast<std::int64_t>(extent) * 1024)) /
             1024.0;
    };
    double x0 = coord(w), x1 = coord(w), y0 = coord(h), y1 = coord(h);
    if (x0 == x1 || y0 == y1) {
      x0 = 0;
      x1 = w;
      y0 = 0;
      y1 = h;
    }
    const BBox box{std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
    const FlipKind kind = rng.Bernoulli(0.5) ? FlipKind::kHorizontal : FlipKind::kVertical;
    failures += !(FlipBox(FlipBox(box, kind, w, h), kind, w, h) == box);
  }
  return {failures == 0, std::to_string(failures) + " of 10000 triples not restored"};
}

}  // namespace
}  // namespace smearcount

int main() {
  using smearcount::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"iou matches raster oracle", smearcount::IouOracle},
      {"matching matches brute force", smearcount::MatchingOracle},
      {"average precision hand cases", smearcount::ApHandCases},
      {"table-shaped precision and recall", smearcount::TableShapedCounts},
      {"spearman matches rank-then-pearson", smearcount::SpearmanOracle},
      {"parasitemia formula", smearcount::ParasitemiaFormula},
      {"synthetic end-to-end", smearcount::SyntheticPipeline},
      {"round trips and determinism", smearcount::RoundTripAndDeterminism},
      {"flip involution", smearcount::FlipInvolution},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("%s criterion %zu (%s): %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str());
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
