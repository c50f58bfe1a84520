// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "commands.h"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "smearcount/augment.h"
#include "smearcount/blob_detector.h"
#include "smearcount/errors.h"
#include "smearcount/image.h"
#include "smearcount/manifest.h"
#include "smearcount/report.h"
#include "smearcount/split.h"
#include "smearcount/text.h"
#include "smearcount/voc.h"

namespace smearcount::cli {
namespace {

namespace fs = std::filesystem;

void MakeDirs(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

std::string Join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void PrintClassHistogram(const Dataset& dataset, std::ostream& out) {
  std::size_t counts[kNumClasses] = {};
  for (const auto& r : dataset.records) {
    for (const auto& o : r.objects) counts[ClassIndex(o.label)]++;
  }
  for (ClassLabel label : kAllClasses) {
    out << "  " << ClassName(label) << ": " << counts[ClassIndex(label)] << "\n";
  }
}

std::string Ratio(const MaybeRatio& v) {
  if (!v) return kUndefined;
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << *v;
  return s.str();
}

ReportOptions MakeReportOptions(bool timestamp) {
  ReportOptions options;
  if (timestamp) options.timestamp = UtcTimestamp();
  return options;
}

}  // namespace

void RunIngest(const IngestOptions& options, std::ostream& out) {
  VocParseOptions parse;
  parse.strict = !options.lenient;
  parse.one_based = options.voc_one_based;
  if (!options.label_map.empty()) {
    parse.labels = LabelMap::FromConfigFile(options.label_map);
  }
  std::map<std::string, CaptureMetadata> metadata;
  if (!options.metadata_csv.empty()) metadata = ReadMetadataCsv(options.metadata_csv);

  IngestResult result = IngestVocDirectory(options.voc_dir, parse, metadata);
  WriteManifest(result.dataset, options.manifest_out);

  out << "ingested " << result.dataset.size() << " images into "
      << options.manifest_out << "\n";
  PrintClassHistogram(result.dataset, out);
  for (const auto& w : result.warnings) out << "warning: " << w << "\n";
}

void RunSplit(const SplitCommandOptions& options, std::ostream& out) {
  const Dataset dataset = ReadManifest(options.manifest);
  SplitOptions split;
  split.train_fraction = options.train_fraction;
  split.seed = options.seed;
  split.group_by_slide = options.group_by_slide;
  const SplitResult result = SplitDataset(dataset, split);
  WriteManifest(result.train, options.train_out);
  WriteManifest(result.test, options.test_out);
  out << "split " << dataset.size() << " images: train " << result.train.size()
      << ", test " << result.test.size() << " (fraction "
      << text::FormatDouble(options.train_fraction) << ", seed " << options.seed
      << (options.group_by_slide ? ", grouped by slide" : "") << ")\n";
}

void RunAugment(const AugmentOptions& options, std::ostream& out) {
  const Dataset dataset = ReadManifest(options.manifest);
  const Dataset expanded =
      ExpandDataset(dataset, options.seed, options.p_horizontal, options.p_vertical);
  WriteManifest(expanded, options.manifest_out);

  if (!options.flips_out.empty()) {
    std::string csv = "image_id,source_id,horizontal,vertical\n";
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
      const auto& r = dataset.records[i];
      const auto aug = AugmentRecord(r, options.seed + i, options.p_horizontal,
                                     options.p_vertical);
      if (!aug.flips.any()) continue;
      csv += r.image_id + "_" + aug.flips.Suffix() + "," + r.image_id + "," +
             (aug.flips.horizontal ? "1" : "0") + "," +
             (aug.flips.vertical ? "1" : "0") + "\n";
    }
    text::WriteFile(options.flips_out, csv);
  }
  out << "augmented " << dataset.size() << " images -> " << expanded.size()
      << " records\n";
}

void RunSynth(const SynthOptions& options, std::ostream& out) {
  if (options.count < 1) throw ValidationError("synth: count must be >= 1");
  if (options.films < 1) throw ValidationError("synth: films must be >= 1");
  const std::string image_dir = Join(options.out_dir, "images");
  const std::string voc_dir = Join(options.out_dir, "annotations");
  MakeDirs(image_dir);
  MakeDirs(voc_dir);

  Dataset dataset;
  FilmMap films;
  for (int i = 0; i < options.count; ++i) {
    std::ostringstream id;
    id << "synth_" << std::setw(4) << std::setfill('0') << i;
    SyntheticSpec spec = options.spec;
    spec.seed = options.spec.seed + static_cast<std::uint64_t>(i);
    auto [image, record] = Generate(spec, id.str());
    record.metadata.slide_id = "film_" + std::to_string(i % options.films + 1);
    films[record.image_id] = record.metadata.slide_id;

    WritePgm(image, Join(image_dir, record.image_id + ".pgm"),
             options.plain_pgm ? PgmFormat::kPlain : PgmFormat::kBinary);
    text::WriteFile(Join(voc_dir, record.image_id + ".xml"),
                    WriteVoc(record.image_id + ".pgm", record.width, record.height,
                             record.objects));
    dataset.records.push_back(std::move(record));
  }
  text::WriteFile(Join(options.out_dir, "films.csv"), SerializeFilmMap(films));
  text::WriteFile(Join(options.out_dir, "metadata.csv"), WriteMetadataCsv(dataset));

  out << "wrote " << options.count << " synthetic images to " << options.out_dir
      << " (suggested --size-split " << SuggestedSizeSplit(options.spec) << ")\n";
  PrintClassHistogram(dataset, out);
}

void RunDetect(const DetectOptions& options, std::ostream& out) {
  std::error_code ec;
  if (!fs::is_directory(options.image_dir, ec)) {
    throw IoError("not a directory: '" + options.image_dir + "'");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(options.image_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no .pgm images found in '" + options.image_dir + "'");

  BlobDetectorOptions detector;
  detector.intensity_threshold = options.intensity_threshold;
  detector.size_split = options.size_split;
  detector.min_area = options.min_area;

  DetectionSet set;
  for (const auto& file : files) {
    const GrayImage image = ReadPgm(file.string());
    for (auto& d : DetectBlobs(image, file.stem().string(), detector)) {
      set.Add(std::move(d));
    }
  }
  WriteDetections(set, options.detections_out);
  out << "detected " << set.size() << " blobs in " << files.size() << " images\n";
}

EvalReport RunEvaluate(const EvaluateOptions& options, std::ostream& out) {
  const Dataset dataset = ReadManifest(options.manifest);
  const DetectionSet detections = ReadDetections(options.detections);
  EvalReport report = Evaluate(dataset, detections, options.params);

  if (!report.orphans.empty()) {
    std::string ids;
    for (const auto& id : report.orphans) ids += (ids.empty() ? "" : ", ") + id;
    if (options.strict_ids) {
      throw ValidationError("detections reference unknown image_ids: " + ids);
    }
    out << "warning: ignoring detections for unknown image_ids: " << ids << "\n";
  }

  MakeDirs(options.out_dir);
  const ReportOptions report_options = MakeReportOptions(options.timestamp);
  text::WriteFile(Join(options.out_dir, "eval_report.json"),
                  EvalReportJson(report, report_options));
  text::WriteFile(Join(options.out_dir, "eval_report.csv"),
                  EvalReportCsv(report, report_options));

  const auto& p = report.params;
  out << "mAP@" << text::FormatDouble(p.iou_threshold) << " = " << Ratio(report.map)
      << " (" << InterpolationName(p.interpolation) << ", score >= "
      << text::FormatDouble(p.score_threshold) << ")\n";
  for (const auto& c : report.classes) {
    out << "  " << ClassName(c.label) << ": AP " << Ratio(c.ap) << ", precision "
        << Ratio(c.precision) << ", recall " << Ratio(c.recall) << " (TP "
        << c.counts.tp << ", FP " << c.counts.fp << ", FN " << c.counts.fn << ")\n";
  }
  return report;
}

void RunQuantify(const QuantifyOptions& options, std::ostream& out) {
  if (options.manifest.empty() && options.expert_counts.empty() &&
      options.detections.empty()) {
    throw ValidationError(
        "quantify needs --manifest, --detections or --expert-counts");
  }
  std::optional<Dataset> dataset;
  if (!options.manifest.empty()) dataset = ReadManifest(options.manifest);

  FilmMap films;
  if (!options.film_map.empty()) {
    films = ReadFilmMap(options.film_map);
  } else if (dataset) {
    films = FilmMapFromSlides(*dataset);
    out << "note: no film map given; grouping images by slide_id\n";
  }

  std::vector<FilmCounts> model;
  if (!options.detections.empty()) {
    if (films.empty()) {
      throw ValidationError("model counts need --film-map or --manifest");
    }
    DetectionSet detections = ReadDetections(options.detections);
    std::set<std::string> mapped;
    for (const auto& [image, film] : films) mapped.insert(image);
    FlagOrphans(detections, mapped);
    for (const auto& id : detections.orphans) {
      out << "warning: detections for image '" << id << "' not in any film\n";
    }
    if (options.nms_iou) detections = Nms(detections, *options.nms_iou);
    model = CountFilms(films, detections, options.score_threshold);
  }

  std::vector<FilmCounts> expert;
  if (!options.expert_counts.empty()) {
    expert = ReadFilmCountsCsv(options.expert_counts);
  } else if (dataset) {
    expert = CountFilms(films, *dataset);
  }

  const InterpretationTable table =
      options.interpretation_table.empty()
          ? InterpretationTable::Default()
          : InterpretationTable::FromConfigFile(options.interpretation_table);
  QuantParameters params;
  params.score_threshold = options.score_threshold;
  params.nms_iou = options.nms_iou;
  params.assumed_wbc_per_ul = options.assumed_wbc;
  params.formula = options.formula;
  const QuantReport report = BuildQuantReport(model, expert, params, table);

  MakeDirs(options.out_dir);
  const ReportOptions report_options = MakeReportOptions(options.timestamp);
  text::WriteFile(Join(options.out_dir, "quant_report.json"),
                  QuantReportJson(report, report_options));
  text::WriteFile(Join(options.out_dir, "quant_report.csv"),
                  QuantReportCsv(report, report_options));

  out << "parasitemia (" << DensityFormulaName(options.formula) << ", assumed WBC "
      << options.assumed_wbc << "/ul, " << CountSourceName(report.params.density_source)
      << " counts):\n";
  for (const auto& row : report.rows) {
    out << "  " << row.film_id << ": ";
    if (row.density) {
      out << text::FormatDouble(row.density->parasites_per_ul) << " /ul ["
          << row.density->interpretation << "]\n";
    } else {
      out << "undefined (" << row.note << ")\n";
    }
  }
  if (report.correlation) {
    out << "spearman rho: trophozoites " << Ratio(report.correlation->trophozoites)
        << ", wbcs " << Ratio(report.correlation->wbcs) << "\n";
  }
}

void RunReport(const std::string& report_json, std::ostream& out) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text::ReadFile(report_json));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(report_json + ": " + e.what());
  }
  auto number = [](const nlohmann::ordered_json& v) -> std::string {
    if (v.is_number()) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(4) << v.get<double>();
      return s.str();
    }
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  const std::string kind = doc.value("report", "");
  if (kind == "evaluation") {
    out << "evaluation report\n";
    for (const auto& [key, value] : doc.at("parameters").items()) {
      out << "  " << key << ": " << (value.is_string() ? value.get<std::string>()
                                                       : value.dump())
          << "\n";
    }
    out << "  mAP: " << number(doc.at("map")) << "\n";
    for (const auto& c : doc.at("classes")) {
      out << "  " << c.at("class").get<std::string>() << ": AP " << number(c.at("ap"))
          << ", precision " << number(c.at("precision")) << ", recall "
          << number(c.at("recall")) << "\n";
    }
  } else if (kind == "quantification") {
    out << "quantification report\n";
    for (const auto& f : doc.at("films")) {
      out << "  " << f.at("film_id").get<std::string>() << ": "
          << number(f.at("parasites_per_ul")) << " /ul ["
          << f.at("category").get<std::string>() << "]\n";
    }
    if (doc.contains("spearman")) {
      const auto& s = doc.at("spearman");
      out << "  spearman rho: trophozoites " << number(s.at("rho_trophozoites"))
          << ", wbcs " << number(s.at("rho_wbcs")) << "\n";
    }
  } else {
    throw ParseError(report_json + ": not a smearcount report");
  }
}

}  // namespace smearcount::cli
