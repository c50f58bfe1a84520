// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/report.h"

#include <chrono>
#include <ctime>
#include <map>
#include <sstream>

#include "json.hpp"
#include "smearcount/errors.h"
#include "smearcount/spearman.h"
#include "smearcount/text.h"

namespace smearcount {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json RatioJson(const MaybeRatio& v) {
  return v ? ordered_json(*v) : ordered_json(kUndefined);
}

std::string RatioText(const MaybeRatio& v) {
  return v ? text::FormatDouble(*v) : std::string(kUndefined);
}

std::string NmsText(const std::optional<double>& nms) {
  return nms ? text::FormatDouble(*nms) : "off";
}

std::string Dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json CountsJson(const std::optional<FilmCounts>& c) {
  if (!c) return nullptr;
  return {{"trophozoites", c->trophozoites},
          {"wbcs", c->wbcs},
          {"images_counted", c->images_counted}};
}

std::string CountText(const std::optional<FilmCounts>& c, bool wbcs) {
  if (!c) return "";
  return std::to_string(wbcs ? c->wbcs : c->trophozoites);
}

}  // namespace

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string EvalReportJson(const EvalReport& report, const ReportOptions& options) {
  ordered_json doc;
  doc["report"] = "evaluation";
  if (options.timestamp) doc["generated_at"] = *options.timestamp;
  doc["parameters"] = {
      {"iou_threshold", report.params.iou_threshold},
      {"score_threshold", report.params.score_threshold},
      {"interpolation", std::string(InterpolationName(report.params.interpolation))},
      {"nms_iou", report.params.nms_iou ? ordered_json(*report.params.nms_iou)
                                        : ordered_json("off")}};
  ordered_json classes = ordered_json::array();
  for (const auto& c : report.classes) {
    classes.push_back({{"class", std::string(ClassName(c.label))},
                       {"ap", RatioJson(c.ap)},
                       {"precision", RatioJson(c.precision)},
                       {"recall", RatioJson(c.recall)},
                       {"tp", c.counts.tp},
                       {"fp", c.counts.fp},
                       {"fn", c.counts.fn},
                       {"num_gt", c.counts.num_gt},
                       {"num_detections", c.num_detections}});
  }
  doc["classes"] = classes;
  doc["map"] = report.map;
  ordered_json excluded = ordered_json::array();
  for (auto label : report.excluded_classes) excluded.push_back(ClassName(label));
  doc["map_excluded_classes"] = excluded;
  doc["orphan_image_ids"] = report.orphans;
  return Dump(doc);
}

std::string EvalReportCsv(const EvalReport& report, const ReportOptions& options) {
  const auto& p = report.params;
  const std::string iou = text::FormatDouble(p.iou_threshold);
  const std::string score = text::FormatDouble(p.score_threshold);
  const std::string interp(InterpolationName(p.interpolation));
  std::ostringstream out;
  out << "# smearcount evaluation report\n";
  if (options.timestamp) out << "# generated_at=" << *options.timestamp << "\n";
  out << "# iou_threshold=" << iou << "\n"
      << "# score_threshold=" << score << "\n"
      << "# interpolation=" << interp << "\n"
      << "# nms_iou=" << NmsText(p.nms_iou) << "\n";
  for (auto label : report.excluded_classes) {
    out << "# map_excludes=" << ClassName(label) << " (no ground truth)\n";
  }
  out << "class,ap,precision,recall,tp,fp,fn,num_gt,num_detections,map,"
         "iou_threshold,score_threshold,interpolation\n";
  for (const auto& c : report.classes) {
    out << ClassName(c.label) << ',' << RatioText(c.ap) << ','
        << RatioText(c.precision) << ',' << RatioText(c.recall) << ','
        << c.counts.tp << ',' << c.counts.fp << ',' << c.counts.fn << ','
        << c.counts.num_gt << ',' << c.num_detections << ','
        << text::FormatDouble(report.map) << ',' << iou << ',' << score << ','
        << interp << '\n';
  }
  return out.str();
}

QuantReport BuildQuantReport(const std::vector<FilmCounts>& model,
                             const std::vector<FilmCounts>& expert,
                             const QuantParameters& params,
                             const InterpretationTable& table) {
  if (model.empty() && expert.empty()) {
    throw ValidationError("quantification needs model or expert counts");
  }
  QuantReport report;
  report.params = params;
  report.params.bands = table.bands();
  report.params.density_source =
      model.empty() ? CountSource::kExpert : CountSource::kModel;

  std::map<std::string, QuantRow> rows;
  for (const auto& m : model) rows[m.film_id].model = m;
  for (const auto& e : expert) rows[e.film_id].expert = e;
  if (!model.empty() && !expert.empty()) {
    report.correlation = CountCorrelation(model, expert);
    std::vector<double> mt, et, mw, ew;
    for (const auto& [id, row] : rows) {
      mt.push_back(static_cast<double>(row.model->trophozoites));
      et.push_back(static_cast<double>(row.expert->trophozoites));
      mw.push_back(static_cast<double>(row.model->wbcs));
      ew.push_back(static_cast<double>(row.expert->wbcs));
    }
    report.p_value_trophozoites = SpearmanPermutationPValue(mt, et);
    report.p_value_wbcs = SpearmanPermutationPValue(mw, ew);
  }

  for (auto& [id, row] : rows) {
    row.film_id = id;
    const FilmCounts& basis = row.model ? *row.model : *row.expert;
    try {
      row.density =
          Parasitemia(basis, params.assumed_wbc_per_ul, params.formula, table);
    } catch (const UndefinedError& e) {
      row.note = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string QuantReportJson(const QuantReport& report, const ReportOptions& options) {
  const auto& p = report.params;
  ordered_json doc;
  doc["report"] = "quantification";
  if (options.timestamp) doc["generated_at"] = *options.timestamp;
  ordered_json bands = ordered_json::array();
  for (const auto& b : p.bands) {
    bands.push_back({{"lower_bound", b.lower_bound}, {"category", b.category}});
  }
  doc["parameters"] = {
      {"score_threshold", p.score_threshold},
      {"nms_iou", p.nms_iou ? ordered_json(*p.nms_iou) : ordered_json("off")},
      {"assumed_wbc_per_ul", p.assumed_wbc_per_ul},
      {"formula", std::string(DensityFormulaName(p.formula))},
      {"density_source", std::string(CountSourceName(p.density_source))},
      {"density_basis", "film totals"},
      {"interpretation_bands", bands}};
  ordered_json films = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json f = {{"film_id", row.film_id},
                      {"model", CountsJson(row.model)},
                      {"expert", CountsJson(row.expert)}};
    if (row.density) {
      f["parasites_per_ul"] = row.density->parasites_per_ul;
      f["category"] = row.density->interpretation;
    } else {
      f["parasites_per_ul"] = kUndefined;
      f["category"] = kUndefined;
      f["note"] = row.note;
    }
    films.push_back(f);
  }
  doc["films"] = films;
  if (report.correlation) {
    doc["spearman"] = {
        {"statistic", "rho (rank correlation coefficient, not a p-value)"},
        {"rho_trophozoites", RatioJson(report.correlation->trophozoites)},
        {"rho_wbcs", RatioJson(report.correlation->wbcs)},
        {"permutation_p_trophozoites", RatioJson(report.p_value_trophozoites)},
        {"permutation_p_wbcs", RatioJson(report.p_value_wbcs)}};
  }
  return Dump(doc);
}

std::string QuantReportCsv(const QuantReport& report, const ReportOptions& options) {
  const auto& p = report.params;
  const std::string formula(DensityFormulaName(p.formula));
  std::ostringstream out;
  out << "# smearcount quantification report\n";
  if (options.timestamp) out << "# generated_at=" << *options.timestamp << "\n";
  out << "# score_threshold=" << text::FormatDouble(p.score_threshold) << "\n"
      << "# nms_iou=" << NmsText(p.nms_iou) << "\n"
      << "# assumed_wbc_per_ul=" << p.assumed_wbc_per_ul << "\n"
      << "# formula=" << formula << "\n"
      << "# density_source=" << CountSourceName(p.density_source) << "\n"
      << "# density_basis=film totals\n";
  for (const auto& b : p.bands) {
    out << "# band " << text::FormatDouble(b.lower_bound) << "=" << b.category
        << "\n";
  }
  if (report.correlation) {
    out << "# spearman_rho_trophozoites="
        << RatioText(report.correlation->trophozoites) << "\n"
        << "# spearman_rho_wbcs=" << RatioText(report.correlation->wbcs) << "\n"
        << "# permutation_p_trophozoites=" << RatioText(report.p_value_trophozoites)
        << "\n"
        << "# permutation_p_wbcs=" << RatioText(report.p_value_wbcs) << "\n";
  }
  out << "film_id,images_counted,model_trophozoites,model_wbcs,"
         "expert_trophozoites,expert_wbcs,parasites_per_ul,formula,assumed_wbc,"
         "category\n";
  for (const auto& row : report.rows) {
    const FilmCounts& basis = row.model ? *row.model : *row.expert;
    out << row.film_id << ',' << basis.images_counted << ','
        << CountText(row.model, false) << ',' << CountText(row.model, true) << ','
        << CountText(row.expert, false) << ',' << CountText(row.expert, true)
        << ','
        << (row.density ? text::FormatDouble(row.density->parasites_per_ul)
                        : std::string(kUndefined))
        << ',' << formula << ',' << p.assumed_wbc_per_ul << ','
        << (row.density ? row.density->interpretation
                        : std::string("undefined: no WBCs counted, count more fields"))
        << '\n';
  }
  return out.str();
}

}  // namespace smearcount
