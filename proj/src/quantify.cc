// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/quantify.h"

#include <algorithm>
#include <sstream>

#include "smearcount/errors.h"
#include "smearcount/spearman.h"
#include "smearcount/text.h"

namespace smearcount {
namespace {

void RequireImages(const std::string& film_id, std::size_t n) {
  if (n == 0) throw ValidationError("film '" + film_id + "' has no images");
}

std::vector<std::pair<std::string, std::vector<std::string>>> GroupByFilm(
    const FilmMap& films) {
  std::map<std::string, std::vector<std::string>> grouped;
  for (const auto& [image, film] : films) grouped[film].push_back(image);
  return {grouped.begin(), grouped.end()};
}

}  // namespace

std::string_view CountSourceName(CountSource source) {
  return source == CountSource::kModel ? "model" : "expert";
}

FilmCounts CountFilm(const std::string& film_id,
                     std::span<const std::vector<Detection>> images,
                     double score_threshold) {
  RequireImages(film_id, images.size());
  FilmCounts counts{film_id, 0, 0, static_cast<int>(images.size()),
                    CountSource::kModel};
  for (const auto& dets : images) {
    for (const auto& d : dets) {
      if (d.score < score_threshold) continue;
      (d.label == ClassLabel::kWbc ? counts.wbcs : counts.trophozoites)++;
    }
  }
  return counts;
}

FilmCounts CountFilm(const std::string& film_id,
                     std::span<const std::vector<GroundTruthObject>> images) {
  RequireImages(film_id, images.size());
  FilmCounts counts{film_id, 0, 0, static_cast<int>(images.size()),
                    CountSource::kExpert};
  for (const auto& objects : images) {
    for (const auto& o : objects) {
      (o.label == ClassLabel::kWbc ? counts.wbcs : counts.trophozoites)++;
    }
  }
  return counts;
}

FilmMap ReadFilmMap(const std::string& path) {
  std::istringstream in(text::ReadFile(path));
  std::string line;
  if (!std::getline(in, line) || text::Trim(line) != "image_id,film_id") {
    throw ParseError(path + ":1: expected header 'image_id,film_id'");
  }
  FilmMap map;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const auto cells = text::Split(line, ',');
    if (cells.size() != 2) throw ParseError(where + ": expected 2 fields");
    const std::string image = text::Trim(cells[0]);
    const std::string film = text::Trim(cells[1]);
    if (image.empty() || film.empty()) throw ParseError(where + ": empty field");
    if (!map.emplace(image, film).second) {
      throw ValidationError(where + ": image '" + image +
                            "' assigned to more than one film");
    }
  }
  return map;
}

std::string SerializeFilmMap(const FilmMap& map) {
  std::string out = "image_id,film_id\n";
  for (const auto& [image, film] : map) out += image + "," + film + "\n";
  return out;
}

FilmMap FilmMapFromSlides(const Dataset& dataset) {
  FilmMap map;
  for (const auto& r : dataset.records) map[r.image_id] = r.metadata.slide_id;
  return map;
}

std::vector<FilmCounts> CountFilms(const FilmMap& films, const Dataset& dataset) {
  for (const auto& r : dataset.records) {
    if (!films.contains(r.image_id)) {
      throw ValidationError("image '" + r.image_id + "' is not assigned to a film");
    }
  }
  std::vector<FilmCounts> out;
  for (const auto& [film, images] : GroupByFilm(films)) {
    std::vector<std::vector<GroundTruthObject>> objects;
    for (const auto& id : images) {
      const ImageRecord* record = dataset.Find(id);
      if (record == nullptr) {
        throw ValidationError("film map names unknown image '" + id + "'");
      }
      objects.push_back(record->objects);
    }
    out.push_back(CountFilm(film, objects));
  }
  return out;
}

std::vector<FilmCounts> CountFilms(const FilmMap& films,
                                   const DetectionSet& detections,
                                   double score_threshold) {
  std::vector<FilmCounts> out;
  for (const auto& [film, images] : GroupByFilm(films)) {
    std::vector<std::vector<Detection>> dets;
    for (const auto& id : images) dets.push_back(detections.For(id));
    out.push_back(CountFilm(film, dets, score_threshold));
  }
  return out;
}

std::vector<FilmCounts> ReadFilmCountsCsv(const std::string& path) {
  std::istringstream in(text::ReadFile(path));
  std::string line;
  if (!std::getline(in, line) ||
      text::Trim(line) != "film_id,trophozoites,wbcs,images_counted") {
    throw ParseError(path +
                     ":1: expected header 'film_id,trophozoites,wbcs,images_counted'");
  }
  std::vector<FilmCounts> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const auto cells = text::Split(line, ',');
    if (cells.size() != 4) throw ParseError(where + ": expected 4 fields");
    auto troph = text::ParseInt(cells[1]);
    auto wbcs = text::ParseInt(cells[2]);
    auto images = text::ParseInt(cells[3]);
    if (!troph || !wbcs || !images) throw ParseError(where + ": bad count");
    if (*troph < 0 || *wbcs < 0 || *images < 1) {
      throw ValidationError(where + ": counts must be >= 0 and images >= 1");
    }
    out.push_back({text::Trim(cells[0]), *troph, *wbcs,
                   static_cast<int>(*images), CountSource::kExpert});
  }
  return out;
}

std::string_view DensityFormulaName(DensityFormula formula) {
  return formula == DensityFormula::kWho ? "who" : "as-printed";
}

std::optional<DensityFormula> DensityFormulaFromName(std::string_view name) {
  const std::string key = text::ToLower(name);
  if (key == "who") return DensityFormula::kWho;
  if (key == "as-printed") return DensityFormula::kAsPrinted;
  return std::nullopt;
}

InterpretationTable::InterpretationTable(std::vector<Band> bands)
    : bands_(std::move(bands)) {
  if (bands_.empty() || bands_.front().lower_bound != 0) {
    throw ValidationError("interpretation table must start at 0 parasites/ul");
  }
  for (std::size_t i = 1; i < bands_.size(); ++i) {
    if (!(bands_[i].lower_bound > bands_[i - 1].lower_bound)) {
      throw ValidationError("interpretation bounds must strictly increase");
    }
  }
}

InterpretationTable InterpretationTable::Default() {
  return InterpretationTable({{0, kBandBelowSymptomatic},
                              {1906, kBandImmuneSymptoms},
                              {47982, kBandMaximum}});
}

InterpretationTable InterpretationTable::Parse(const std::string& contents) {
  std::istringstream in(contents);
  std::string line;
  std::vector<Band> bands;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = text::Trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    std::optional<double> bound;
    if (eq != std::string::npos) bound = text::ParseDouble(body.substr(0, eq));
    const std::string category =
        eq == std::string::npos ? "" : text::Trim(body.substr(eq + 1));
    if (!bound || category.empty()) {
      throw ParseError("interpretation table line " + std::to_string(line_no) +
                       ": expected 'lower_bound = category'");
    }
    bands.push_back({*bound, category});
  }
  std::stable_sort(bands.begin(), bands.end(), [](const Band& a, const Band& b) {
    return a.lower_bound < b.lower_bound;
  });
  return InterpretationTable(std::move(bands));
}

InterpretationTable InterpretationTable::FromConfigFile(const std::string& path) {
  try {
    return Parse(text::ReadFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

const std::string& InterpretationTable::Interpret(double parasites_per_ul) const {
  auto it = std::upper_bound(
      bands_.begin(), bands_.end(), parasites_per_ul,
      [](double v, const Band& band) { return v < band.lower_bound; });
  if (it == bands_.begin()) return bands_.front().category;
  return std::prev(it)->category;
}

ParasitemiaResult Parasitemia(const FilmCounts& counts, int assumed_wbc_per_ul,
                              DensityFormula formula,
                              const InterpretationTable& table) {
  if (assumed_wbc_per_ul <= 0) {
    throw ValidationError("assumed WBC constant must be positive");
  }
  if (counts.wbcs <= 0) {
    throw UndefinedError("film '" + counts.film_id +
                         "': no WBCs counted, density undefined; count more "
                         "fields until WBCs are observed");
  }
  ParasitemiaResult result;
  result.film_id = counts.film_id;
  result.assumed_wbc_per_ul = assumed_wbc_per_ul;
  result.formula = formula;
  const double troph = static_cast<double>(counts.trophozoites);
  const double wbcs = static_cast<double>(counts.wbcs);
  result.parasites_per_ul = formula == DensityFormula::kWho
                                ? troph * assumed_wbc_per_ul / wbcs
                                : troph * wbcs / assumed_wbc_per_ul;
  result.interpretation = table.Interpret(result.parasites_per_ul);
  return result;
}

CountCorrelationResult CountCorrelation(std::span<const FilmCounts> model,
                                        std::span<const FilmCounts> expert) {
  std::map<std::string, const FilmCounts*> by_id;
  for (const auto& e : expert) {
    if (!by_id.emplace(e.film_id, &e).second) {
      throw ValidationError("duplicate expert film '" + e.film_id + "'");
    }
  }
  if (model.size() != expert.size()) {
    throw ValidationError("model and expert film sets differ in size");
  }
  if (model.size() < 2) {
    throw ValidationError("count correlation needs at least 2 films");
  }
  std::vector<double> mt, et, mw, ew;
  for (const auto& m : model) {
    auto it = by_id.find(m.film_id);
    if (it == by_id.end()) {
      throw ValidationError("film '" + m.film_id + "' has no expert counts");
    }
    mt.push_back(static_cast<double>(m.trophozoites));
    et.push_back(static_cast<double>(it->second->trophozoites));
    mw.push_back(static_cast<double>(m.wbcs));
    ew.push_back(static_cast<double>(it->second->wbcs));
    by_id.erase(it);
  }
  return {SpearmanRho(mt, et), SpearmanRho(mw, ew)};
}

}  // namespace smearcount
