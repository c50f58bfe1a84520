// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smearcount/dataset.h"
#include "smearcount/detection.h"

namespace smearcount {

enum class CountSource { kModel, kExpert };
std::string_view CountSourceName(CountSource source);

// Trophozoite and WBC totals over the images of one thick film.
struct FilmCounts {
  std::string film_id;
  long long trophozoites = 0;
  long long wbcs = 0;
  int images_counted = 0;
  CountSource source = CountSource::kModel;

  friend bool operator==(const FilmCounts&, const FilmCounts&) = default;
};

// Counts detections passing score_threshold. Throws ValidationError for a
// film with zero images.
FilmCounts CountFilm(const std::string& film_id,
                     std::span<const std::vector<Detection>> images,
                     double score_threshold);
// Expert counts: every ground-truth object counts.
FilmCounts CountFilm(const std::string& film_id,
                     std::span<const std::vector<GroundTruthObject>> images);

// image_id -> film_id.
using FilmMap = std::map<std::string, std::string>;

// CSV with header "image_id,film_id".
FilmMap ReadFilmMap(const std::string& path);
std::string SerializeFilmMap(const FilmMap& map);
// Fallback grouping: each image belongs to the film named by its slide_id.
FilmMap FilmMapFromSlides(const Dataset& dataset);

// Per-film counts sorted by film_id. Every dataset image must be mapped.
std::vector<FilmCounts> CountFilms(const FilmMap& films, const Dataset& dataset);
std::vector<FilmCounts> CountFilms(const FilmMap& films,
                                   const DetectionSet& detections,
                                   double score_threshold);

// CSV with header "film_id,trophozoites,wbcs,images_counted"; source=expert.
std::vector<FilmCounts> ReadFilmCountsCsv(const std::string& path);

// Conventional WBC density assumed when the patient's count is unknown.
inline constexpr int kAssumedWbcPerUl = 8000;

enum class DensityFormula {
  kWho,        // trophozoites * assumed_wbc / wbcs
  kAsPrinted,  // trophozoites * wbcs / assumed_wbc
};
std::string_view DensityFormulaName(DensityFormula formula);
std::optional<DensityFormula> DensityFormulaFromName(std::string_view name);

// Ordered (lower bound, category) bands covering [0, inf). A density maps to
// the last band whose lower bound is <= the density.
class InterpretationTable {
 public:
  struct Band {
    double lower_bound = 0;
    std::string category;
  };

  // Throws ValidationError unless bounds start at 0 and strictly increase.
  explicit InterpretationTable(std::vector<Band> bands);

  // Bands attested by the reference film densities: below 1906/ul,
  // 1906/ul (symptoms in immune patients) and 47982/ul (maximum
  // parasitemia).
  static InterpretationTable Default();

  // "lower_bound = category" lines, '#' comments. Sorted on load.
  static InterpretationTable Parse(const std::string& contents);
  static InterpretationTable FromConfigFile(const std::string& path);

  const std::string& Interpret(double parasites_per_ul) const;
  const std::vector<Band>& bands() const { return bands_; }

 private:
  std::vector<Band> bands_;
};

inline constexpr const char* kBandBelowSymptomatic = "below symptomatic threshold";
inline constexpr const char* kBandImmuneSymptoms = "immune patients exhibit symptoms";
inline constexpr const char* kBandMaximum = "maximum parasitemia";

struct ParasitemiaResult {
  std::string film_id;
  double parasites_per_ul = 0;
  int assumed_wbc_per_ul = kAssumedWbcPerUl;
  DensityFormula formula = DensityFormula::kWho;
  std::string interpretation;
};

// Throws UndefinedError when no WBCs were counted and ValidationError for a
// non-positive assumed WBC constant.
ParasitemiaResult Parasitemia(
    const FilmCounts& counts, int assumed_wbc_per_ul = kAssumedWbcPerUl,
    DensityFormula formula = DensityFormula::kWho,
    const InterpretationTable& table = InterpretationTable::Default());

struct CountCorrelationResult {
  std::optional<double> trophozoites;
  std::optional<double> wbcs;
};

// Pairs films by film_id and computes Spearman's rho per class. Throws
// ValidationError when the film sets differ or hold fewer than 2 films.
CountCorrelationResult CountCorrelation(std::span<const FilmCounts> model,
                                        std::span<const FilmCounts> expert);

}  // namespace smearcount
