#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blurfisher/config.hpp"
#include "blurfisher/units.hpp"

namespace blurfisher {

enum class ScoreScale { Dmos0to100, Mos0to9, Thurstone };

ScoreScale parse_score_scale(const std::string& text);
std::string to_string(ScoreScale scale);

struct ManifestRow {
  std::string dataset;
  std::string image_id;
  std::string ref_id;
  std::optional<double> blur_sigma_px;
  std::optional<double> blur_spread_arcmin;
  double score = 0.0;
  ScoreScale score_scale = ScoreScale::Dmos0to100;
  std::string group;
  std::filesystem::path image_path;
  std::filesystem::path ref_path;
};

struct RatingManifest {
  std::vector<ManifestRow> rows;
  /// Directory against which relative image paths resolve.
  std::filesystem::path base_dir;

  static RatingManifest parse(const std::string& text, const std::filesystem::path& base_dir = {});
  static RatingManifest load(const std::filesystem::path& path);
  void append(const RatingManifest& other);
};

inline const char* const kManifestHeader =
    "dataset,image_id,ref_id,blur_sigma_px,blur_spread_arcmin,score,score_scale,group,image_path,ref_path";

struct FitResult {
  double a = 0.0;
  double gamma = 0.0;
  double plcc = 0.0;
  double rmse = 0.0;
  std::size_t n = 0;
  /// delta / delta0
  double distance_ratio() const { return 1.0 / gamma; }
};

/// Increments *clamped when mos exceeds 7.5.
double mos_to_dmos_tid(double mos, std::size_t* clamped = nullptr);
double thurstone_to_sbdi_scale(double t);
std::vector<double> normalize_dmos_minmax(const std::vector<double>& scores);

double plcc(const std::vector<double>& x, const std::vector<double>& y);
double rmse(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares fit of scores to sbdi(s_B; a, gamma).
FitResult fit_scale_params(const std::vector<double>& spreads_arcmin, const std::vector<double>& scores,
                           double s_G = kDefaultNeuralSpread);
/// Resolves spreads from the manifest columns (estimation is not attempted here)
/// and converts scores to the 0-100 scale before fitting.
FitResult fit_scale_params(const RatingManifest& manifest, double s_G, const SpreadConvention& conv,
                           double receptors_per_degree = 60.0);

struct EvalOptions {
  double s_G = kDefaultNeuralSpread;
  SpreadConvention convention;
  /// Image pixels per degree used for sigma_px -> arcmin conversion.
  double receptors_per_degree = 60.0;
  std::vector<std::string> minmax_datasets{"CSIQ"};
  double estimator_reg = 1e-3;
  std::size_t threads = 0;
};

struct RowPrediction {
  std::string image_id;
  std::string group;
  double spread_arcmin = 0.0;
  double score = 0.0;
  double predicted = 0.0;
  bool estimated = false;
};

struct GroupAverage {
  std::string group;
  double spread_arcmin = 0.0;
  double mean_score = 0.0;
  double mean_predicted = 0.0;
  std::size_t n = 0;
};

struct SkippedRow {
  std::string image_id;
  std::string reason;
};

struct DatasetReport {
  std::string name;
  bool fitted = false;
  std::string error;
  FitResult fit;
  std::vector<RowPrediction> rows;
  std::vector<GroupAverage> groups;
  std::vector<SkippedRow> skipped;
  std::size_t clamped_scores = 0;
  bool minmax_normalized = false;
  /// Median estimated sigma (pixels) per group label, for rows whose blur was estimated.
  std::map<std::string, double> estimated_group_medians;
};

struct EvalReport {
  double s_G = kDefaultNeuralSpread;
  SpreadConvention convention;
  std::vector<DatasetReport> datasets;
  FitResult pooled;
  bool all_fitted() const;
};

EvalReport run_evaluation(const RatingManifest& manifest, const EvalOptions& options = {});

/// Writes report.json, scatter_<dataset>.csv and table1.csv into `dir`.
void write_report(const EvalReport& report, const std::filesystem::path& dir);
std::string report_json(const EvalReport& report);

}  // namespace blurfisher
