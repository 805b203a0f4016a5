#include "blurfisher/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>

#include "blurfisher/blur_estimator.hpp"
#include "blurfisher/csv.hpp"
#include "blurfisher/discomfort.hpp"
#include "blurfisher/errors.hpp"
#include "blurfisher/image_io.hpp"
#include "blurfisher/parallel.hpp"
#include "blurfisher/quadrature.hpp"
#include "json.hpp"

namespace blurfisher {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_optional_number(const std::string& text, const char* column, std::size_t line) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size() || !std::isfinite(v)) {
    throw DomainError("manifest line " + std::to_string(line) + ": " + column + " is not a finite number: '" + t +
                      "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

ScoreScale parse_score_scale(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t == "dmos_0_100") return ScoreScale::Dmos0to100;
  if (t == "mos_0_9") return ScoreScale::Mos0to9;
  if (t == "thurstone") return ScoreScale::Thurstone;
  throw DomainError("unknown score_scale '" + t + "' (expected dmos_0_100, mos_0_9 or thurstone)");
}

std::string to_string(ScoreScale scale) {
  switch (scale) {
    case ScoreScale::Dmos0to100: return "dmos_0_100";
    case ScoreScale::Mos0to9: return "mos_0_9";
    case ScoreScale::Thurstone: return "thurstone";
  }
  return "dmos_0_100";
}

RatingManifest RatingManifest::parse(const std::string& text, const std::filesystem::path& base_dir) {
  const csv::Table table = csv::parse(text);
  static const char* const required[] = {"dataset", "image_id", "score"};
  for (const char* name : required) {
    if (table.column(name) < 0) throw IoError(std::string("manifest lacks the '") + name + "' column");
  }
  auto field = [&](const csv::Row& row, const char* name) -> std::string {
    const long c = table.column(name);
    if (c < 0 || static_cast<std::size_t>(c) >= row.size()) return {};
    return trim(row[static_cast<std::size_t>(c)]);
  };
  RatingManifest m;
  m.base_dir = base_dir;
  std::size_t line = 1;
  for (const auto& row : table.rows) {
    ++line;
    ManifestRow r;
    r.dataset = field(row, "dataset");
    r.image_id = field(row, "image_id");
    r.ref_id = field(row, "ref_id");
    r.blur_sigma_px = parse_optional_number(field(row, "blur_sigma_px"), "blur_sigma_px", line);
    r.blur_spread_arcmin = parse_optional_number(field(row, "blur_spread_arcmin"), "blur_spread_arcmin", line);
    const auto score = parse_optional_number(field(row, "score"), "score", line);
    if (!score) throw DomainError("manifest line " + std::to_string(line) + ": score is missing");
    r.score = *score;
    r.score_scale = parse_score_scale(field(row, "score_scale"));
    r.group = field(row, "group");
    r.image_path = field(row, "image_path");
    r.ref_path = field(row, "ref_path");
    if (r.dataset.empty()) throw DomainError("manifest line " + std::to_string(line) + ": dataset is empty");
    if ((r.blur_sigma_px && *r.blur_sigma_px < 0.0) || (r.blur_spread_arcmin && *r.blur_spread_arcmin < 0.0)) {
      throw DomainError("manifest line " + std::to_string(line) + ": negative blur value");
    }
    m.rows.push_back(std::move(r));
  }
  return m;
}

RatingManifest RatingManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(text, path.parent_path());
}

void RatingManifest::append(const RatingManifest& other) {
  for (ManifestRow r : other.rows) {
    if (!r.image_path.empty() && r.image_path.is_relative()) r.image_path = other.base_dir / r.image_path;
    if (!r.ref_path.empty() && r.ref_path.is_relative()) r.ref_path = other.base_dir / r.ref_path;
    rows.push_back(std::move(r));
  }
}

double mos_to_dmos_tid(double mos, std::size_t* clamped) {
  if (!std::isfinite(mos)) throw DomainError("MOS must be finite");
  if (mos > 7.5) {
    if (clamped) ++*clamped;
    return 0.0;
  }
  return (100.0 / 7.5) * (7.5 - mos);
}

double thurstone_to_sbdi_scale(double t) {
  if (!std::isfinite(t)) throw DomainError("Thurstone value must be finite");
  return 50.0 * (t + 1.0);
}

std::vector<double> normalize_dmos_minmax(const std::vector<double>& scores) {
  if (scores.size() < 2) throw DomainError("min-max normalization needs at least 2 values");
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  if (!(*hi > *lo)) throw DomainError("min-max normalization of a constant sequence");
  const double a = *lo;
  const double span = *hi - *lo;
  std::vector<double> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(100.0 * (s - a) / span);
  return out;
}

double plcc(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("plcc: length mismatch");
  if (x.size() < 2) throw DomainError("plcc needs at least 2 points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DomainError("plcc of a constant sequence");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double rmse(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("rmse: length mismatch");
  if (x.empty()) throw DomainError("rmse of empty sequences");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s / static_cast<double>(x.size()));
}

FitResult fit_scale_params(const std::vector<double>& spreads, const std::vector<double>& scores, double s_G) {
  if (spreads.size() != scores.size()) throw ShapeError("fit: spreads and scores differ in length");
  if (!(s_G > 0.0) || !std::isfinite(s_G)) throw DomainError("s_G must be positive");
  if (spreads.size() < 3) throw FitError("fit needs at least 3 rows, got " + std::to_string(spreads.size()));
  std::set<double> levels;
  for (std::size_t i = 0; i < spreads.size(); ++i) {
    if (!std::isfinite(spreads[i]) || spreads[i] < 0.0) throw DomainError("fit: spreads must be finite and >= 0");
    if (!std::isfinite(scores[i])) throw DomainError("fit: scores must be finite");
    if (spreads[i] > 0.0) levels.insert(spreads[i]);
  }
  if (levels.size() < 2) throw FitError("degenerate design: fewer than 2 distinct non-zero blur levels");

  const std::size_t n = spreads.size();
  std::vector<double> f(n);
  auto shape = [&](double gamma) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = gamma * gamma * spreads[i] / s_G;
      f[i] = 1.0 - 1.0 / std::sqrt(1.0 + xi * xi);
    }
  };
  auto gain = [&]() {
    double syf = 0.0, sff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      syf += scores[i] * f[i];
      sff += f[i] * f[i];
    }
    return sff > 0.0 ? syf / sff : 0.0;
  };
  auto sse = [&](double log_gamma) {
    shape(std::exp(log_gamma));
    const double a = gain();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (scores[i] - a * f[i]) * (scores[i] - a * f[i]);
    return s;
  };

  const double lo = std::log(0.2);
  const double hi = std::log(5.0);
  constexpr int kScan = 240;
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    const double v = sse(lo + (hi - lo) * i / kScan);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double step = (hi - lo) / kScan;
  const double a_lg = lo + step * std::max(best - 1, 0);
  const double b_lg = lo + step * std::min(best + 1, kScan);
  const LineMinimum m = golden_section_minimize(sse, a_lg, b_lg, 1e-12);
  if (m.x - lo < 1e-6 || hi - m.x < 1e-6) {
    throw FitError("gamma optimum at the search bracket edge (gamma = " + format_double(std::exp(m.x)) +
                   ", bracket [0.2, 5], sse = " + format_double(m.value) + ")");
  }
  FitResult r;
  r.gamma = std::exp(m.x);
  shape(r.gamma);
  r.a = gain();
  if (!(r.a > 0.0)) throw FitError("fitted gain is not positive (a = " + format_double(r.a) + ")");
  std::vector<double> pred(n);
  for (std::size_t i = 0; i < n; ++i) pred[i] = r.a * f[i];
  try {
    r.plcc = plcc(pred, scores);
  } catch (const DomainError& e) {
    throw FitError(std::string("cannot correlate the fit: ") + e.what());
  }
  r.rmse = rmse(pred, scores);
  r.n = n;
  return r;
}

namespace {

double convert_score(const ManifestRow& row, std::size_t* clamped) {
  switch (row.score_scale) {
    case ScoreScale::Dmos0to100: return row.score;
    case ScoreScale::Mos0to9: return mos_to_dmos_tid(row.score, clamped);
    case ScoreScale::Thurstone: return thurstone_to_sbdi_scale(row.score);
  }
  return row.score;
}

std::optional<double> declared_spread(const ManifestRow& row, double rpd, const SpreadConvention& conv,
                                      std::string& reason) {
  if (row.blur_spread_arcmin && row.blur_sigma_px) {
    reason = "both blur_sigma_px and blur_spread_arcmin are set";
    return std::nullopt;
  }
  if (row.blur_spread_arcmin) return *row.blur_spread_arcmin;
  if (row.blur_sigma_px) {
    RetinalGeometry g;
    g.receptors_per_degree = rpd;
    return blur_sigma_px_to_spread_arcmin(*row.blur_sigma_px, g, conv);
  }
  return std::nullopt;
}

}  // namespace

FitResult fit_scale_params(const RatingManifest& manifest, double s_G, const SpreadConvention& conv,
                           double receptors_per_degree) {
  std::vector<double> spreads, scores;
  for (const auto& row : manifest.rows) {
    std::string reason;
    const auto s = declared_spread(row, receptors_per_degree, conv, reason);
    if (!s) continue;
    spreads.push_back(*s);
    scores.push_back(convert_score(row, nullptr));
  }
  return fit_scale_params(spreads, scores, s_G);
}

bool EvalReport::all_fitted() const {
  return std::all_of(datasets.begin(), datasets.end(), [](const DatasetReport& d) { return d.fitted; });
}

EvalReport run_evaluation(const RatingManifest& manifest, const EvalOptions& options) {
  options.convention.validate();
  if (!(options.s_G > 0.0)) throw DomainError("s_G must be positive");
  EvalReport report;
  report.s_G = options.s_G;
  report.convention = options.convention;

  auto resolve = [&](const std::filesystem::path& p) {
    return p.is_relative() && !manifest.base_dir.empty() ? manifest.base_dir / p : p;
  };

  // Resolve spreads for every row, estimating from image pairs when needed.
  const std::size_t n_rows = manifest.rows.size();
  std::vector<std::optional<double>> spread(n_rows);
  std::vector<std::optional<double>> est_sigma(n_rows);
  std::vector<std::string> reason(n_rows);
  std::vector<std::size_t> to_estimate;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const auto& row = manifest.rows[i];
    spread[i] = declared_spread(row, options.receptors_per_degree, options.convention, reason[i]);
    if (spread[i] || !reason[i].empty()) continue;
    if (!row.image_path.empty() && !row.ref_path.empty()) {
      to_estimate.push_back(i);
    } else {
      reason[i] = "no blur value and no image pair to estimate from";
    }
  }
  parallel_for(
      to_estimate.size(),
      [&](std::size_t j) {
        const std::size_t i = to_estimate[j];
        const auto& row = manifest.rows[i];
        try {
          const auto ref = read_luminance(resolve(row.ref_path), true, options.receptors_per_degree);
          const auto img = read_luminance(resolve(row.image_path), true, options.receptors_per_degree);
          const BlurEstimate e = estimate_blur_sigma(ref, img, options.estimator_reg);
          est_sigma[i] = e.sigma_px;
          spread[i] = blur_sigma_px_to_spread_arcmin(e.sigma_px, ref.geometry, options.convention);
        } catch (const std::exception& ex) {
          reason[i] = std::string("blur estimation failed: ") + ex.what();
        }
      },
      options.threads);

  std::vector<std::string> order;
  for (const auto& row : manifest.rows) {
    if (std::find(order.begin(), order.end(), row.dataset) == order.end()) order.push_back(row.dataset);
  }

  std::vector<double> pooled_scores, pooled_pred;
  for (const auto& name : order) {
    DatasetReport ds;
    ds.name = name;
    std::vector<std::size_t> idx;
    std::vector<double> scores;
    for (std::size_t i = 0; i < n_rows; ++i) {
      const auto& row = manifest.rows[i];
      if (row.dataset != name) continue;
      if (!spread[i]) {
        ds.skipped.push_back({row.image_id, reason[i]});
        continue;
      }
      idx.push_back(i);
      scores.push_back(convert_score(row, &ds.clamped_scores));
    }
    ds.minmax_normalized = std::find(options.minmax_datasets.begin(), options.minmax_datasets.end(), name) !=
                           options.minmax_datasets.end();
    try {
      if (idx.size() < 3) throw FitError("fewer than 3 usable rows (" + std::to_string(idx.size()) + ")");
      if (ds.minmax_normalized) scores = normalize_dmos_minmax(scores);
      std::vector<double> spreads;
      for (std::size_t i : idx) spreads.push_back(*spread[i]);
      ds.fit = fit_scale_params(spreads, scores, options.s_G);
      ds.fitted = true;
      const DiscomfortParams params{ds.fit.a, ds.fit.gamma, options.s_G};
      for (std::size_t j = 0; j < idx.size(); ++j) {
        const auto& row = manifest.rows[idx[j]];
        RowPrediction p;
        p.image_id = row.image_id;
        p.group = row.group;
        p.spread_arcmin = spreads[j];
        p.score = scores[j];
        p.predicted = sbdi(spreads[j], params);
        p.estimated = est_sigma[idx[j]].has_value();
        ds.rows.push_back(p);
        pooled_scores.push_back(p.score);
        pooled_pred.push_back(p.predicted);
      }
    } catch (const std::exception& e) {
      ds.fitted = false;
      ds.error = e.what();
    }

    std::map<std::pair<std::string, double>, GroupAverage> groups;
    for (const auto& p : ds.rows) {
      auto& g = groups[{p.group, p.spread_arcmin}];
      g.group = p.group;
      g.spread_arcmin = p.spread_arcmin;
      g.mean_score += p.score;
      g.mean_predicted += p.predicted;
      ++g.n;
    }
    for (auto& [key, g] : groups) {
      g.mean_score /= static_cast<double>(g.n);
      g.mean_predicted /= static_cast<double>(g.n);
      ds.groups.push_back(g);
    }

    std::map<std::string, std::vector<double>> est_by_group;
    for (std::size_t i = 0; i < n_rows; ++i) {
      if (manifest.rows[i].dataset == name && est_sigma[i]) est_by_group[manifest.rows[i].group].push_back(*est_sigma[i]);
    }
    for (auto& [group, v] : est_by_group) {
      std::sort(v.begin(), v.end());
      const std::size_t h = v.size() / 2;
      ds.estimated_group_medians[group] = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    }
    report.datasets.push_back(std::move(ds));
  }

  if (pooled_scores.size() >= 2) {
    report.pooled.n = pooled_scores.size();
    report.pooled.a = std::numeric_limits<double>::quiet_NaN();
    report.pooled.gamma = std::numeric_limits<double>::quiet_NaN();
    try {
      report.pooled.plcc = plcc(pooled_pred, pooled_scores);
    } catch (const DomainError&) {
      report.pooled.plcc = std::numeric_limits<double>::quiet_NaN();
    }
    report.pooled.rmse = rmse(pooled_pred, pooled_scores);
  }
  return report;
}

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json fit_json(const FitResult& f) {
  return {{"a", number_or_null(f.a)},
          {"gamma", number_or_null(f.gamma)},
          {"distance_ratio", f.gamma > 0.0 ? number_or_null(f.distance_ratio()) : nlohmann::json(nullptr)},
          {"plcc", number_or_null(f.plcc)},
          {"rmse", number_or_null(f.rmse)},
          {"n", f.n}};
}

std::string safe_file_token(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '-' ||
                    ch == '_' || ch == '.';
    out += ok ? ch : '_';
  }
  return out.empty() ? "unnamed" : out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string report_json(const EvalReport& report) {
  nlohmann::json j;
  j["s_G"] = report.s_G;
  j["convention"] = {{"name", report.convention.name()}, {"c", report.convention.c}, {"k", report.convention.k}};
  nlohmann::json datasets = nlohmann::json::array();
  for (const auto& d : report.datasets) {
    nlohmann::json dj;
    dj["name"] = d.name;
    dj["fitted"] = d.fitted;
    if (d.fitted) {
      dj["fit"] = fit_json(d.fit);
    } else {
      dj["error"] = d.error;
    }
    dj["clamped_scores"] = d.clamped_scores;
    dj["minmax_normalized"] = d.minmax_normalized;
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : d.groups) {
      groups.push_back({{"group", g.group},
                        {"spread_arcmin", g.spread_arcmin},
                        {"spread_norm", g.spread_arcmin / report.s_G},
                        {"mean_score", g.mean_score},
                        {"mean_predicted", g.mean_predicted},
                        {"n", g.n}});
    }
    dj["groups"] = groups;
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& s : d.skipped) skipped.push_back({{"image_id", s.image_id}, {"reason", s.reason}});
    dj["skipped_rows"] = skipped;
    if (!d.estimated_group_medians.empty()) {
      nlohmann::json med = nlohmann::json::object();
      for (const auto& [g, v] : d.estimated_group_medians) med[g.empty() ? "(none)" : g] = v;
      dj["estimated_sigma_px_medians"] = med;
    }
    datasets.push_back(dj);
  }
  j["datasets"] = datasets;
  j["pooled"] = fit_json(report.pooled);
  j["pooled"].erase("a");
  j["pooled"].erase("gamma");
  j["pooled"].erase("distance_ratio");
  return j.dump(2) + "\n";
}

void write_report(const EvalReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_text(dir / "report.json", report_json(report));

  std::string table = "dataset,a,distance_ratio,plcc,rmse,n\n";
  for (const auto& d : report.datasets) {
    if (d.fitted) {
      table += csv::format_row({d.name, format_double(d.fit.a), format_double(d.fit.distance_ratio()),
                                format_double(d.fit.plcc), format_double(d.fit.rmse), std::to_string(d.fit.n)});
    } else {
      table += csv::format_row({d.name, "", "", "", "", "0"});
    }
    table += "\n";
    std::string scatter = "score,sbdi_pred,spread_norm,group\n";
    for (const auto& p : d.rows) {
      scatter += csv::format_row({format_double(p.score), format_double(p.predicted),
                                  format_double(p.spread_arcmin / report.s_G), p.group});
      scatter += "\n";
    }
    write_text(dir / ("scatter_" + safe_file_token(d.name) + ".csv"), scatter);
  }
  table += csv::format_row({"ALL", "", "", report.pooled.n ? format_double(report.pooled.plcc) : "",
                            report.pooled.n ? format_double(report.pooled.rmse) : "",
                            std::to_string(report.pooled.n)});
  table += "\n";
  write_text(dir / "table1.csv", table);
}

}  // namespace blurfisher
