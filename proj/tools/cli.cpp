#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "blurfisher/blur.hpp"
#include "blurfisher/blur_estimator.hpp"
#include "blurfisher/config.hpp"
#include "blurfisher/discomfort.hpp"
#include "blurfisher/errors.hpp"
#include "blurfisher/eval.hpp"
#include "blurfisher/fisher.hpp"
#include "blurfisher/image_io.hpp"
#include "blurfisher/scenes.hpp"
#include "blurfisher/vrf.hpp"
#include "json.hpp"

namespace blurfisher::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const CLI::Validator kFinite(
    [](std::string& text) -> std::string {
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (end == text.c_str() || *end != '\0') return "'" + text + "' is not a number";
      if (!std::isfinite(v)) return "'" + text + "' is not finite";
      return {};
    },
    "FINITE");

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string g9(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

struct Settings {
  std::string config_path;
  std::string convention;
  int precision = 3;
  ModelConfig model;
};

double option_or(const CLI::Option* opt, double value, double fallback) {
  return opt->count() ? value : fallback;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blur discomfort prediction from positional Fisher information", "blurfisher"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "0.1.0");

  Settings settings;
  app.add_option("--config", settings.config_path, "Model configuration file (key = value lines)");
  app.add_option("--convention", settings.convention, "Spread convention: pi, unit, stddev or angular")
      ->check(CLI::IsMember({"pi", "unit", "stddev", "angular"}));
  app.add_option("--precision", settings.precision, "Digits after the decimal point for scalar results")
      ->check(CLI::Range(0, 15))
      ->capture_default_str();

  std::function<void()> action;

  // vntf-curve
  auto* vntf = app.add_subcommand("vntf-curve", "Radial gain of the neural transfer function (CSV: cpd,gain,gain_db)");
  double vntf_sg = 0, vntf_max = 60, vntf_at = 30;
  int vntf_points = 600;
  std::string vntf_out;
  bool vntf_summary = false;
  auto* vntf_sg_opt = vntf->add_option("--sg", vntf_sg, "Neural spread s_G in arcmin")->check(kFinite);
  vntf->add_option("--max-cpd", vntf_max, "Highest frequency in cycles/degree")->check(kFinite)->capture_default_str();
  vntf->add_option("--points", vntf_points, "Number of samples")->check(CLI::Range(2, 1000000))->capture_default_str();
  vntf->add_option("--at-cpd", vntf_at, "Frequency for the summary attenuation")->check(kFinite)->capture_default_str();
  vntf->add_option("--out", vntf_out, "Output CSV (default stdout)");
  vntf->add_flag("--summary", vntf_summary, "Print peak frequency and attenuation as JSON instead of the curve");
  vntf->callback([&] {
    action = [&] {
      const double sg = option_or(vntf_sg_opt, vntf_sg, settings.model.s_G);
      if (!(sg > 0.0)) throw DomainError("--sg must be > 0");
      if (!(vntf_max > 0.0)) throw DomainError("--max-cpd must be > 0");
      const auto& conv = settings.model.convention;
      const double peak_rho = vntf_peak_frequency(sg, conv);
      const double peak_gain = std::abs(vntf_value(peak_rho, 0.0, sg, conv));
      auto db = [&](double cpd) { return 20.0 * std::log10(std::abs(vntf_value(cpd_to_cpam(cpd), 0.0, sg, conv)) / peak_gain); };
      if (vntf_summary) {
        if (!(vntf_at > 0.0)) throw DomainError("--at-cpd must be > 0");
        nlohmann::json j{{"peak_cpd", cpam_to_cpd(peak_rho)}, {"at_cpd", vntf_at}, {"attenuation_db", db(vntf_at)}};
        emit(vntf_out, j.dump() + "\n", out);
        return;
      }
      std::string text = "cpd,gain,gain_db\n";
      for (int i = 1; i <= vntf_points; ++i) {
        const double cpd = vntf_max * i / vntf_points;
        const double gain = std::abs(vntf_value(cpd_to_cpam(cpd), 0.0, sg, conv)) / peak_gain;
        text += g9(cpd) + "," + g9(gain) + "," + g9(db(cpd)) + "\n";
      }
      emit(vntf_out, text, out);
    };
  });

  // visual-map
  auto* vmap = app.add_subcommand("visual-map", "Filter an image and write the false-color and/or raw complex map");
  std::string vm_in, vm_png, vm_raw;
  double vm_sg = 0, vm_rpd = 0, vm_taper = 0;
  bool vm_raw_input = false;
  vmap->add_option("--input", vm_in, "Input PNG or PGM")->required();
  auto* vm_sg_opt = vmap->add_option("--sg", vm_sg, "Neural spread s_G in arcmin")->check(kFinite);
  auto* vm_rpd_opt = vmap->add_option("--rpd", vm_rpd, "Image pixels per degree")->check(kFinite);
  vmap->add_option("--taper", vm_taper, "Border taper width in arcmin (0 = none)")->check(kFinite)->capture_default_str();
  vmap->add_flag("--no-linearize", vm_raw_input, "Treat samples as linear instead of sRGB-encoded");
  vmap->add_option("--png", vm_png, "False-color PNG output");
  vmap->add_option("--vmap", vm_raw, "Raw complex map output");
  vmap->callback([&] {
    action = [&] {
      if (vm_png.empty() && vm_raw.empty()) throw UsageError("visual-map needs --png and/or --vmap");
      const double sg = option_or(vm_sg_opt, vm_sg, settings.model.s_G);
      const double rpd = option_or(vm_rpd_opt, vm_rpd, settings.model.receptors_per_degree);
      if (!(rpd > 0.0)) throw DomainError("--rpd must be > 0");
      if (vm_taper < 0.0) throw DomainError("--taper must be >= 0");
      const auto img = read_luminance(vm_in, !vm_raw_input, rpd);
      const auto kernel = make_vntf(sg, FrequencyGrid(img.geometry), settings.model.convention);
      const auto map = visual_map(img, kernel, VisualMapOptions{vm_taper});
      if (!vm_png.empty()) write_rgb_png(vm_png, render_false_color(map));
      if (!vm_raw.empty()) write_vmap(vm_raw, map);
    };
  });

  // pfi-map
  auto* pfi = app.add_subcommand("pfi-map", "Local positional Fisher information of an image");
  std::string pfi_in, pfi_csv, pfi_png, pfi_window = "gaussian";
  double pfi_sg = 0, pfi_rpd = 0, pfi_sigma = kDefaultWindowSigma, pfi_noise = 1.0;
  bool pfi_raw_input = false;
  pfi->add_option("--input", pfi_in, "Input PNG or PGM")->required();
  auto* pfi_sg_opt = pfi->add_option("--sg", pfi_sg, "Neural spread s_G in arcmin")->check(kFinite);
  auto* pfi_rpd_opt = pfi->add_option("--rpd", pfi_rpd, "Image pixels per degree")->check(kFinite);
  pfi->add_option("--window", pfi_window, "Detail window: gaussian, point or whole")
      ->check(CLI::IsMember({"gaussian", "point", "whole"}))
      ->capture_default_str();
  pfi->add_option("--window-sigma", pfi_sigma, "Gaussian window sigma in arcmin")->check(kFinite)->capture_default_str();
  pfi->add_option("--noise-var", pfi_noise, "Receptor noise variance")->check(kFinite)->capture_default_str();
  pfi->add_flag("--no-linearize", pfi_raw_input, "Treat samples as linear instead of sRGB-encoded");
  pfi->add_option("--csv", pfi_csv, "Per-position CSV (p_x,p_y,lambda,psi,e_min)");
  pfi->add_option("--png", pfi_png, "PFI heatmap PNG");
  pfi->callback([&] {
    action = [&] {
      const double sg = option_or(pfi_sg_opt, pfi_sg, settings.model.s_G);
      const double rpd = option_or(pfi_rpd_opt, pfi_rpd, settings.model.receptors_per_degree);
      if (!(rpd > 0.0)) throw DomainError("--rpd must be > 0");
      const auto img = read_luminance(pfi_in, !pfi_raw_input, rpd);
      const auto kernel = make_vntf(sg, FrequencyGrid(img.geometry), settings.model.convention);
      const auto map = visual_map(img, kernel);
      DetailWindow window = pfi_window == "whole"   ? DetailWindow::whole()
                            : pfi_window == "point" ? DetailWindow::identity()
                                                    : DetailWindow::gaussian(pfi_sigma, img.geometry);
      const PfiField field = pfi_and_emin(detail_energy_map(map, window), pfi_noise);
      if (!pfi_csv.empty()) write_pfi_csv(pfi_csv, field);
      if (!pfi_png.empty()) write_pfi_png(pfi_png, field);
      double max_psi = 0.0;
      for (double v : field.psi) max_psi = std::max(max_psi, v);
      nlohmann::json j{{"width", img.width()},
                       {"height", img.height()},
                       {"total_pfi", spatial_energy(map) / pfi_noise},
                       {"max_psi", max_psi}};
      out << j.dump() << "\n";
    };
  });

  // equiv
  auto* equiv = app.add_subcommand("equiv", "Isotropic Gaussian spread with the same Fisher information as a blur");
  equiv->require_subcommand(1);
  double eq_sg = 0;
  auto* eq_sg_opt = equiv->add_option("--sg", eq_sg, "Neural spread s_G in arcmin")->check(kFinite);
  auto s_g_for_equiv = [&] { return option_or(eq_sg_opt, eq_sg, settings.model.s_G); };

  auto* eq_disc = equiv->add_subcommand("disc", "Uniform disc blur of radius R arcmin");
  double disc_r = 0, disc_lo = 2, disc_hi = 10, disc_step = 0.5, disc_sg = 0;
  bool disc_curve = false;
  std::string disc_out;
  auto* disc_r_opt = eq_disc->add_option("--r", disc_r, "Disc radius in arcmin")->check(kFinite);
  auto* disc_sg_opt = eq_disc->add_option("--sg", disc_sg, "Neural spread s_G in arcmin")->check(kFinite);
  eq_disc->add_flag("--curve", disc_curve, "Emit the equivalence curve as CSV (R,s_B,ratio)");
  eq_disc->add_option("--r-min", disc_lo, "Curve start radius")->check(kFinite)->capture_default_str();
  eq_disc->add_option("--r-max", disc_hi, "Curve end radius")->check(kFinite)->capture_default_str();
  eq_disc->add_option("--r-step", disc_step, "Curve radius step")->check(kFinite)->capture_default_str();
  eq_disc->add_option("--out", disc_out, "Curve CSV output (default stdout)");
  eq_disc->callback([&] {
    action = [&] {
      const double sg = option_or(disc_sg_opt, disc_sg, s_g_for_equiv());
      if (disc_curve) {
        if (!(disc_step > 0.0) || !(disc_hi >= disc_lo) || disc_lo < 0.0) {
          throw DomainError("curve needs 0 <= r-min <= r-max and r-step > 0");
        }
        std::vector<double> radii;
        const auto count = static_cast<long>(std::floor((disc_hi - disc_lo) / disc_step + 1e-9));
        for (long i = 0; i <= count; ++i) radii.push_back(disc_lo + disc_step * static_cast<double>(i));
        std::string text = "R_arcmin,sB_arcmin,ratio\n";
        for (const auto& row : disc_equivalence_curve(radii, sg, settings.model.convention)) {
          text += g9(row.R) + "," + g9(row.s_B) + "," + g9(row.ratio) + "\n";
        }
        emit(disc_out, text, out);
        return;
      }
      if (!disc_r_opt->count()) throw UsageError("equiv disc needs --r (or --curve)");
      out << fixed(equiv_spread_disc(disc_r, sg, settings.model.convention), settings.precision) << "\n";
    };
  });

  auto* eq_astig = equiv->add_subcommand("astig", "Astigmatic Gaussian blur with spreads s_H and s_V");
  double astig_h = 0, astig_v = 0, astig_sg = 0;
  eq_astig->add_option("--sh", astig_h, "Horizontal spread in arcmin")->required()->check(kFinite);
  eq_astig->add_option("--sv", astig_v, "Vertical spread in arcmin")->required()->check(kFinite);
  auto* astig_sg_opt = eq_astig->add_option("--sg", astig_sg, "Neural spread s_G in arcmin")->check(kFinite);
  eq_astig->callback([&] {
    action = [&] {
      const double sg = option_or(astig_sg_opt, astig_sg, s_g_for_equiv());
      out << fixed(equiv_spread_astig(astig_h, astig_v, sg), settings.precision) << "\n";
    };
  });

  auto* eq_gen = equiv->add_subcommand("generic", "Any OTF built from gauss:S, astig:SH:SV, disc:R, shift:DX:DY");
  std::string gen_otf;
  double gen_sg = 0;
  eq_gen->add_option("--otf", gen_otf, "Comma-separated OTF members, e.g. disc:6,gauss:1")->required();
  auto* gen_sg_opt = eq_gen->add_option("--sg", gen_sg, "Neural spread s_G in arcmin")->check(kFinite);
  eq_gen->callback([&] {
    action = [&] {
      const double sg = option_or(gen_sg_opt, gen_sg, s_g_for_equiv());
      const BlurOtf otf = parse_otf(gen_otf);
      out << fixed(equiv_spread_generic(otf, sg, settings.model.convention), settings.precision) << "\n";
    };
  });

  // discomfort
  auto* disc = app.add_subcommand("discomfort", "Discomfort charts");
  disc->require_subcommand(1);
  auto* chart = disc->add_subcommand("chart-diopter",
                                     "Defocus discomfort in centesimal units (CSV: D,pupil_mm,discomfort_centesimal)");
  std::vector<double> chart_pupils{2.0, 3.0, 4.0, 5.0, 6.0};
  double chart_sg = 0;
  std::string chart_out;
  chart->add_option("--pupils", chart_pupils, "Pupil diameters in mm")->delimiter(',')->check(kFinite)->capture_default_str();
  auto* chart_sg_opt = chart->add_option("--sg", chart_sg, "Neural spread s_G in arcmin")->check(kFinite);
  chart->add_option("--out", chart_out, "Output CSV (default stdout)");
  chart->callback([&] {
    action = [&] {
      const double sg = option_or(chart_sg_opt, chart_sg, settings.model.s_G);
      for (double p : chart_pupils) {
        if (!(p > 0.0)) throw DomainError("pupil diameters must be > 0");
      }
      std::string text = "D,pupil_mm,discomfort_centesimal\n";
      char buf[96];
      for (const auto& r : diopter_chart(chart_pupils, sg)) {
        std::snprintf(buf, sizeof buf, "%.2f,%.6g,%.9g\n", r.diopters, r.pupil_mm, r.discomfort_centesimal);
        text += buf;
      }
      emit(chart_out, text, out);
    };
  });
  auto* dipper = disc->add_subcommand("dipper", "Blur increment for a fixed discomfort step (CSV: xi,delta_xi)");
  double dip_deps = 0.05;
  int dip_points = 400;
  std::string dip_out;
  dipper->add_option("--deps", dip_deps, "Discomfort increment")->check(kFinite)->capture_default_str();
  dipper->add_option("--points", dip_points, "Samples over xi in [0.05, 10]")->check(CLI::Range(2, 1000000))->capture_default_str();
  dipper->add_option("--out", dip_out, "Output CSV (default stdout)");
  dipper->callback([&] {
    action = [&] {
      std::string text = "xi,delta_xi\n";
      for (const auto& r : dipper_curve(dip_deps, static_cast<std::size_t>(dip_points))) {
        text += g9(r.xi) + "," + g9(r.delta_xi) + "\n";
      }
      emit(dip_out, text, out);
    };
  });

  // sbdi
  auto* sb = app.add_subcommand("sbdi", "Scaled blur discomfort index");
  double sb_sb = 0, sb_a = 100, sb_gamma = 1, sb_sg = 0;
  sb->add_option("--sb", sb_sb, "Optical spread s_B in arcmin")->required()->check(kFinite);
  sb->add_option("--a", sb_a, "Score-scale gain")->check(kFinite)->capture_default_str();
  auto* sb_gamma_opt = sb->add_option("--gamma", sb_gamma, "Viewing-distance ratio delta0/delta")->check(kFinite);
  auto* sb_sg_opt = sb->add_option("--sg", sb_sg, "Neural spread s_G in arcmin")->check(kFinite);
  sb->callback([&] {
    action = [&] {
      DiscomfortParams params;
      params.a = sb_a;
      params.gamma = option_or(sb_gamma_opt, sb_gamma, settings.model.gamma);
      params.s_G = option_or(sb_sg_opt, sb_sg, settings.model.s_G);
      double v = sbdi(sb_sb, params);
      if (v == 0.0) v = 0.0;  // no "-0"
      out << fixed(v, settings.precision) << "\n";
    };
  });

  // estimate-blur
  auto* est = app.add_subcommand("estimate-blur", "Gaussian blur sigma (pixels) between a reference and a blurred image");
  std::string est_ref, est_blur;
  double est_reg = 1e-3;
  bool est_raw = false;
  est->add_option("--ref", est_ref, "Reference image")->required();
  est->add_option("--blurred", est_blur, "Blurred image")->required();
  est->add_option("--reg", est_reg, "Regularization relative to the peak reference power")->check(kFinite)->capture_default_str();
  est->add_flag("--no-linearize", est_raw, "Treat samples as linear instead of sRGB-encoded");
  est->callback([&] {
    action = [&] {
      if (!(est_reg > 0.0)) throw DomainError("--reg must be > 0");
      const auto ref = read_luminance(est_ref, !est_raw, settings.model.receptors_per_degree);
      const auto blurred = read_luminance(est_blur, !est_raw, settings.model.receptors_per_degree);
      const BlurEstimate e = estimate_blur_sigma(ref, blurred, est_reg);
      nlohmann::json j{{"sigma_px", e.sigma_px}, {"residual", e.residual}, {"n_bins_used", e.n_bins_used}};
      out << j.dump() << "\n";
    };
  });

  // eval
  auto* ev = app.add_subcommand("eval", "Fit the discomfort index to rating manifests and write reports");
  std::vector<std::string> ev_manifests;
  std::vector<std::string> ev_minmax{"CSIQ"};
  std::string ev_out;
  double ev_rpd = 0, ev_reg = 1e-3, ev_sg = 0;
  std::size_t ev_threads = 0;
  ev->add_option("--manifest", ev_manifests, "Manifest CSV (repeatable)")->required();
  ev->add_option("--out", ev_out, "Output directory for report.json, scatter_*.csv, table1.csv")->required();
  auto* ev_rpd_opt = ev->add_option("--rpd", ev_rpd, "Image pixels per degree for sigma_px rows")->check(kFinite);
  auto* ev_sg_opt = ev->add_option("--sg", ev_sg, "Neural spread s_G in arcmin")->check(kFinite);
  ev->add_option("--minmax", ev_minmax, "Datasets whose scores are min-max normalized")->capture_default_str();
  ev->add_option("--reg", ev_reg, "Blur-estimator regularization")->check(kFinite)->capture_default_str();
  ev->add_option("--threads", ev_threads, "Worker threads (0 = automatic)");
  int eval_status = 0;
  ev->callback([&] {
    action = [&] {
      RatingManifest all;
      for (const auto& m : ev_manifests) all.append(RatingManifest::load(m));
      EvalOptions opts;
      opts.s_G = option_or(ev_sg_opt, ev_sg, settings.model.s_G);
      opts.convention = settings.model.convention;
      opts.receptors_per_degree = option_or(ev_rpd_opt, ev_rpd, settings.model.receptors_per_degree);
      opts.minmax_datasets = ev_minmax;
      opts.estimator_reg = ev_reg;
      opts.threads = ev_threads;
      const EvalReport report = run_evaluation(all, opts);
      write_report(report, ev_out);
      for (const auto& d : report.datasets) {
        if (d.fitted) {
          out << d.name << ": a=" << fixed(d.fit.a, settings.precision)
              << " delta/delta0=" << fixed(d.fit.distance_ratio(), settings.precision)
              << " plcc=" << fixed(d.fit.plcc, settings.precision) << " rmse=" << fixed(d.fit.rmse, settings.precision)
              << " n=" << d.fit.n << "\n";
        } else {
          err << d.name << ": not fitted: " << d.error << "\n";
        }
      }
      if (report.pooled.n) {
        out << "ALL: plcc=" << fixed(report.pooled.plcc, settings.precision)
            << " rmse=" << fixed(report.pooled.rmse, settings.precision) << " n=" << report.pooled.n << "\n";
      }
      if (!report.all_fitted()) eval_status = 1;
    };
  });

  // synth-natural
  auto* syn = app.add_subcommand("synth-natural", "Write a synthetic natural-scene test image");
  std::string syn_kind = "spectral", syn_out;
  std::size_t syn_size = 512;
  double syn_beta = 1.0, syn_optics = DeadLeavesOptions{}.optics_sigma_px;
  std::uint64_t syn_seed = 1;
  syn->add_option("--kind", syn_kind, "spectral (random-phase 1/f^beta) or dead-leaves")
      ->check(CLI::IsMember({"spectral", "dead-leaves"}))
      ->capture_default_str();
  syn->add_option("--size", syn_size, "Side length in pixels")->capture_default_str();
  syn->add_option("--beta", syn_beta, "Amplitude spectrum exponent (spectral kind)")->check(kFinite)->capture_default_str();
  syn->add_option("--optics-sigma", syn_optics, "Camera blur sigma in pixels (dead-leaves kind)")->check(kFinite)->capture_default_str();
  syn->add_option("--seed", syn_seed, "Random seed")->capture_default_str();
  syn->add_option("--out", syn_out, "Output PNG or PGM (16-bit, sRGB-encoded)")->required();
  syn->callback([&] {
    action = [&] {
      LuminanceImage img;
      if (syn_kind == "spectral") {
        img = synth_natural_image(syn_beta, syn_size, syn_seed, settings.model.receptors_per_degree);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (double v : img.samples) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        for (auto& v : img.samples) v = (v - lo) / (hi - lo);
      } else {
        DeadLeavesOptions o;
        o.optics_sigma_px = syn_optics;
        img = render_dead_leaves(syn_size, syn_seed, o, settings.model.receptors_per_degree);
      }
      write_luminance(syn_out, img.samples, 16, true);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const bool bad_value = dynamic_cast<const CLI::ConversionError*>(&e) || dynamic_cast<const CLI::ValidationError*>(&e);
    if (!bad_value) err << "Run with --help for usage.\n";
    return bad_value ? 1 : 2;
  }

  try {
    if (!settings.config_path.empty()) settings.model = load_config(settings.config_path);
    if (!settings.convention.empty()) settings.model.convention = SpreadConvention::named(settings.convention);
    settings.model.validate();
    if (!action) throw UsageError("no subcommand given");
    action();
    return eval_status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"blurfisher"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace blurfisher::cli
