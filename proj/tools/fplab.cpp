// fplab: evaluate, minimize and analyze p-frame potentials on the circle.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fplab/families.hpp"
#include "fplab/io.hpp"
#include "fplab/lemma_checks.hpp"
#include "fplab/optimize.hpp"
#include "fplab/potentials.hpp"
#include "fplab/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitOptimizer = 3;
constexpr int kExitBracket = 4;
constexpr int kExitLemma = 5;

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing junk in number: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<double> make_grid(double lo, double hi, int steps) {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  return grid;
}

struct CommonOpts {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "dat";
};

fplab::OutFormat resolved_format(const CommonOpts& c) {
  auto f = fplab::format_from_name(c.format);
  if (!f) throw CLI::ValidationError("--format", "must be dat, csv or json");
  return *f;
}

// Writes `body` to --out (plus a manifest) or to stdout when no --out given.
template <class Body>
void emit(const CommonOpts& common, const fplab::RunManifest& manifest, Body&& body) {
  if (common.out.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream os(common.out);
  if (!os) throw std::runtime_error("cannot open output file " + common.out);
  body(os);
  fplab::write_manifest(manifest, common.out);
}

fplab::FamilyInstance instance_from_flags(const std::string& family, int n,
                                          std::optional<double> alpha) {
  auto kind = fplab::family_from_name(family);
  if (!kind || *kind == fplab::FamilyKind::Custom)
    throw std::invalid_argument("unknown family: " + family);
  if (*kind == fplab::FamilyKind::E6 && n == 0) n = 6;
  if ((*kind == fplab::FamilyKind::Y || *kind == fplab::FamilyKind::Z) && n == 0) n = 5;
  fplab::FamilyInstance inst{*kind, n, alpha};
  inst.validate();
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-frame potential laboratory"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--seed", common.seed, "master RNG seed")->capture_default_str();
  app.add_option("--out", common.out, "output file (stdout if omitted)");
  app.add_option("--format", common.format, "table format: dat, csv or json")
      ->capture_default_str();
  app.fallthrough();

  // eval ---------------------------------------------------------------
  std::string eval_angles, eval_family;
  int eval_n = 0;
  std::optional<double> eval_alpha;
  double eval_p = 0.0;
  auto* eval = app.add_subcommand("eval", "evaluate the p-frame potential");
  eval->add_option("--angles", eval_angles, "comma-separated angles in radians");
  eval->add_option("--family", eval_family, "perp|harmonic|y|z|e6");
  eval->add_option("--n", eval_n, "number of vectors");
  eval->add_option("--alpha", [&eval_alpha](const std::vector<std::string>& v) {
    eval_alpha = std::stod(v.front());
    return true;
  }, "family parameter alpha");
  eval->add_option("--p", eval_p, "exponent p")->required();

  // families -----------------------------------------------------------
  std::string fam_family;
  int fam_n = 0;
  std::optional<double> fam_alpha;
  std::optional<double> fam_p;
  auto* families = app.add_subcommand("families", "show a family's angles");
  families->add_option("--family", fam_family, "perp|harmonic|y|z|e6");
  families->add_option("--n", fam_n, "number of vectors");
  families->add_option("--alpha", [&fam_alpha](const std::vector<std::string>& v) {
    fam_alpha = std::stod(v.front());
    return true;
  }, "family parameter alpha");
  families->add_option("--p", [&fam_p](const std::vector<std::string>& v) {
    fam_p = std::stod(v.front());
    return true;
  }, "also print the closed-form potential at this p");

  // minimize -----------------------------------------------------------
  int min_n = 0, min_restarts = 3000;
  double min_p = 0.0;
  auto* minimize = app.add_subcommand("minimize", "multi-start minimization of FP");
  minimize->add_option("--n", min_n, "number of vectors")->required();
  minimize->add_option("--p", min_p, "exponent p")->required();
  minimize->add_option("--restarts", min_restarts, "independent restarts")
      ->capture_default_str();

  // sweep ----------------------------------------------------------------
  int sw_n = 0, sw_steps = 0, sw_restarts = 200;
  double sw_lo = 0.0, sw_hi = 0.0;
  auto* sweep_cmd = app.add_subcommand("sweep", "minimize FP over a p-grid");
  sweep_cmd->add_option("--n", sw_n, "number of vectors")->required();
  sweep_cmd->add_option("--p-lo", sw_lo, "grid start")->required();
  sweep_cmd->add_option("--p-hi", sw_hi, "grid end")->required();
  sweep_cmd->add_option("--steps", sw_steps, "grid points (>= 2)")->required();
  sweep_cmd->add_option("--restarts", sw_restarts, "restarts per grid point")
      ->capture_default_str();

  // transitions ----------------------------------------------------------
  int tr_n = 0, tr_steps = 0, tr_restarts = 150;
  double tr_tol = 1e-12, tr_lo = 0.0, tr_hi = 0.0;
  bool tr_auto = false;
  auto* transitions = app.add_subcommand("transitions", "localize phase transitions");
  transitions->add_option("--n", tr_n, "number of vectors")->required();
  transitions->add_option("--tol", tr_tol, "bisection tolerance (>= 1e-14)")
      ->capture_default_str();
  transitions->add_flag("--auto", tr_auto, "derivative-jump detection on a sweep");
  transitions->add_option("--p-lo", tr_lo, "sweep start (auto mode)");
  transitions->add_option("--p-hi", tr_hi, "sweep end (auto mode)");
  transitions->add_option("--steps", tr_steps, "sweep points (auto mode)");
  transitions->add_option("--restarts", tr_restarts, "restarts per sweep point")
      ->capture_default_str();

  // lemmas ---------------------------------------------------------------
  int lm_density = 1000;
  double lm_tol = 1e-12;
  std::optional<double> lm_p_override;
  auto* lemmas = app.add_subcommand("lemmas", "run the inequality suites");
  lemmas->add_option("--density", lm_density, "grid points per axis")
      ->capture_default_str();
  lemmas->add_option("--tol", lm_tol, "margin tolerance")->capture_default_str();
  lemmas->add_option("--p-override", [&lm_p_override](const std::vector<std::string>& v) {
    lm_p_override = std::stod(v.front());
    return true;
  }, "pin every suite's p-grid to a single value");

  // tightness --------------------------------------------------------------
  double tg_p = 0.0;
  std::string tg_list;
  int tg_restarts = 300;
  auto* tightness = app.add_subcommand("tightness", "frame-operator deviation of minimizers");
  tightness->add_option("--p", tg_p, "exponent p in (0, 2)")->required();
  tightness->add_option("--n", tg_list, "comma-separated N values")->required();
  tightness->add_option("--restarts", tg_restarts, "restarts per N")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&started] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
        .count();
  };

  try {
    if (eval->parsed()) {
      fplab::AngleConfig config = [&] {
        if (!eval_angles.empty()) {
          if (!eval_family.empty())
            throw std::invalid_argument("give either --angles or --family, not both");
          return fplab::AngleConfig(parse_double_list(eval_angles));
        }
        if (eval_family.empty())
          throw std::invalid_argument("need --angles or --family");
        return fplab::build(instance_from_flags(eval_family, eval_n, eval_alpha));
      }();
      std::cout << fplab::format_g15(fplab::frame_potential(config, eval_p)) << "\n";
      return kExitOk;
    }

    if (families->parsed()) {
      if (fam_family.empty()) {
        std::cout << "perp harmonic y z e6\n";
        return kExitOk;
      }
      auto inst = instance_from_flags(fam_family, fam_n, fam_alpha);
      std::cout << "angles " << fplab::join_angles(fplab::build(inst)) << "\n";
      if (fam_p)
        std::cout << "potential "
                  << fplab::format_g15(fplab::closed_form_potential(inst, *fam_p))
                  << "\n";
      return kExitOk;
    }

    if (minimize->parsed()) {
      fplab::OptimizerSettings settings;
      settings.restarts = min_restarts;
      settings.master_seed = common.seed;
      std::optional<fplab::MinimizeResult> maybe;
      try {
        maybe = fplab::minimize_fp(min_n, min_p, settings);
      } catch (const fplab::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOptimizer;
      }
      const fplab::MinimizeResult& result = *maybe;
      const auto family = fplab::classify(result.config, 1e-5);
      std::cout << "minimize n=" << min_n << " p=" << fplab::format_g15(min_p)
                << " value=" << fplab::format_g15(result.value)
                << " family=" << fplab::family_name(family.kind) << "\n";
      fplab::RunManifest manifest{"minimize",
                                  {{"n", std::to_string(min_n)},
                                   {"p", fplab::format_g15(min_p)},
                                   {"restarts", std::to_string(min_restarts)}},
                                  common.seed};
      if (!common.out.empty()) {
        std::ofstream os(common.out);
        if (!os) throw std::runtime_error("cannot open output file " + common.out);
        fplab::write_minimize_result(result, min_n, min_p, os);
        manifest.duration_seconds = elapsed();
        fplab::write_manifest(manifest, common.out);
      }
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      if (sw_steps < 2) throw std::invalid_argument("--steps must be >= 2");
      if (!(sw_lo < sw_hi)) throw std::invalid_argument("need p-lo < p-hi");
      fplab::OptimizerSettings settings;
      settings.restarts = sw_restarts;
      settings.master_seed = common.seed;
      const auto records = fplab::sweep(sw_n, make_grid(sw_lo, sw_hi, sw_steps), settings);
      fplab::RunManifest manifest{"sweep",
                                  {{"n", std::to_string(sw_n)},
                                   {"p_lo", fplab::format_g15(sw_lo)},
                                   {"p_hi", fplab::format_g15(sw_hi)},
                                   {"steps", std::to_string(sw_steps)},
                                   {"restarts", std::to_string(sw_restarts)},
                                   {"format", common.format}},
                                  common.seed};
      manifest.duration_seconds = elapsed();
      emit(common, manifest, [&](std::ostream& os) {
        fplab::write_sweep_table(records, os, resolved_format(common));
      });
      return kExitOk;
    }

    if (transitions->parsed()) {
      if (tr_tol < 1e-14) throw std::invalid_argument("--tol must be >= 1e-14");
      std::vector<fplab::TransitionReport> reports;
      if (tr_n == 5 && !tr_auto) {
        using fplab::FamilyInstance;
        using fplab::FamilyKind;
        const FamilyInstance perp{FamilyKind::Perp, 5, std::nullopt};
        const FamilyInstance y{FamilyKind::Y, 5, 0.4};
        const FamilyInstance z{FamilyKind::Z, 5, 0.4};
        const FamilyInstance harm{FamilyKind::Harmonic, 5, std::nullopt};
        reports.push_back(fplab::locate_crossing(perp, y, 1.7, 1.8, tr_tol));
        reports.push_back(fplab::locate_crossing(y, z, 1.778, 1.79, tr_tol));
        reports.push_back(fplab::locate_crossing(z, harm, 1.9, 2.1, tr_tol));
      } else {
        double lo = tr_lo, hi = tr_hi;
        int steps = tr_steps;
        if (steps == 0) {  // per-N defaults for the known diagrams
          if (tr_n == 6) { lo = 1.8; hi = 4.2; steps = 121; }
          else if (tr_n == 7) { lo = 1.7; hi = 2.0; steps = 31; }
          else { lo = 1.5; hi = 2.5; steps = 101; }
        }
        if (steps < 3 || !(lo < hi))
          throw std::invalid_argument("auto mode needs p-lo < p-hi and steps >= 3");
        fplab::OptimizerSettings settings;
        settings.restarts = tr_restarts;
        settings.master_seed = common.seed;
        const auto records = fplab::sweep(tr_n, make_grid(lo, hi, steps), settings);
        reports = fplab::detect_transitions(records);
      }
      fplab::RunManifest manifest{"transitions",
                                  {{"n", std::to_string(tr_n)},
                                   {"tol", fplab::format_g15(tr_tol)},
                                   {"auto", tr_auto ? "1" : "0"}},
                                  common.seed};
      manifest.duration_seconds = elapsed();
      emit(common, manifest, [&](std::ostream& os) {
        fplab::write_transition_reports(reports, os);
      });
      return kExitOk;
    }

    if (lemmas->parsed()) {
      fplab::GridSpec grid;
      grid.points_per_axis = lm_density;
      grid.tolerance = lm_tol;
      if (lm_p_override) {
        grid.p_lo = *lm_p_override;
        grid.p_hi = *lm_p_override;
      }
      bool all_passed = true;
      std::cout << "lemma       margin               worst_point\n";
      for (fplab::LemmaId id :
           {fplab::LemmaId::GGa, fplab::LemmaId::GGb, fplab::LemmaId::GGc,
            fplab::LemmaId::GGd, fplab::LemmaId::KK, fplab::LemmaId::LL,
            fplab::LemmaId::PP, fplab::LemmaId::RR, fplab::LemmaId::EPS,
            fplab::LemmaId::IIa, fplab::LemmaId::IIb}) {
        try {
          const auto report = fplab::run_lemma_suite(id, grid);
          all_passed = all_passed && report.passed;
          std::cout << report.lemma_id << (report.passed ? "  pass  " : "  FAIL  ")
                    << fplab::format_g15(report.worst_margin) << "  at";
          for (double v : report.worst_point) std::cout << " " << fplab::format_g15(v);
          std::cout << "\n";
        } catch (const std::invalid_argument&) {
          std::cout << fplab::lemma_name(id) << "  skip  (p outside hypotheses)\n";
        }
      }
      return all_passed ? kExitOk : kExitLemma;
    }

    if (tightness->parsed()) {
      fplab::OptimizerSettings settings;
      settings.restarts = tg_restarts;
      settings.master_seed = common.seed;
      settings.x_tol = 1e-12;
      const auto points = fplab::tightness_curve(tg_p, parse_int_list(tg_list), settings);
      fplab::RunManifest manifest{"tightness",
                                  {{"p", fplab::format_g15(tg_p)},
                                   {"n", tg_list},
                                   {"restarts", std::to_string(tg_restarts)},
                                   {"format", common.format}},
                                  common.seed};
      manifest.duration_seconds = elapsed();
      emit(common, manifest, [&](std::ostream& os) {
        const auto fmt = resolved_format(common);
        if (fmt == fplab::OutFormat::Json) {
          nlohmann::json rows = nlohmann::json::array();
          for (const auto& pt : points)
            rows.push_back({{"n", pt.n},
                            {"deviation", pt.summary.deviation},
                            {"deviation_over_n", pt.summary.deviation / pt.n}});
          os << rows.dump(2) << "\n";
        } else {
          const char sep = fmt == fplab::OutFormat::Csv ? ',' : ' ';
          if (fmt == fplab::OutFormat::Csv)
            os << "n,deviation,deviation_over_n\n";
          else
            os << "$N$ $dev$ $dev/N$\n";
          for (const auto& pt : points)
            os << pt.n << sep << fplab::format_g15(pt.summary.deviation) << sep
               << fplab::format_g15(pt.summary.deviation / pt.n) << "\n";
        }
      });
      return kExitOk;
    }
  } catch (const fplab::BracketError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBracket;
  } catch (const fplab::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOptimizer;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
