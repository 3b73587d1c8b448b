#include "cli.hpp"

#include "acceptance.hpp"

#include "fracspec/laplacian.hpp"
#include "fracspec/limit.hpp"
#include "fracspec/perturbation.hpp"
#include "fracspec/report.hpp"
#include "fracspec/spacing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace fracspec::app {

namespace {

struct RunConfig {
  std::string fractal;
  int level = 1;
  std::string convention;  // empty: the system's own
  std::string bc = "neumann";
  unsigned precision = kDefaultPrecisionBits;
  double tol = 1e-10;
  std::string format = "json";
  std::string output;
  std::string registry;
  std::uint64_t seed = 42;
  bool strict = false;
};

struct Emit {
  std::string text;
  int code = kOk;
};

unsigned digits_for(unsigned bits) { return static_cast<unsigned>(std::floor(bits * std::log10(2.0))); }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed, const std::string& command) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  throw ValidationError("--format " + cfg.format + " is not available for '" + command + "'");
}

class Context {
 public:
  explicit Context(const RunConfig& cfg) : cfg_(cfg) {}

  const Registry& registry() {
    if (!registry_) {
      registry_ = std::make_unique<Registry>(cfg_.registry.empty() ? Registry::load_default()
                                                                   : Registry::from_file(cfg_.registry));
    }
    return *registry_;
  }

  const DecimationSystem& system() {
    if (cfg_.fractal.empty()) throw ValidationError("--fractal is required");
    return registry().get(cfg_.fractal);
  }

  // A registered system name or a bare fractal name.
  const FractalSpec& spec() {
    if (cfg_.fractal.empty()) throw ValidationError("--fractal is required");
    const auto names = fractal_names();
    if (std::find(names.begin(), names.end(), cfg_.fractal) != names.end()) return fractal_spec(cfg_.fractal);
    return fractal_spec(registry().get(cfg_.fractal).fractal());
  }

  Convention convention() {
    if (!cfg_.convention.empty()) return parse_convention(cfg_.convention);
    if (!cfg_.fractal.empty() && registry().contains(cfg_.fractal)) return registry().get(cfg_.fractal).convention();
    return Convention::combinatorial;
  }

  Boundary bc() const { return parse_boundary(cfg_.bc); }

 private:
  const RunConfig& cfg_;
  std::unique_ptr<Registry> registry_;
};

std::vector<ExactReal> parse_d0(const std::string& text) {
  std::vector<ExactReal> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.emplace_back(parse_rational(item));
  }
  return out;
}

std::string graph_csv(const LevelGraph& g) {
  std::ostringstream os;
  os << "source,target,source_id,target_id\n";
  for (const auto& [a, b] : g.edges()) {
    os << a << ',' << b << ',' << to_string(g.vertices()[static_cast<std::size_t>(a)]) << ','
       << to_string(g.vertices()[static_cast<std::size_t>(b)]) << '\n';
  }
  return os.str();
}

nlohmann::json decimation_json(const DecimationCheck& r) {
  return {{"fractal", r.fractal},         {"level", r.level},
          {"bc", to_string(r.bc)},        {"checked", r.checked},
          {"exceptional", r.exceptional}, {"max_distance", r.max_distance},
          {"worst_eigenvalue", r.worst_eigenvalue}, {"passed", r.passed}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral decimation and eigenvalue spacing toolkit for p.c.f. fractals", "fracspec"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--registry", cfg.registry, "Registry JSON (default: $FRACSPEC_REGISTRY or the built-in one)");
  app.add_option("--precision", cfg.precision, "Working precision in bits")->check(CLI::Range(64u, 65536u));
  app.add_option("--tol", cfg.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for randomized trials");
  app.add_flag("--strict", cfg.strict, "Exit 3 when a criterion is inconclusive");
  app.fallthrough();

  auto add_fractal = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--fractal", cfg.fractal, "Fractal or registered system name");
    if (required) opt->required();
  };
  auto add_bc = [&](CLI::App* sub) {
    sub->add_option("--bc", cfg.bc, "Boundary condition")->check(CLI::IsMember({"neumann", "dirichlet"}));
  };

  std::function<Emit()> action;
  Context ctx(cfg);

  auto* graph = app.add_subcommand("graph", "Level-m graph approximation");
  add_fractal(graph, true);
  graph->add_option("--level", cfg.level, "Level m")->check(CLI::NonNegativeNumber);
  graph->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "csv"}, "graph");
      auto g = build_level(ctx.spec(), cfg.level);
      return Emit{cfg.format == "json" ? graph_to_json(g) + "\n" : graph_csv(g)};
    };
  });

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Dense eigensolve of the level-m Laplacian");
  add_fractal(spectrum_cmd, true);
  add_bc(spectrum_cmd);
  spectrum_cmd->add_option("--level", cfg.level, "Level m")->check(CLI::NonNegativeNumber);
  spectrum_cmd->add_option("--convention", cfg.convention, "combinatorial or probabilistic")
      ->check(CLI::IsMember({"combinatorial", "probabilistic"}));
  spectrum_cmd->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "csv"}, "spectrum");
      auto s = level_spectrum(ctx.spec(), cfg.level, ctx.convention(), ctx.bc(), cfg.tol);
      return Emit{cfg.format == "json" ? spectrum_to_json(s) + "\n" : spectrum_to_csv(s)};
    };
  });

  int max_level = -1;
  std::vector<std::string> bcs;
  auto* verify = app.add_subcommand("decimate-verify", "Check R(sigma_m) against sigma_{m-1}");
  add_fractal(verify, true);
  verify->add_option("--level", cfg.level, "Level m >= 1")->check(CLI::PositiveNumber);
  verify->add_option("--max-level", max_level, "Check every level 1..max-level")->check(CLI::PositiveNumber);
  verify->add_option("--bc", bcs, "Boundary conditions (default both)")->check(CLI::IsMember({"neumann", "dirichlet"}));
  verify->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "csv"}, "decimate-verify");
      const auto& sys = ctx.system();
      const auto& spec = fractal_spec(sys.fractal());
      std::vector<Boundary> which;
      for (const auto& b : bcs.empty() ? std::vector<std::string>{"neumann", "dirichlet"} : bcs) {
        which.push_back(parse_boundary(b));
      }
      const int lo = max_level > 0 ? 1 : cfg.level;
      const int hi = max_level > 0 ? max_level : cfg.level;
      std::vector<DecimationCheck> checks;
      for (auto b : which) {
        for (int m = lo; m <= hi; ++m) checks.push_back(verify_decimation(spec, m, sys, b, cfg.tol));
      }
      bool passed = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
      Emit e;
      if (cfg.format == "json") {
        nlohmann::json j;
        j["system"] = sys.name();
        j["tol"] = cfg.tol;
        j["passed"] = passed;
        j["levels"] = nlohmann::json::array();
        for (const auto& c : checks) j["levels"].push_back(decimation_json(c));
        e.text = j.dump(2) + "\n";
      } else {
        std::ostringstream os;
        os.precision(17);
        os << "level,bc,checked,exceptional,max_distance,worst_eigenvalue,passed\n";
        for (const auto& c : checks) {
          os << c.level << ',' << to_string(c.bc) << ',' << c.checked << ',' << c.exceptional << ',' << c.max_distance
             << ',' << c.worst_eigenvalue << ',' << (c.passed ? 1 : 0) << '\n';
        }
        e.text = os.str();
      }
      e.code = passed ? kOk : kFailure;
      return e;
    };
  });

  SpectrumOptions gen;
  std::string lambda0;
  int base_level = -1;
  auto add_generation = [&](CLI::App* sub) {
    add_fractal(sub, true);
    add_bc(sub);
    sub->add_option("--count", gen.count, "Smallest eigenvalues to produce")->check(CLI::NonNegativeNumber);
    sub->add_option("--cutoff", gen.cutoff, "Every eigenvalue up to this value")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-depth", gen.max_depth, "Largest base level")->check(CLI::NonNegativeNumber);
    sub->add_option("--min-depth", gen.min_depth, "Smallest final depth")->check(CLI::NonNegativeNumber);
  };
  auto generate = [&] {
    gen.bc = ctx.bc();
    gen.tol = cfg.tol;
    gen.bits = cfg.precision;
    return generate_spectrum(ctx.system(), gen);
  };

  auto* limit = app.add_subcommand("limit", "Renormalized eigenvalue limits");
  add_generation(limit);
  limit->add_option("--lambda0", lambda0, "Single limit from this base value (rational or decimal)");
  limit->add_option("--base-level", base_level, "Level of --lambda0")->check(CLI::NonNegativeNumber);
  limit->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "csv"}, "limit");
      const unsigned digits = digits_for(cfg.precision);
      if (!lambda0.empty()) {
        if (base_level < 0) throw ValidationError("--lambda0 needs --base-level");
        PrecisionGuard guard(cfg.precision + 32);
        auto lim = eigenvalue_limit(ctx.system(), base_level, to_real(parse_rational(lambda0)), cfg.tol, cfg.precision);
        nlohmann::json j{{"system", cfg.fractal},
                         {"base_level", lim.base_level},
                         {"base_value", format_real(lim.base_value, digits)},
                         {"iterations", lim.iterations},
                         {"value", format_real(lim.value, digits)},
                         {"error_bound", format_real(lim.error_bound, 6)},
                         {"c", format_rational(lim.c)}};
        if (cfg.format == "json") return Emit{j.dump(2) + "\n"};
        return Emit{"base_level,base_value,iterations,value,error_bound\n" + std::to_string(lim.base_level) + "," +
                    format_real(lim.base_value, digits) + "," + std::to_string(lim.iterations) + "," +
                    format_real(lim.value, digits) + "," + format_real(lim.error_bound, 6) + "\n"};
      }
      auto s = generate();
      return Emit{cfg.format == "json" ? spectrum_limits_to_json(s, digits) + "\n" : spectrum_limits_to_csv(s, digits)};
    };
  });

  std::string source = "limit";
  auto* spacing = app.add_subcommand("spacing", "Spacings and gap ratios of a computed spectrum");
  add_generation(spacing);
  spacing->add_option("--source", source, "limit (renormalized limits) or level (eigensolver at --level)")
      ->check(CLI::IsMember({"limit", "level"}));
  spacing->add_option("--level", cfg.level, "Level for --source level")->check(CLI::NonNegativeNumber);
  spacing->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "csv"}, "spacing");
      const unsigned digits = digits_for(cfg.precision);
      PrecisionGuard guard(cfg.precision + 32);
      std::vector<Real> values;
      std::string label;
      if (source == "level") {
        auto s = level_spectrum(ctx.spec(), cfg.level, ctx.convention(), ctx.bc(), cfg.tol);
        for (double v : s.eigenvalues) values.emplace_back(v);
        label = cfg.fractal + " level " + std::to_string(cfg.level) + " " + cfg.bc + " eigensolver";
      } else {
        auto s = generate();
        for (const auto& v : s.values) values.push_back(v.value);
        label = cfg.fractal + " " + cfg.bc + " limits to depth " + std::to_string(s.depth) +
                (s.complete ? " (complete below cutoff)" : "");
      }
      auto rep = spacing_report(label, values);
      return Emit{cfg.format == "json" ? spacing_report_to_json(rep, digits) + "\n"
                                       : spacing_report_to_csv(rep, digits)};
    };
  });

  std::string kind = "auto";
  std::string d0_text;
  int d0_level = 1;
  auto* criterion = app.add_subcommand("criterion", "Positive or zero spacing infimum criterion");
  add_fractal(criterion, true);
  criterion->add_option("--kind", kind, "auto, positive or zero")->check(CLI::IsMember({"auto", "positive", "zero"}));
  criterion->add_option("--d0", d0_text, "Comma-separated rational D0 for the positive criterion");
  criterion->add_option("--d0-level", d0_level, "Level n for the suggested D0 = R^n sigma(Delta_n)")
      ->check(CLI::NonNegativeNumber);
  criterion->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "text"}, "criterion");
      const auto& sys = ctx.system();
      std::optional<CriterionVerdict> verdict;
      if (kind != "positive") verdict = zero_criterion(sys, cfg.precision);
      if (kind == "positive" || (kind == "auto" && verdict->verdict != Verdict::zero_infimum)) {
        std::vector<ExactReal> d0;
        if (!d0_text.empty()) {
          d0 = parse_d0(d0_text);
        } else {
          auto suggestion = suggest_D0(sys, fractal_spec(sys.fractal()), d0_level, 1e-12);
          if (!suggestion.accepted) {
            std::string notes;
            for (const auto& n : suggestion.notes) notes += "; " + n;
            throw ValidationError("suggested D0 rejected" + notes);
          }
          d0 = suggestion.d0;
        }
        verdict = positive_criterion(sys, d0, cfg.precision);
      }
      const unsigned digits = std::min(30u, digits_for(cfg.precision));
      Emit e{cfg.format == "json" ? verdict_to_json(*verdict, digits) + "\n" : verdict_to_text(*verdict, digits)};
      if (cfg.strict && verdict->verdict == Verdict::inconclusive) e.code = kInconclusive;
      return e;
    };
  });

  std::string x1 = "3/4";
  std::string x2 = "1";
  int n0 = 1;
  int m_max = 6;
  int j_steps = 8;
  auto* witness = app.add_subcommand("witness", "Eigenvalue pairs with shrinking spacing");
  add_fractal(witness, true);
  witness->add_option("--x1", x1, "First base eigenvalue");
  witness->add_option("--x2", x2, "Second base eigenvalue");
  witness->add_option("--n0", n0, "Level of the base eigenvalues")->check(CLI::NonNegativeNumber);
  witness->add_option("--m", m_max, "Largest m")->check(CLI::NonNegativeNumber);
  witness->add_option("--j", j_steps, "phi0 steps")->check(CLI::NonNegativeNumber);
  witness->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "csv"}, "witness");
      PrecisionGuard guard(cfg.precision + 32);
      auto rep = witness_sequence(ctx.system(), to_real(parse_rational(x1)), to_real(parse_rational(x2)), n0, m_max,
                                  j_steps, cfg.precision);
      const unsigned digits = digits_for(cfg.precision);
      if (cfg.format == "csv") {
        std::ostringstream os;
        os << "m,lambda1,lambda2,spacing,ratio\n";
        for (std::size_t k = 0; k < rep.points.size(); ++k) {
          const auto& p = rep.points[k];
          os << p.m << ',' << format_real(p.lambda1, digits) << ',' << format_real(p.lambda2, digits) << ','
             << format_real(p.spacing, digits) << ',' << (k > 0 ? format_real(rep.ratios[k - 1], digits) : "") << '\n';
        }
        return Emit{os.str()};
      }
      nlohmann::json j;
      j["system"] = cfg.fractal;
      j["zeta"] = format_real(rep.zeta.point.approx(cfg.precision), digits);
      j["zeta_multiplier"] = format_interval(rep.zeta.multiplier, 20);
      j["zeta_branch"] = ctx.system().branches()[rep.zeta_branch].describe();
      j["expected_ratio"] = format_real(rep.expected_ratio, digits);
      auto& pts = j["points"] = nlohmann::json::array();
      for (std::size_t k = 0; k < rep.points.size(); ++k) {
        const auto& p = rep.points[k];
        nlohmann::json row{{"m", p.m},
                           {"lambda1", format_real(p.lambda1, digits)},
                           {"lambda2", format_real(p.lambda2, digits)},
                           {"spacing", format_real(p.spacing, digits)}};
        if (k > 0) row["ratio"] = format_real(rep.ratios[k - 1], digits);
        pts.push_back(row);
      }
      return Emit{j.dump(2) + "\n"};
    };
  });

  std::size_t n_dim = 10;
  std::size_t split = 4;
  std::size_t trials = 1000;
  double fraction = 0.1;
  auto* wiel = app.add_subcommand("wielandt", "Randomized check of the two-sided eigenvalue shift bounds");
  wiel->add_option("--n", n_dim, "Matrix size")->check(CLI::Range(2, 200));
  wiel->add_option("--d", split, "Split index")->check(CLI::PositiveNumber);
  wiel->add_option("--trials", trials, "Number of seeded trials");
  wiel->add_option("--scale-fraction", fraction, "||B|| as a fraction of the gap")->check(CLI::NonNegativeNumber);
  wiel->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "csv"}, "wielandt");
      auto results = wielandt_trials(n_dim, split, trials, cfg.seed, fraction, cfg.tol);
      const auto violations = std::count_if(results.begin(), results.end(), [](const auto& t) { return t.violation; });
      Emit e;
      e.code = violations == 0 ? kOk : kFailure;
      if (cfg.format == "csv") {
        e.text = trials_to_csv(results);
        return e;
      }
      double top = INFINITY;
      double bottom = INFINITY;
      for (const auto& t : results) {
        top = std::min(top, t.worst_margin_top);
        bottom = std::min(bottom, t.worst_margin_bottom);
      }
      nlohmann::json j{{"n", n_dim},           {"d", split},
                       {"trials", results.size()}, {"first_seed", cfg.seed},
                       {"scale_fraction", fraction}, {"violations", violations},
                       {"worst_margin_top", top}, {"worst_margin_bottom", bottom}};
      e.text = j.dump(2) + "\n";
      return e;
    };
  });

  std::string example;
  auto* reproduce = app.add_subcommand("reproduce", "Replay a named example and print a pass/fail table");
  reproduce->add_option("example", example, "Example id (1-10), key, or 'all'")->required();
  reproduce->callback([&] {
    action = [&] {
      require_format(cfg, {"json", "text"}, "reproduce");
      std::vector<CriterionInfo> chosen;
      if (example == "all") {
        chosen = criteria();
      } else {
        chosen.push_back(find_criterion(example));
      }
      const auto& reg = ctx.registry();
      std::vector<CriterionOutcome> outcomes;
      for (const auto& info : chosen) outcomes.push_back(run_criterion(info, reg));
      const bool all = std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; });
      Emit e;
      e.code = all ? kOk : kFailure;
      if (cfg.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& o : outcomes) {
          j.push_back({{"id", o.info.id},
                       {"key", o.info.key},
                       {"title", o.info.title},
                       {"passed", o.passed},
                       {"seconds", o.seconds},
                       {"detail", o.detail}});
        }
        e.text = j.dump(2) + "\n";
      } else {
        for (const auto& o : outcomes) e.text += outcome_line(o) + "\n";
      }
      return e;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "fracspec: " << e.what() << "\n";
    return kValidation;
  }

  try {
    Emit e = action();
    if (cfg.output.empty()) {
      out << e.text;
    } else {
      write_file_atomic(cfg.output, e.text);
    }
    return e.code;
  } catch (const ValidationError& e) {
    err << "fracspec: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "fracspec: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace fracspec::app
