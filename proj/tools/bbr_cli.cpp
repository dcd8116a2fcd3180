// bbr: run belief-revision truth-tracking experiments.
//
//   bbr run --config series.json --out results.csv [--seed N] [--parallelism N] [--svg]
//   bbr repro fig2|fig3|fig4|fig5 --out DIR [--seed N] [--trials N] [--no-svg]
//   bbr sweep --states 3,5,7,10 --observables 2..14 --method lex:ab --out DIR [--seed N]
//   bbr space gen --out space.json [--seed N] [--states N] [--observables N] [--prior random|canonical|flat]
//   bbr space inspect space.json
//   bbr space identifiable space.json
//
// Exit status: 0 success, 2 usage or config error, 3 generation failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bbr/experiment.hpp"
#include "bbr/learning.hpp"
#include "bbr/reproduce.hpp"
#include "bbr/space_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitGeneration = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

bbr::Range parse_obs_range(const std::string& s) {
  auto to_num = [&](const std::string& t) -> std::size_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad observables range '" + s + "' (expected N, LO..HI or LO-HI)");
    }
    return std::stoul(t);
  };
  std::size_t sep = s.find("..");
  std::size_t width = 2;
  if (sep == std::string::npos) {
    sep = s.find('-');
    width = 1;
  }
  if (sep == std::string::npos) {
    const auto v = to_num(s);
    return {v, v};
  }
  bbr::Range r{to_num(s.substr(0, sep)), to_num(s.substr(sep + width))};
  if (r.lo > r.hi || r.lo == 0) throw UsageError("bad observables range '" + s + "'");
  return r;
}

void print_space(std::ostream& os, const bbr::PlausibilitySpace& ps) {
  const auto& space = ps.space();
  os << "states: " << space.n_states() << "\nobservables: " << space.n_observables() << '\n';
  for (bbr::ObsIndex i = 0; i < space.n_observables(); ++i) {
    os << "  O" << i << " = {";
    const auto m = space.observable(i).members();
    for (std::size_t k = 0; k < m.size(); ++k) os << (k ? "," : "") << m[k];
    os << "}\n";
  }
  os << "worlds:\n";
  for (bbr::WorldId w = 0; w < space.n_states(); ++w) {
    os << "  " << w << "  rank ";
    if (ps.order().in_domain(w)) os << ps.order().rank(w);
    else os << '-';
    os << "  signature {";
    const auto sig = bbr::signature(space, w);
    for (std::size_t k = 0; k < sig.size(); ++k) os << (k ? "," : "") << 'O' << sig[k];
    os << "}\n";
  }
  os << "identifiable: " << (bbr::is_identifiable(space) ? "true" : "false") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truth-tracking by (biased) iterated belief revision"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a configured series and write per-trial CSV");
  std::string config_path, run_out;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::size_t> run_par;
  bool run_svg = false;
  run->add_option("--config", config_path, "Series config (JSON)")->required();
  run->add_option("--out", run_out, "Output CSV path")->required();
  run->add_option("--seed", run_seed, "Override master_seed");
  run->add_option("--parallelism", run_par, "Worker threads");
  run->add_flag("--svg", run_svg, "Also write a bar chart next to the CSV");

  // repro
  auto* repro = app.add_subcommand("repro", "Paired unbiased vs. biased comparison");
  std::string figure, repro_out = ".";
  std::uint64_t repro_seed = 1;
  std::size_t repro_trials = 200, repro_par = 1;
  bool repro_svg = true;
  repro->add_option("figure", figure, "fig2 (confirmation), fig3 (framing), fig4 (anchoring), fig5 (anchoring, budgeted)")
      ->required();
  repro->add_option("--out", repro_out, "Output directory");
  repro->add_option("--seed", repro_seed, "Master seed");
  repro->add_option("--trials", repro_trials, "Trials per series");
  repro->add_option("--parallelism", repro_par, "Worker threads");
  repro->add_flag("--svg,!--no-svg", repro_svg, "Write an SVG chart (default on)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Success rate over numbers of states and observables");
  std::vector<std::size_t> sweep_states{3, 5, 7, 10};
  std::string sweep_obs = "2..14", sweep_method = "lex:ab", sweep_out = ".";
  std::uint64_t sweep_seed = 1;
  std::size_t sweep_trials = 200, sweep_par = 1;
  bool sweep_svg = true;
  sweep->add_option("--states", sweep_states, "Comma-separated state counts")->delimiter(',');
  sweep->add_option("--observables", sweep_obs, "Observable counts, LO..HI");
  sweep->add_option("--method", sweep_method, "Method, e.g. lex:ab, mini, cond:cb");
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--seed", sweep_seed, "Master seed");
  sweep->add_option("--trials", sweep_trials, "Trials per cell");
  sweep->add_option("--parallelism", sweep_par, "Worker threads");
  sweep->add_flag("--svg,!--no-svg", sweep_svg, "Write one SVG chart per state count (default on)");

  // space
  auto* space = app.add_subcommand("space", "Generate or examine a plausibility space file");
  space->require_subcommand(1);
  auto* gen = space->add_subcommand("gen", "Write a random space and prior");
  std::string gen_out, gen_prior = "random";
  std::uint64_t gen_seed = 1;
  std::size_t gen_states = 5, gen_obs = 12;
  gen->add_option("--out", gen_out, "Output JSON path")->required();
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--states", gen_states, "Number of worlds");
  gen->add_option("--observables", gen_obs, "Number of observables");
  gen->add_option("--prior", gen_prior, "random, canonical or flat")
      ->check(CLI::IsMember({"random", "canonical", "flat"}));
  auto* inspect = space->add_subcommand("inspect", "Print signatures and the prior");
  std::string inspect_path;
  inspect->add_option("file", inspect_path, "Space JSON")->required();
  auto* ident = space->add_subcommand("identifiable", "Print whether the space is identifiable");
  std::string ident_path;
  ident->add_option("file", ident_path, "Space JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      bbr::SeriesConfig cfg = bbr::parse_series_config(read_file(config_path));
      if (run_seed) cfg.gen.master_seed = *run_seed;
      if (run_par) cfg.parallelism = std::max<std::size_t>(1, *run_par);
      const auto rows = bbr::run_series(cfg);
      {
        auto out = open_out(run_out);
        bbr::write_csv(out, rows);
      }
      const auto summary = bbr::summarize(rows);
      bbr::print_summary(std::cout, summary);
      if (run_svg) {
        std::vector<std::string> groups;
        bbr::svg::Series rate{"success rate", {}};
        for (const auto& s : summary) {
          groups.push_back(s.method);
          rate.values.push_back(s.success_rate);
        }
        auto out = open_out(fs::path(run_out).replace_extension(".svg"));
        bbr::svg::grouped_bars(out, "Success frequency", "method", groups, {rate});
      }
    } else if (*repro) {
      const auto fig = bbr::parse_figure(figure);
      if (!fig) throw UsageError("unknown figure '" + figure + "' (expected fig2..fig5)");
      bbr::SeriesConfig cfg = bbr::figure_config(*fig, repro_seed, repro_trials);
      cfg.parallelism = std::max<std::size_t>(1, repro_par);
      const auto rows = bbr::run_series(cfg);
      const fs::path dir(repro_out);
      const std::string name = bbr::figure_name(*fig);
      {
        auto out = open_out(dir / (name + ".csv"));
        bbr::write_csv(out, rows);
      }
      const auto summary = bbr::summarize(rows);
      std::cout << bbr::figure_title(*fig) << "\n";
      bbr::print_summary(std::cout, summary);
      if (repro_svg) {
        auto out = open_out(dir / (name + ".svg"));
        bbr::write_figure_svg(out, *fig, summary);
      }
    } else if (*sweep) {
      if (sweep_states.empty()) throw UsageError("--states must not be empty");
      for (auto n : sweep_states) {
        if (n == 0 || n > bbr::kMaxWorlds) throw UsageError("state counts must be in [1, 64]");
      }
      const auto method = bbr::parse_method_spec(sweep_method);
      const auto result = bbr::run_sweep(sweep_states, parse_obs_range(sweep_obs), method, sweep_seed,
                                         sweep_trials, std::max<std::size_t>(1, sweep_par));
      const fs::path dir(sweep_out);
      {
        auto out = open_out(dir / "sweep.csv");
        bbr::write_sweep_csv(out, result);
      }
      for (const auto& [n, k] : result.skipped) {
        std::cout << "skipped " << n << " states x " << k << " observables (fewer than " << k
                  << " distinct non-empty propositions)\n";
      }
      for (auto n : sweep_states) {
        std::cout << n << " states: success rate "
                  << (bbr::sweep_nondecreasing(result, n) ? "non-decreasing" : "not monotone")
                  << " in the number of observables\n";
        if (sweep_svg) {
          auto out = open_out(dir / ("sweep_states_" + std::to_string(n) + ".svg"));
          bbr::write_sweep_svg(out, result, n);
        }
      }
      bbr::write_sweep_csv(std::cout, result);
    } else if (*gen) {
      bbr::GenConfig g;
      g.n_states = gen_states;
      g.n_observables = gen_obs;
      try {
        bbr::validate(g);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      bbr::Rng rng(bbr::mix_seed(gen_seed, 0));
      auto sp = std::make_shared<const bbr::EpistemicSpace>(bbr::random_space(g, rng));
      bbr::PlausibilityOrder prior = gen_prior == "canonical" ? bbr::canonical_prior(*sp)
                                     : gen_prior == "flat"    ? bbr::PlausibilityOrder::flat(sp->n_states())
                                                              : bbr::random_prior(*sp, rng);
      auto out = open_out(gen_out);
      out << bbr::space_to_json(bbr::PlausibilitySpace(sp, prior)).dump(2) << '\n';
    } else if (*inspect) {
      const auto ps = bbr::space_from_json(nlohmann::json::parse(read_file(inspect_path)));
      print_space(std::cout, ps);
    } else if (*ident) {
      const auto ps = bbr::space_from_json(nlohmann::json::parse(read_file(ident_path)));
      std::cout << (bbr::is_identifiable(ps.space()) ? "true" : "false") << '\n';
    }
  } catch (const bbr::GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kExitGeneration;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const bbr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
