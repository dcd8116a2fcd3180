#pragma once

// Series execution: every configured method runs on the same generated inputs
// per trial, and each (trial, method) pair becomes one CSV row.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iterator>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bbr/bias.hpp"
#include "bbr/expgen.hpp"
#include "bbr/learning.hpp"

namespace bbr {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BiasKind { None, Confirmation, Framing, Anchoring };

/// One method of a series, as described in a config file.
struct MethodConfig {
  OneStepMethod base = OneStepMethod::Cond;
  BiasKind bias = BiasKind::None;
  CountMode cb_mode = CountMode::Inclusive;
  FramingMode fr_mode = framing::Dynamic{};
  std::optional<Range> stubbornness;
};

struct SeriesConfig {
  GenConfig gen;
  std::vector<MethodConfig> methods;
  std::optional<ResourceBudget> budget;
  std::size_t parallelism = 1;
};

inline std::string bias_label(const MethodConfig& m) {
  switch (m.bias) {
    case BiasKind::None: return "none";
    case BiasKind::Confirmation: return m.cb_mode == CountMode::Inclusive ? "cb" : "cb-strict";
    case BiasKind::Anchoring: return "ab";
    case BiasKind::Framing:
      return std::visit(
          [](const auto& f) -> std::string {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, framing::Identity>) return "fr-identity";
            else if constexpr (std::is_same_v<F, framing::Static>) return "fr-static";
            else if constexpr (std::is_same_v<F, framing::Dynamic>) return "fr-dynamic";
            else return "fr-fair" + std::to_string(f.prefix);
          },
          m.fr_mode);
  }
  return "?";
}

/// "lex", "lex_cb", "cond_fr-dynamic", ...
inline std::string method_label(const MethodConfig& m) {
  std::string s(to_string(m.base));
  if (m.bias != BiasKind::None) s += "_" + bias_label(m);
  return s;
}

// ---------------------------------------------------------------------------
// Config parsing

inline OneStepMethod parse_base(const std::string& s) {
  if (s == "cond") return OneStepMethod::Cond;
  if (s == "lex") return OneStepMethod::Lex;
  if (s == "mini") return OneStepMethod::Mini;
  throw ConfigError("unknown base method '" + s + "' (expected cond, lex or mini)");
}

inline BiasKind parse_bias(const std::string& s) {
  if (s == "none") return BiasKind::None;
  if (s == "cb") return BiasKind::Confirmation;
  if (s == "fr") return BiasKind::Framing;
  if (s == "ab") return BiasKind::Anchoring;
  throw ConfigError("unknown bias '" + s + "' (expected none, cb, fr or ab)");
}

inline FramingMode parse_framing(const std::string& s, std::size_t fair_prefix) {
  if (s == "identity") return framing::Identity{};
  if (s == "static") return framing::Static{};
  if (s == "dynamic") return framing::Dynamic{};
  if (s == "fair") return framing::Fair{fair_prefix};
  throw ConfigError("unknown fr_mode '" + s + "'");
}

namespace detail {
using nlohmann::json;

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

inline Range parse_range(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned()) {
    throw ConfigError(what + " must be [lo, hi] with non-negative integers");
  }
  Range r{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
  if (r.lo > r.hi) throw ConfigError(what + " is empty (lo > hi)");
  return r;
}

template <class T>
T get_unsigned(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned()) throw ConfigError(std::string(key) + " must be a non-negative integer");
  return j[key].get<T>();
}
}  // namespace detail

/// Parses a method descriptor object. Errors throw ConfigError.
inline MethodConfig parse_method(const nlohmann::json& j) {
  using detail::json;
  if (!j.is_object()) throw ConfigError("each method must be an object");
  detail::reject_unknown_keys(j, {"base", "bias", "cb_mode", "fr_mode", "fair_prefix", "stubbornness"},
                              "method");
  if (!j.contains("base") || !j["base"].is_string()) throw ConfigError("method needs a string 'base'");
  MethodConfig m;
  m.base = parse_base(j["base"].get<std::string>());
  if (j.contains("bias")) {
    if (!j["bias"].is_string()) throw ConfigError("'bias' must be a string");
    m.bias = parse_bias(j["bias"].get<std::string>());
  }
  if (j.contains("cb_mode")) {
    const auto s = j["cb_mode"].is_string() ? j["cb_mode"].get<std::string>() : std::string();
    if (s == "inclusive") m.cb_mode = CountMode::Inclusive;
    else if (s == "strict") m.cb_mode = CountMode::Strict;
    else throw ConfigError("cb_mode must be \"inclusive\" or \"strict\"");
  }
  const auto fair_prefix = detail::get_unsigned<std::size_t>(j, "fair_prefix", 0);
  if (j.contains("fr_mode")) {
    if (!j["fr_mode"].is_string()) throw ConfigError("'fr_mode' must be a string");
    m.fr_mode = parse_framing(j["fr_mode"].get<std::string>(), fair_prefix);
  }
  if (j.contains("stubbornness")) {
    m.stubbornness = detail::parse_range(j["stubbornness"], "stubbornness");
    if (m.stubbornness->lo == 0) throw ConfigError("stubbornness values must be >= 1");
  }
  return m;
}

inline SeriesConfig parse_series_config(const nlohmann::json& j) {
  using detail::json;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  detail::reject_unknown_keys(j,
                              {"n_states", "n_observables", "extra_len", "trials", "master_seed",
                               "methods", "budget", "parallelism"},
                              "config");
  SeriesConfig cfg;
  cfg.gen.n_states = detail::get_unsigned<std::size_t>(j, "n_states", cfg.gen.n_states);
  cfg.gen.n_observables = detail::get_unsigned<std::size_t>(j, "n_observables", cfg.gen.n_observables);
  cfg.gen.trials = detail::get_unsigned<std::size_t>(j, "trials", cfg.gen.trials);
  cfg.gen.master_seed = detail::get_unsigned<std::uint64_t>(j, "master_seed", cfg.gen.master_seed);
  cfg.parallelism = detail::get_unsigned<std::size_t>(j, "parallelism", cfg.parallelism);
  if (j.contains("extra_len")) cfg.gen.extra_len = detail::parse_range(j["extra_len"], "extra_len");

  if (!j.contains("methods") || !j["methods"].is_array() || j["methods"].empty()) {
    throw ConfigError("config needs a non-empty 'methods' array");
  }
  for (const auto& m : j["methods"]) cfg.methods.push_back(parse_method(m));

  if (j.contains("budget") && !j["budget"].is_null()) {
    const auto& b = j["budget"];
    if (!b.is_object()) throw ConfigError("budget must be an object or null");
    detail::reject_unknown_keys(b, {"initial", "floor"}, "budget");
    ResourceBudget budget;
    if (b.contains("initial")) {
      if (!b["initial"].is_number()) throw ConfigError("budget.initial must be a number");
      budget.remaining = b["initial"].get<double>();
    }
    if (b.contains("floor")) {
      if (!b["floor"].is_number()) throw ConfigError("budget.floor must be a number");
      budget.floor = b["floor"].get<double>();
    }
    if (!(budget.remaining >= 0.0)) throw ConfigError("budget.initial must be >= 0");
    cfg.budget = budget;
  }
  if (cfg.parallelism == 0) cfg.parallelism = 1;
  try {
    validate(cfg.gen);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

inline SeriesConfig parse_series_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_series_config(j);
}

// ---------------------------------------------------------------------------
// Execution

struct TrialRecord {
  std::size_t trial_id = 0;
  std::uint64_t trial_seed = 0;
  std::string method;
  std::string bias;
  std::size_t n_states = 0;
  std::size_t n_observables = 0;
  WorldId actual_world = 0;
  std::size_t seq_len = 0;
  bool identifiable = false;
  bool success = false;
  std::optional<std::size_t> converge_step;
  std::size_t revisions_executed = 0;
  bool budget_exhausted = false;
};

inline BiasedMethodSpec method_spec(const MethodConfig& m, const TrialInputs& t, const GenConfig& gen,
                                    const std::optional<ResourceBudget>& budget) {
  BiasedMethodSpec spec;
  spec.base = m.base;
  spec.budget = budget;
  switch (m.bias) {
    case BiasKind::None: break;
    case BiasKind::Confirmation: {
      const Range range = m.stubbornness.value_or(gen.stubbornness_range);
      StubbornnessMap d = range == gen.stubbornness_range
                              ? t.stubbornness
                              : trial_stubbornness(t.trial_seed, t.space->n_observables(), range);
      spec.bias = bias::Confirmation{std::move(d), m.cb_mode};
      break;
    }
    case BiasKind::Framing: spec.bias = bias::Framing{m.fr_mode}; break;
    case BiasKind::Anchoring: spec.bias = bias::Anchoring{}; break;
  }
  return spec;
}

/// Runs every method of `cfg` on trial `trial_index`; one record per method.
inline std::vector<TrialRecord> run_trial(const SeriesConfig& cfg, std::size_t trial_index) {
  const TrialInputs t = make_trial(cfg.gen, trial_index);
  const bool identifiable = is_identifiable(*t.space);
  const PlausibilitySpace ps0 = t.initial();

  std::vector<TrialRecord> out;
  out.reserve(cfg.methods.size());
  for (const auto& m : cfg.methods) {
    // Framing and anchoring draw from per-bias streams so that, e.g., cond_fr
    // and lex_fr perceive identical frames.
    const SeedStream stream = m.bias == BiasKind::Anchoring ? SeedStream::Anchoring : SeedStream::Framing;
    Rng rng(stream_seed(t.trial_seed, stream));
    const Trajectory traj = run_learner(method_spec(m, t, cfg.gen, cfg.budget), ps0, t.seq, rng);
    const Verdict v = verdict(traj, t.actual);

    TrialRecord r;
    r.trial_id = trial_index;
    r.trial_seed = t.trial_seed;
    r.method = method_label(m);
    r.bias = bias_label(m);
    r.n_states = t.space->n_states();
    r.n_observables = t.space->n_observables();
    r.actual_world = t.actual;
    r.seq_len = t.seq.size();
    r.identifiable = identifiable;
    r.success = v.success;
    r.converge_step = v.converge_step;
    r.revisions_executed = v.revisions_executed;
    r.budget_exhausted = traj.budget_exhausted();
    out.push_back(std::move(r));
  }
  return out;
}

/// All trials of a series, ordered by (trial_id, method order) regardless of
/// how many threads ran them.
inline std::vector<TrialRecord> run_series(const SeriesConfig& cfg) {
  const std::size_t n = cfg.gen.trials;
  std::vector<std::vector<TrialRecord>> per_trial(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.parallelism, n));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        per_trial[i] = run_trial(cfg, i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TrialRecord> all;
  all.reserve(n * cfg.methods.size());
  for (auto& rows : per_trial) std::move(rows.begin(), rows.end(), std::back_inserter(all));
  return all;
}

// ---------------------------------------------------------------------------
// Output

inline constexpr const char* kCsvHeader =
    "trial_id,trial_seed,method,bias,n_states,n_observables,actual_world,seq_len,identifiable,"
    "success,converge_step,revisions_executed,budget_exhausted";

inline void write_csv(std::ostream& os, const std::vector<TrialRecord>& rows) {
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.trial_id << ',' << r.trial_seed << ',' << r.method << ',' << r.bias << ',' << r.n_states
       << ',' << r.n_observables << ',' << r.actual_world << ',' << r.seq_len << ','
       << b(r.identifiable) << ',' << b(r.success) << ',';
    if (r.converge_step) os << *r.converge_step;
    os << ',' << r.revisions_executed << ',' << b(r.budget_exhausted) << '\n';
  }
}

struct MethodSummary {
  std::string method;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  std::size_t identifiable_trials = 0;
  double success_rate_on_identifiable = 0.0;
  double mean_converge_step = 0.0;  // over successful trials
  double mean_revisions = 0.0;
};

using SeriesSummary = std::vector<MethodSummary>;

/// Aggregates rows per method label, in order of first appearance.
inline SeriesSummary summarize(const std::vector<TrialRecord>& rows) {
  SeriesSummary out;
  struct Acc {
    std::size_t ident_successes = 0;
    double converge_sum = 0.0;
    double revisions_sum = 0.0;
  };
  std::vector<Acc> acc;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.method == r.method; });
    if (it == out.end()) {
      out.push_back({r.method});
      acc.emplace_back();
      it = out.end() - 1;
    }
    Acc& a = acc[static_cast<std::size_t>(it - out.begin())];
    ++it->trials;
    if (r.success) {
      ++it->successes;
      a.converge_sum += static_cast<double>(r.converge_step.value_or(0));
    }
    if (r.identifiable) {
      ++it->identifiable_trials;
      if (r.success) ++a.ident_successes;
    }
    a.revisions_sum += static_cast<double>(r.revisions_executed);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& s = out[i];
    const auto& a = acc[i];
    s.success_rate = s.trials ? static_cast<double>(s.successes) / static_cast<double>(s.trials) : 0.0;
    s.success_rate_on_identifiable =
        s.identifiable_trials
            ? static_cast<double>(a.ident_successes) / static_cast<double>(s.identifiable_trials)
            : 0.0;
    s.mean_converge_step = s.successes ? a.converge_sum / static_cast<double>(s.successes) : 0.0;
    s.mean_revisions = s.trials ? a.revisions_sum / static_cast<double>(s.trials) : 0.0;
  }
  return out;
}

inline void print_summary(std::ostream& os, const SeriesSummary& summary) {
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %7s %9s %9s %11s %10s %9s\n", "method", "trials", "successes",
                "rate", "rate(ident)", "converge", "revisions");
  os << line;
  for (const auto& s : summary) {
    std::snprintf(line, sizeof line, "%-22s %7zu %9zu %8.1f%% %10.1f%% %10.2f %9.2f\n", s.method.c_str(),
                  s.trials, s.successes, 100.0 * s.success_rate, 100.0 * s.success_rate_on_identifiable,
                  s.mean_converge_step, s.mean_revisions);
    os << line;
  }
}

}  // namespace bbr
