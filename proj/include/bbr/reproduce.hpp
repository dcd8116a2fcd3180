#pragma once

// Canned comparisons (unbiased vs. one bias, per base method) and the
// observable-count sweep.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bbr/experiment.hpp"
#include "bbr/svg.hpp"

namespace bbr {

enum class Figure { ConfirmationBias, FramingBias, AnchoringBias, AnchoringBiasResources };

inline std::optional<Figure> parse_figure(const std::string& s) {
  if (s == "fig2") return Figure::ConfirmationBias;
  if (s == "fig3") return Figure::FramingBias;
  if (s == "fig4") return Figure::AnchoringBias;
  if (s == "fig5") return Figure::AnchoringBiasResources;
  return std::nullopt;
}

inline std::string figure_name(Figure f) {
  switch (f) {
    case Figure::ConfirmationBias: return "fig2";
    case Figure::FramingBias: return "fig3";
    case Figure::AnchoringBias: return "fig4";
    case Figure::AnchoringBiasResources: return "fig5";
  }
  return "?";
}

inline std::string figure_title(Figure f) {
  switch (f) {
    case Figure::ConfirmationBias: return "Confirmation-biased vs. unbiased revision";
    case Figure::FramingBias: return "Framing-biased vs. unbiased revision";
    case Figure::AnchoringBias: return "Anchoring-biased vs. unbiased revision";
    case Figure::AnchoringBiasResources: return "Anchoring-biased vs. unbiased revision, limited resources";
  }
  return "";
}

/// Methods in bar order: for each of cond, lex, mini the unbiased method then
/// its biased counterpart. The resource-limited comparison budgets both arms.
inline SeriesConfig figure_config(Figure f, std::uint64_t seed, std::size_t trials = 200) {
  SeriesConfig cfg;
  cfg.gen.master_seed = seed;
  cfg.gen.trials = trials;
  BiasKind kind = BiasKind::Anchoring;
  if (f == Figure::ConfirmationBias) kind = BiasKind::Confirmation;
  if (f == Figure::FramingBias) kind = BiasKind::Framing;
  for (auto base : {OneStepMethod::Cond, OneStepMethod::Lex, OneStepMethod::Mini}) {
    MethodConfig plain;
    plain.base = base;
    cfg.methods.push_back(plain);
    MethodConfig biased = plain;
    biased.bias = kind;
    cfg.methods.push_back(biased);
  }
  if (f == Figure::AnchoringBiasResources) cfg.budget = ResourceBudget{};
  return cfg;
}

/// "lex_ab" -> "ab".
inline std::string bias_label_of(const std::string& method_label) {
  const auto pos = method_label.find('_');
  return pos == std::string::npos ? "none" : method_label.substr(pos + 1);
}

inline void write_figure_svg(std::ostream& os, Figure f, const SeriesSummary& summary) {
  std::vector<std::string> groups;
  svg::Series unbiased{"unbiased", {}};
  svg::Series biased{"biased", {}};
  for (std::size_t i = 0; i + 1 < summary.size(); i += 2) {
    groups.push_back(summary[i].method);
    unbiased.values.push_back(summary[i].success_rate);
    biased.values.push_back(summary[i + 1].success_rate);
  }
  const std::string suffix = f == Figure::AnchoringBiasResources ? "-res" : "";
  for (auto& g : groups) g += suffix;
  if (summary.size() >= 2) biased.name = bias_label_of(summary[1].method);
  svg::grouped_bars(os, figure_title(f), "revision method", groups, {unbiased, biased});
}

/// Parses "base[:bias]" such as "lex", "lex:ab", "cond:cb-strict",
/// "mini:fr-static" or "lex:fr-fair3". '+' is accepted in place of ':'.
inline MethodConfig parse_method_spec(std::string s) {
  for (char& c : s) {
    if (c == '+') c = ':';
  }
  MethodConfig m;
  const auto colon = s.find(':');
  m.base = parse_base(s.substr(0, colon));
  if (colon == std::string::npos) return m;

  const std::string b = s.substr(colon + 1);
  if (b == "none") return m;
  if (b == "ab") {
    m.bias = BiasKind::Anchoring;
  } else if (b == "cb" || b == "cb-inclusive") {
    m.bias = BiasKind::Confirmation;
  } else if (b == "cb-strict") {
    m.bias = BiasKind::Confirmation;
    m.cb_mode = CountMode::Strict;
  } else if (b == "fr" || b.rfind("fr-", 0) == 0) {
    m.bias = BiasKind::Framing;
    const std::string mode = b == "fr" ? "dynamic" : b.substr(3);
    if (mode.rfind("fair", 0) == 0) {
      const std::string digits = mode.substr(4);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("fair framing needs a prefix length, e.g. fr-fair3");
      }
      m.fr_mode = framing::Fair{std::stoul(digits)};
    } else {
      m.fr_mode = parse_framing(mode, 0);
    }
  } else {
    throw ConfigError("unknown bias '" + b + "' in method '" + s + "'");
  }
  return m;
}

struct SweepCell {
  std::size_t n_states = 0;
  std::size_t n_observables = 0;
  MethodSummary summary;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<std::pair<std::size_t, std::size_t>> skipped;  // (states, observables) with too few subsets
};

inline bool cell_feasible(std::size_t n_states, std::size_t n_observables) {
  return n_states >= 64 || n_observables <= (std::uint64_t{1} << n_states) - 1;
}

inline SweepResult run_sweep(const std::vector<std::size_t>& states, Range observables,
                             const MethodConfig& method, std::uint64_t seed, std::size_t trials,
                             std::size_t parallelism) {
  SweepResult out;
  for (std::size_t n : states) {
    for (std::size_t k = observables.lo; k <= observables.hi; ++k) {
      if (!cell_feasible(n, k)) {
        out.skipped.emplace_back(n, k);
        continue;
      }
      SeriesConfig cfg;
      cfg.gen.n_states = n;
      cfg.gen.n_observables = k;
      cfg.gen.trials = trials;
      cfg.gen.master_seed = seed;
      cfg.methods = {method};
      cfg.parallelism = parallelism;
      const auto summary = summarize(run_series(cfg));
      MethodSummary s = summary.empty() ? MethodSummary{method_label(method)} : summary.front();
      out.cells.push_back({n, k, s});
    }
  }
  return out;
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << "n_states,n_observables,method,trials,successes,success_rate,success_rate_on_identifiable\n";
  char buf[64];
  for (const auto& c : r.cells) {
    os << c.n_states << ',' << c.n_observables << ',' << c.summary.method << ',' << c.summary.trials << ','
       << c.summary.successes << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", c.summary.success_rate, c.summary.success_rate_on_identifiable);
    os << buf << '\n';
  }
}

inline void write_sweep_svg(std::ostream& os, const SweepResult& r, std::size_t n_states) {
  std::vector<std::string> groups;
  svg::Series series{"", {}};
  for (const auto& c : r.cells) {
    if (c.n_states != n_states) continue;
    groups.push_back(std::to_string(c.n_observables));
    series.values.push_back(c.summary.success_rate);
    series.name = c.summary.method;
  }
  svg::grouped_bars(os, std::to_string(n_states) + " states", "number of observables", groups, {series});
}

/// True when success rate never drops as observables increase for `n_states`.
inline bool sweep_nondecreasing(const SweepResult& r, std::size_t n_states) {
  double prev = -1.0;
  for (const auto& c : r.cells) {
    if (c.n_states != n_states) continue;
    if (c.summary.success_rate < prev) return false;
    prev = c.summary.success_rate;
  }
  return true;
}

}  // namespace bbr
