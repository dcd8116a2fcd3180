#pragma once

// JSON form of a plausibility space:
//   {"n_states": 4, "observables": [[0,1],[2,3]], "prior_ranks": [0,0,1,-1]}
// A rank of -1 marks a world outside the order's domain.

#include <string>
#include <vector>

#include "json.hpp"

#include "bbr/core.hpp"
#include "bbr/experiment.hpp"

namespace bbr {

inline nlohmann::json space_to_json(const PlausibilitySpace& ps) {
  nlohmann::json j;
  j["n_states"] = ps.space().n_states();
  auto obs = nlohmann::json::array();
  for (const auto& o : ps.space().observables()) obs.push_back(o.members());
  j["observables"] = std::move(obs);
  auto ranks = nlohmann::json::array();
  for (auto r : ps.order().ranks()) {
    if (r == PlausibilityOrder::kAbsent) ranks.push_back(-1);
    else ranks.push_back(r);
  }
  j["prior_ranks"] = std::move(ranks);
  return j;
}

/// Throws ConfigError on anything malformed, including invalid spaces.
inline PlausibilitySpace space_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("space file must be a JSON object");
  if (!j.contains("n_states") || !j["n_states"].is_number_unsigned()) {
    throw ConfigError("space file needs a non-negative integer 'n_states'");
  }
  const auto n = j["n_states"].get<std::size_t>();
  if (!j.contains("observables") || !j["observables"].is_array()) {
    throw ConfigError("space file needs an 'observables' array");
  }
  try {
    std::vector<Proposition> obs;
    for (const auto& o : j["observables"]) {
      if (!o.is_array()) throw ConfigError("each observable must be an array of world ids");
      std::vector<WorldId> members;
      for (const auto& w : o) {
        if (!w.is_number_unsigned()) throw ConfigError("world ids must be non-negative integers");
        members.push_back(w.get<WorldId>());
      }
      obs.emplace_back(n, members);
    }
    EpistemicSpace space(n, std::move(obs));

    std::vector<PlausibilityOrder::Rank> ranks(n, 0);
    if (j.contains("prior_ranks")) {
      const auto& pr = j["prior_ranks"];
      if (!pr.is_array() || pr.size() != n) {
        throw ConfigError("prior_ranks must list one integer per world");
      }
      for (std::size_t w = 0; w < n; ++w) {
        if (!pr[w].is_number_integer()) throw ConfigError("prior_ranks must be integers");
        const auto r = pr[w].get<long long>();
        if (r < -1) throw ConfigError("prior ranks must be >= -1");
        ranks[w] = r == -1 ? PlausibilityOrder::kAbsent : static_cast<PlausibilityOrder::Rank>(r);
      }
    }
    return {std::move(space), normalize_ranks(PlausibilityOrder(std::move(ranks)))};
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid space: ") + e.what());
  }
}

}  // namespace bbr
