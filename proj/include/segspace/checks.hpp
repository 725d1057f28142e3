#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segspace/rng.hpp"
#include "segspace/types.hpp"

namespace segspace {

struct CheckItem {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct CheckReport {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<CheckItem> items;
  bool all_pass = true;
  std::vector<int> strata_nodes;   // nonempty fixed-locus indices plus n
};

/// Runs the cross-module invariant suite for one n: chart round trips,
/// frame orthogonality and rank, ruling-line membership, the containment
/// predicate against its sampled oracle, geodesic conservation, and the
/// exact shift-matrix facts.
CheckReport run_checks(int n, std::uint64_t seed);

std::string check_reports_json(const std::vector<CheckReport>& reports);

/// Random points for tests and checks: a segment anchored at 0, or a
/// translated one.
PolyPoint random_M_point(int n, Rng& rng);
PolyPoint random_L_point(int n, Rng& rng);

}  // namespace segspace
