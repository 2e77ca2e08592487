#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ordlab/gauge.hpp"

namespace ordlab {

// Depth-N tree of arity a: node (level k, index i) stands for a cell of side
// a^{-k}; marked leaves are the carried set. The finite instance of the
// mass-distribution problem.
struct DyadicTree {
  int depth = 1;
  int arity = 2;
  std::vector<std::uint64_t> marked;  // sorted, unique, < arity^depth

  double side(int level) const;
  std::uint64_t leaf_count() const;  // arity^depth
  void validate() const;
};

struct NodeRef {
  int level = 0;
  std::uint64_t index = 0;

  // Digit string of the cell address, base arity ("" is the root).
  std::string path(int arity) const;
};

struct CoverResult {
  double weight = 0.0;
  std::vector<NodeRef> antichain;  // one minimizing cover
};

// Minimal gauge-weight of a dyadic cover of the marked leaves: bottom-up DP
//   weight(Q) = min( h(side(Q)), sum over children weight )
// over the subtree spanned by the marked set.
CoverResult min_cover_weight(const DyadicTree& tree, const GaugeSpec& gauge);

struct FrostmanSolution {
  double total_mass = 0.0;
  std::vector<std::pair<std::uint64_t, double>> leaf_masses;
  std::vector<NodeRef> certificate;  // saturated antichain = one min cut
};

// Maximal total mass on the marked leaves subject to mass(Q) <= h(side(Q))
// for every node Q. The constraint family is laminar, so pushing the
// bottleneck residual along each root-leaf path (any order) is an exact
// max-flow; cost O(depth * |marked|). Strong duality with min_cover_weight
// is the finite mass-distribution principle.
FrostmanSolution max_frostman_mass(const DyadicTree& tree,
                                   const GaugeSpec& gauge);

struct FrostmanReport {
  bool feasible = false;  // every node constraint holds
  bool optimal = false;   // total matches the min cover weight
  double cover_weight = 0.0;
  double total_mass = 0.0;
  double max_violation = 0.0;
  std::vector<std::string> violations;  // node paths of violated constraints
};

// Independent re-check of a solution: every node constraint plus the duality
// equality against a fresh min_cover_weight run.
FrostmanReport frostman_verify(const FrostmanSolution& solution,
                               const DyadicTree& tree, const GaugeSpec& gauge);

struct FrostmanInstance {
  DyadicTree tree;
  GaugeSpec gauge = GaugeSpec::parametric(1, 1, 1.0);
};

// Instance JSON: {"depth": N, "arity": a, "marked": [leaf indices],
//                 "gauge": {"kind": "parametric", "p":, "q":, "alpha":}
//                        | {"kind": "tabulated", "points": [[r, log_v], ...]}}
FrostmanInstance load_frostman_instance(const std::string& file);
FrostmanInstance parse_frostman_instance(const std::string& json_text);

std::string frostman_solution_json(const FrostmanSolution& solution,
                                   const FrostmanReport& report, int arity);
void write_frostman_solution(const std::string& file,
                             const FrostmanSolution& solution,
                             const FrostmanReport& report, int arity);

}  // namespace ordlab
