#include "ordlab/frostman.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "ordlab/errors.hpp"

namespace ordlab {

using nlohmann::json;

double DyadicTree::side(int level) const {
  return std::pow(static_cast<double>(arity), -level);
}

std::uint64_t DyadicTree::leaf_count() const {
  std::uint64_t count = 1;
  for (int k = 0; k < depth; ++k) count *= static_cast<std::uint64_t>(arity);
  return count;
}

void DyadicTree::validate() const {
  if (depth < 1) throw DomainError("DyadicTree: depth must be >= 1");
  if (arity < 2) throw DomainError("DyadicTree: arity must be >= 2");
  if (depth * std::log2(static_cast<double>(arity)) > 58.0)
    throw DomainError("DyadicTree: arity^depth exceeds the index range");
  if (marked.empty()) throw DomainError("DyadicTree: marked set is empty");
  const std::uint64_t leaves = leaf_count();
  for (std::size_t i = 0; i < marked.size(); ++i) {
    if (marked[i] >= leaves)
      throw DomainError("DyadicTree: marked leaf index out of range");
    if (i > 0 && marked[i] <= marked[i - 1])
      throw DomainError("DyadicTree: marked must be sorted and unique");
  }
}

std::string NodeRef::path(int arity) const {
  std::string digits;
  std::uint64_t idx = index;
  for (int k = 0; k < level; ++k) {
    digits += static_cast<char>('0' + idx % arity);
    idx /= arity;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace {

struct LevelCaps {
  std::vector<double> h;  // h(side(k)) for k = 0..depth

  LevelCaps(const DyadicTree& tree, const GaugeSpec& gauge) {
    h.resize(tree.depth + 1);
    for (int k = 0; k <= tree.depth; ++k)
      h[k] = std::exp(gauge.log_eval(tree.side(k)));
  }
};

// Span of marked leaves under node (level, index): recursion over the sorted
// marked array, children found by binary search on leaf prefixes.
struct CoverDp {
  const DyadicTree& tree;
  const LevelCaps& caps;
  std::uint64_t subtree_leaves(int level) const {
    std::uint64_t count = 1;
    for (int k = level; k < tree.depth; ++k) count *= tree.arity;
    return count;
  }

  double weight(int level, std::size_t lo, std::size_t hi,
                std::uint64_t index, std::vector<NodeRef>* antichain) const {
    const double own = caps.h[level];
    if (level == tree.depth) {
      if (antichain) antichain->push_back({level, index});
      return own;
    }
    const std::uint64_t child_span = subtree_leaves(level + 1);
    double children = 0.0;
    std::size_t pos = lo;
    std::vector<std::tuple<int, std::size_t, std::size_t, std::uint64_t>> kids;
    while (pos < hi) {
      const std::uint64_t child =
          tree.marked[pos] / child_span;  // global child index at level+1
      const std::uint64_t child_end = (child + 1) * child_span;
      std::size_t endpos = pos;
      while (endpos < hi && tree.marked[endpos] < child_end) ++endpos;
      children += weight(level + 1, pos, endpos, child, nullptr);
      kids.emplace_back(level + 1, pos, endpos, child);
      pos = endpos;
    }
    if (own <= children) {
      if (antichain) antichain->push_back({level, index});
      return own;
    }
    if (antichain)
      for (auto& [lv, klo, khi, kidx] : kids)
        weight(lv, klo, khi, kidx, antichain);
    return children;
  }
};

}  // namespace

CoverResult min_cover_weight(const DyadicTree& tree, const GaugeSpec& gauge) {
  tree.validate();
  const LevelCaps caps(tree, gauge);
  const CoverDp dp{tree, caps};
  CoverResult res;
  res.weight = dp.weight(0, 0, tree.marked.size(), 0, &res.antichain);
  return res;
}

FrostmanSolution max_frostman_mass(const DyadicTree& tree,
                                   const GaugeSpec& gauge) {
  tree.validate();
  const LevelCaps caps(tree, gauge);
  const int depth = tree.depth;

  // residual capacity per touched node, keyed by (level, index)
  std::unordered_map<std::uint64_t, double> residual;
  residual.reserve(tree.marked.size() * (depth + 1));
  auto key = [depth](int level, std::uint64_t index) {
    return (static_cast<std::uint64_t>(level) << 58) | index;
  };
  auto res_of = [&](int level, std::uint64_t index) -> double& {
    auto [it, inserted] = residual.try_emplace(key(level, index), caps.h[level]);
    return it->second;
  };

  FrostmanSolution sol;
  sol.leaf_masses.reserve(tree.marked.size());

  // Per-leaf bottleneck push; exact because the constraints are laminar.
  std::vector<std::uint64_t> ancestor(depth + 1);
  double total = 0.0, comp = 0.0;  // Neumaier-compensated total
  for (std::uint64_t leaf : tree.marked) {
    std::uint64_t idx = leaf;
    for (int level = depth; level >= 0; --level) {
      ancestor[level] = idx;
      idx /= tree.arity;
    }
    double bottleneck = res_of(0, 0);
    for (int level = 1; level <= depth; ++level)
      bottleneck = std::min(bottleneck, res_of(level, ancestor[level]));
    for (int level = 0; level <= depth; ++level)
      res_of(level, ancestor[level]) -= bottleneck;
    sol.leaf_masses.emplace_back(leaf, bottleneck);

    const double t = total + bottleneck;
    comp += std::abs(total) >= std::abs(bottleneck)
                ? (total - t) + bottleneck
                : (bottleneck - t) + total;
    total = t;
  }
  sol.total_mass = total + comp;

  // Min-cut certificate: the highest saturated node above each marked leaf;
  // the collected set is an antichain covering the marked set.
  std::vector<NodeRef> cut;
  for (std::uint64_t leaf : tree.marked) {
    std::uint64_t idx = leaf;
    for (int level = depth; level >= 0; --level) {
      ancestor[level] = idx;
      idx /= tree.arity;
    }
    for (int level = 0; level <= depth; ++level) {
      if (res_of(level, ancestor[level]) == 0.0) {
        cut.push_back({level, ancestor[level]});
        break;
      }
    }
  }
  std::sort(cut.begin(), cut.end(), [](const NodeRef& a, const NodeRef& b) {
    return a.level != b.level ? a.level < b.level : a.index < b.index;
  });
  cut.erase(std::unique(cut.begin(), cut.end(),
                        [](const NodeRef& a, const NodeRef& b) {
                          return a.level == b.level && a.index == b.index;
                        }),
            cut.end());
  sol.certificate = std::move(cut);
  return sol;
}

FrostmanReport frostman_verify(const FrostmanSolution& solution,
                               const DyadicTree& tree, const GaugeSpec& gauge) {
  tree.validate();
  const LevelCaps caps(tree, gauge);
  FrostmanReport rep;
  rep.total_mass = solution.total_mass;

  // Re-accumulate subtree masses from the leaves.
  std::unordered_map<std::uint64_t, double> mass;
  auto key = [&](int level, std::uint64_t index) {
    return (static_cast<std::uint64_t>(level) << 58) | index;
  };
  double leaf_sum = 0.0;
  for (const auto& [leaf, m] : solution.leaf_masses) {
    if (m < 0.0) {
      rep.violations.push_back("negative mass at leaf " + std::to_string(leaf));
      continue;
    }
    leaf_sum += m;
    std::uint64_t idx = leaf;
    for (int level = tree.depth; level >= 0; --level) {
      mass[key(level, idx)] += m;
      idx /= tree.arity;
    }
  }

  const double tol = 1e-10;
  rep.feasible = rep.violations.empty();
  for (const auto& [k, m] : mass) {
    const int level = static_cast<int>(k >> 58);
    const std::uint64_t index = k & ((1ull << 58) - 1);
    const double cap = caps.h[level];
    const double excess = m - cap;
    if (excess > tol * std::max(1.0, cap)) {
      rep.feasible = false;
      rep.max_violation = std::max(rep.max_violation, excess);
      rep.violations.push_back("node /" + NodeRef{level, index}.path(tree.arity) +
                               " mass " + std::to_string(m) + " exceeds " +
                               std::to_string(cap));
    }
  }
  if (std::abs(leaf_sum - solution.total_mass) >
      1e-12 * std::max(1.0, std::abs(solution.total_mass))) {
    rep.feasible = false;
    rep.violations.push_back("leaf masses do not sum to total_mass");
  }

  rep.cover_weight = min_cover_weight(tree, gauge).weight;
  rep.optimal = rep.feasible &&
                std::abs(solution.total_mass - rep.cover_weight) <=
                    1e-12 * std::max(1.0, rep.cover_weight);
  return rep;
}

namespace {

GaugeSpec gauge_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "parametric") {
    return GaugeSpec::parametric(j.at("p").get<int>(), j.at("q").get<int>(),
                                 j.at("alpha").get<double>());
  }
  if (kind == "tabulated") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : j.at("points"))
      pts.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    return GaugeSpec::tabulated(std::move(pts));
  }
  throw IoError("frostman instance: unknown gauge kind '" + kind + "'");
}

}  // namespace

FrostmanInstance parse_frostman_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IoError(std::string("frostman instance: bad JSON: ") + e.what());
  }
  FrostmanInstance inst;
  try {
    inst.tree.depth = j.at("depth").get<int>();
    inst.tree.arity = j.value("arity", 2);
    inst.tree.marked = j.at("marked").get<std::vector<std::uint64_t>>();
    std::sort(inst.tree.marked.begin(), inst.tree.marked.end());
    inst.gauge = gauge_from_json(j.at("gauge"));
  } catch (const json::exception& e) {
    throw IoError(std::string("frostman instance: missing field: ") + e.what());
  }
  inst.tree.validate();
  return inst;
}

FrostmanInstance load_frostman_instance(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open: " + file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_frostman_instance(buf.str());
}

std::string frostman_solution_json(const FrostmanSolution& solution,
                                   const FrostmanReport& report, int arity) {
  json j;
  j["total_mass"] = solution.total_mass;
  json masses = json::array();
  for (const auto& [leaf, m] : solution.leaf_masses)
    masses.push_back({{"leaf", leaf}, {"mass", m}});
  j["leaf_masses"] = std::move(masses);
  json cut = json::array();
  for (const auto& node : solution.certificate)
    cut.push_back({{"level", node.level},
                   {"index", node.index},
                   {"path", node.path(arity)}});
  j["certificate"] = std::move(cut);
  j["cover_weight"] = report.cover_weight;
  j["feasible"] = report.feasible;
  j["optimal"] = report.optimal;
  j["violations"] = report.violations;
  return j.dump(2) + "\n";
}

void write_frostman_solution(const std::string& file,
                             const FrostmanSolution& solution,
                             const FrostmanReport& report, int arity) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open for writing: " + file);
  out << frostman_solution_json(solution, report, arity);
  if (!out) throw IoError("write failed: " + file);
}

}  // namespace ordlab
