#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sta/graph.hpp"

namespace sta {

// Right-continuous step function of load: cost(l) is the cost of the
// largest breakpoint threshold <= l. The first threshold must be 0 so the
// function is defined for every load.
class StepTable {
 public:
  struct Point {
    std::int64_t load = 0;
    Cost cost = 0;
  };

  StepTable() : points_{{0, 0.0}} {}
  explicit StepTable(std::vector<Point> points);

  static StepTable constant(Cost c) { return StepTable({{0, c}}); }
  // Cost `high` below load `threshold`, `low` from `threshold` on.
  static StepTable drop(Cost high, std::int64_t threshold, Cost low) {
    return StepTable({{0, high}, {threshold, low}});
  }

  Cost cost(std::int64_t load) const;
  bool non_increasing() const;
  Cost min_cost() const;
  const std::vector<Point>& points() const { return points_; }

  friend bool operator==(const StepTable&, const StepTable&) = default;

 private:
  std::vector<Point> points_;
};

// Per-edge non-increasing load -> cost function. Either one StepTable per
// edge or the parametric selfish-share family
//   c_e^r(l) = r*d(e) + (1-r)*d(e)/(l+1)
// with a single selfishness parameter r in [0,1].
class CostModel {
 public:
  enum class Synergy { required, allow_avoidant };

  CostModel() = default;  // empty step-table model
  static CostModel selfish_share(double r, const RoadNetwork& network);
  static CostModel step_tables(std::vector<StepTable> tables, Synergy synergy = Synergy::required);

  Cost cost(EdgeId e, std::int64_t load) const {
    if (is_selfish_share_)
      return r_ * d_[static_cast<size_t>(e)] +
             (1.0 - r_) * d_[static_cast<size_t>(e)] / static_cast<double>(load + 1);
    return tables_[static_cast<size_t>(e)].cost(load);
  }

  EdgeId num_edges() const {
    return static_cast<EdgeId>(is_selfish_share_ ? d_.size() : tables_.size());
  }
  bool is_selfish_share() const { return is_selfish_share_; }
  double selfishness() const { return r_; }
  const StepTable& table(EdgeId e) const { return tables_[static_cast<size_t>(e)]; }
  const std::vector<StepTable>& tables() const { return tables_; }

  bool synergistic() const;
  // Smallest cost any edge can ever take; >= 0 is required for routing.
  Cost min_cost() const;

 private:
  bool is_selfish_share_ = false;
  double r_ = 1.0;
  std::vector<double> d_;
  std::vector<StepTable> tables_;
};

// A complete game: where agents travel, and what edges cost under load.
struct GameInstance;

}  // namespace sta
