#include "sta/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sta {

StepTable::StepTable(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("step table needs at least one breakpoint");
  if (points_.front().load != 0) throw ValidationError("step table must start at load 0");
  for (size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].cost)) throw ValidationError("step table cost must be finite");
    if (i > 0 && points_[i].load <= points_[i - 1].load)
      throw ValidationError("step table thresholds must be strictly increasing");
  }
}

Cost StepTable::cost(std::int64_t load) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), load,
                             [](std::int64_t l, const Point& p) { return l < p.load; });
  return std::prev(it)->cost;
}

bool StepTable::non_increasing() const {
  for (size_t i = 1; i < points_.size(); ++i)
    if (points_[i].cost > points_[i - 1].cost) return false;
  return true;
}

Cost StepTable::min_cost() const {
  Cost m = std::numeric_limits<Cost>::infinity();
  for (const Point& p : points_) m = std::min(m, p.cost);
  return m;
}

CostModel CostModel::selfish_share(double r, const RoadNetwork& network) {
  if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("selfishness r must lie in [0,1]");
  CostModel m;
  m.is_selfish_share_ = true;
  m.r_ = r;
  m.d_.reserve(static_cast<size_t>(network.num_edges()));
  for (const Edge& e : network.edges()) m.d_.push_back(static_cast<double>(e.d_ms));
  return m;
}

CostModel CostModel::step_tables(std::vector<StepTable> tables, Synergy synergy) {
  if (synergy == Synergy::required) {
    for (size_t e = 0; e < tables.size(); ++e)
      if (!tables[e].non_increasing())
        throw ValidationError("edge " + std::to_string(e) +
                              ": cost table increases with load (not synergistic)");
  }
  CostModel m;
  m.is_selfish_share_ = false;
  m.tables_ = std::move(tables);
  return m;
}

bool CostModel::synergistic() const {
  if (is_selfish_share_) return true;  // d/(l+1) is non-increasing in l
  return std::all_of(tables_.begin(), tables_.end(),
                     [](const StepTable& t) { return t.non_increasing(); });
}

Cost CostModel::min_cost() const {
  Cost m = std::numeric_limits<Cost>::infinity();
  if (is_selfish_share_) {
    for (double d : d_) m = std::min(m, r_ * d);  // limit of c^r as load grows
    return d_.empty() ? 0.0 : m;
  }
  for (const StepTable& t : tables_) m = std::min(m, t.min_cost());
  return tables_.empty() ? 0.0 : m;
}

}  // namespace sta
