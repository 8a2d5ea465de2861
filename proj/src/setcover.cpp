#include "cooproute/setcover.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "cooproute/errors.hpp"

namespace cooproute {

using Bits = boost::dynamic_bitset<std::uint64_t>;

CoverInstance build_cover_instance(const Scenario& scenario,
                                   const TravelMatrix& matrix) {
  CoverInstance inst;
  inst.depot = kDepot;
  inst.radius = coverage_radius(scenario.uav);
  if (!(inst.radius > 0.0)) throw InvalidArgument("coverage radius must be positive");
  inst.candidates.push_back(kDepot);
  for (const Point& p : scenario.points) {
    inst.candidates.push_back(p.id);
    inst.targets.push_back(p.id);
  }
  for (PointId c : inst.candidates) {
    std::vector<PointId> covered;
    for (PointId t : inst.targets) {
      if (matrix.distance(c, t) < inst.radius) covered.push_back(t);
    }
    inst.cover_sets.push_back(std::move(covered));
  }
  check_feasible(inst);
  return inst;
}

void check_feasible(const CoverInstance& inst) {
  std::vector<PointId> missing;
  for (PointId t : inst.targets) {
    bool hit = false;
    for (const auto& set : inst.cover_sets) {
      if (std::find(set.begin(), set.end(), t) != set.end()) {
        hit = true;
        break;
      }
    }
    if (!hit) missing.push_back(t);
  }
  if (!missing.empty()) throw Uncoverable(std::move(missing));
}

namespace {

// Bitset view of an instance: targets and non-depot candidates by index.
struct Indexed {
  std::vector<PointId> targets;
  std::vector<PointId> candidates;          // non-depot, ascending id
  std::vector<Bits> covers;                 // per candidate, over targets
  std::vector<Bits> coverers;               // per target, over candidates
  Bits depot_cover;
  std::map<PointId, std::size_t> target_index;

  explicit Indexed(const CoverInstance& inst) : targets(inst.targets) {
    std::sort(targets.begin(), targets.end());
    for (std::size_t i = 0; i < targets.size(); ++i) target_index[targets[i]] = i;

    std::vector<std::size_t> order(inst.candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return inst.candidates[a] < inst.candidates[b];
    });
    depot_cover = Bits(targets.size());
    for (std::size_t k : order) {
      Bits bits(targets.size());
      for (PointId t : inst.cover_sets.at(k)) {
        auto it = target_index.find(t);
        if (it != target_index.end()) bits.set(it->second);
      }
      if (inst.candidates[k] == inst.depot) {
        depot_cover |= bits;
      } else {
        candidates.push_back(inst.candidates[k]);
        covers.push_back(std::move(bits));
      }
    }
    coverers.assign(targets.size(), Bits(candidates.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      for (auto t = covers[c].find_first(); t != Bits::npos; t = covers[c].find_next(t)) {
        coverers[t].set(c);
      }
    }
  }
};

RefuelPlan make_plan(const CoverInstance& inst, std::vector<PointId> stops) {
  RefuelPlan plan;
  plan.stops = std::move(stops);
  for (PointId t : inst.targets) {
    for (PointId s : plan.stops) {
      auto k = static_cast<std::size_t>(
          std::find(inst.candidates.begin(), inst.candidates.end(), s) -
          inst.candidates.begin());
      if (k == inst.candidates.size()) continue;
      const auto& set = inst.cover_sets[k];
      if (std::find(set.begin(), set.end(), t) != set.end()) {
        plan.assignment[t] = s;
        break;
      }
    }
  }
  return plan;
}

constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max() / 4;

class CoverSearch {
 public:
  CoverSearch(const Indexed& idx, std::size_t node_limit)
      : idx_(idx), node_limit_(node_limit) {}

  // Smallest cover size strictly below `upper`, or `upper` if none.
  std::size_t minimise(const Bits& uncovered, std::size_t upper) {
    mode_ = Mode::Minimise;
    best_ = upper;
    best_stops_.clear();
    chosen_.clear();
    Bits allowed(idx_.candidates.size());
    allowed.set();
    recurse(uncovered, allowed);
    return best_;
  }

  // All covers of exactly `size`, up to `cap`.
  std::vector<std::vector<std::size_t>> enumerate(const Bits& uncovered,
                                                  std::size_t size, std::size_t cap) {
    mode_ = Mode::Enumerate;
    best_ = size;
    cap_ = cap;
    found_.clear();
    chosen_.clear();
    Bits allowed(idx_.candidates.size());
    allowed.set();
    recurse(uncovered, allowed);
    return found_;
  }

  const std::vector<std::size_t>& best_stops() const { return best_stops_; }
  bool exhausted() const { return nodes_ >= node_limit_; }
  std::size_t nodes() const { return nodes_; }

 private:
  enum class Mode { Minimise, Enumerate };

  // Disjoint-coverer packing: targets whose remaining coverers are pairwise
  // disjoint each need their own stop.
  std::size_t lower_bound(const Bits& uncovered, const Bits& allowed,
                          std::size_t& branch_target) const {
    std::vector<std::pair<std::size_t, std::size_t>> by_options;
    for (auto t = uncovered.find_first(); t != Bits::npos; t = uncovered.find_next(t)) {
      const std::size_t options = (idx_.coverers[t] & allowed).count();
      if (options == 0) return kInfinite;
      by_options.emplace_back(options, t);
    }
    if (by_options.empty()) return 0;
    std::sort(by_options.begin(), by_options.end());
    branch_target = by_options.front().second;
    Bits used(idx_.candidates.size());
    std::size_t bound = 0;
    for (const auto& [options, t] : by_options) {
      Bits mine = idx_.coverers[t] & allowed;
      if (!mine.intersects(used)) {
        ++bound;
        used |= mine;
      }
    }
    return bound;
  }

  bool stop() const {
    return nodes_ >= node_limit_ || (mode_ == Mode::Enumerate && found_.size() >= cap_);
  }

  void recurse(const Bits& uncovered, Bits allowed) {
    if (stop()) return;
    ++nodes_;
    const std::size_t depth = chosen_.size();
    if (uncovered.none()) {
      if (mode_ == Mode::Minimise) {
        if (depth < best_) {
          best_ = depth;
          best_stops_ = chosen_;
        }
      } else if (depth == best_) {
        found_.push_back(chosen_);
      }
      return;
    }
    std::size_t target = 0;
    const std::size_t lb = lower_bound(uncovered, allowed, target);
    if (lb >= kInfinite) return;
    if (mode_ == Mode::Minimise ? depth + lb >= best_ : depth + lb > best_) return;

    // Branch on the most constrained target; earlier siblings are excluded
    // from later branches so each cover is generated once.
    Bits options = idx_.coverers[target] & allowed;
    std::vector<std::pair<std::size_t, std::size_t>> children;
    for (auto c = options.find_first(); c != Bits::npos; c = options.find_next(c)) {
      const std::size_t gain = (idx_.covers[c] & uncovered).count();
      children.emplace_back(gain, c);
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [gain, c] : children) {
      if (stop()) return;
      allowed.reset(c);
      chosen_.push_back(c);
      recurse(uncovered - idx_.covers[c], allowed);
      chosen_.pop_back();
    }
  }

  const Indexed& idx_;
  std::size_t node_limit_;
  std::size_t nodes_ = 0;
  Mode mode_ = Mode::Minimise;
  std::size_t best_ = 0;
  std::size_t cap_ = 0;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_stops_;
  std::vector<std::vector<std::size_t>> found_;
};

}  // namespace

RefuelPlan greedy_cover(const CoverInstance& inst) {
  check_feasible(inst);
  const Indexed idx(inst);
  RefuelPlan plan;
  plan.stops.push_back(inst.depot);
  Bits uncovered(idx.targets.size());
  uncovered.set();
  for (auto t = idx.depot_cover.find_first(); t != Bits::npos;
       t = idx.depot_cover.find_next(t)) {
    plan.assignment[idx.targets[t]] = inst.depot;
  }
  uncovered -= idx.depot_cover;
  std::vector<bool> used(idx.candidates.size(), false);
  while (uncovered.any()) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t c = 0; c < idx.candidates.size(); ++c) {
      if (used[c]) continue;
      const std::size_t gain = (idx.covers[c] & uncovered).count();
      if (gain > best_gain) {  // strict: ties keep the lowest id
        best_gain = gain;
        best = c;
      }
    }
    used[best] = true;
    plan.stops.push_back(idx.candidates[best]);
    const Bits newly = idx.covers[best] & uncovered;
    for (auto t = newly.find_first(); t != Bits::npos; t = newly.find_next(t)) {
      plan.assignment[idx.targets[t]] = idx.candidates[best];
    }
    uncovered -= newly;
  }
  return plan;
}

ExactCoverResult exact_min_covers(const CoverInstance& inst,
                                  const ExactCoverOptions& options) {
  if (inst.candidates.size() > kMaxExactCandidates) {
    throw SizeLimitExceeded("exact cover supports at most " +
                            std::to_string(kMaxExactCandidates) + " candidates");
  }
  if (options.max_solutions == 0) throw InvalidArgument("max_solutions must be positive");
  const RefuelPlan greedy = greedy_cover(inst);
  const Indexed idx(inst);

  Bits uncovered(idx.targets.size());
  uncovered.set();
  uncovered -= idx.depot_cover;

  auto to_stops = [&](const std::vector<std::size_t>& chosen) {
    std::vector<PointId> stops;
    for (std::size_t c : chosen) stops.push_back(idx.candidates[c]);
    std::sort(stops.begin(), stops.end());
    stops.insert(stops.begin(), inst.depot);
    return stops;
  };

  std::vector<PointId> greedy_stops(greedy.stops.begin() + 1, greedy.stops.end());
  std::sort(greedy_stops.begin(), greedy_stops.end());
  greedy_stops.insert(greedy_stops.begin(), inst.depot);

  ExactCoverResult result;
  CoverSearch search(idx, options.node_limit);
  const std::size_t best_k = search.minimise(uncovered, greedy.cardinality());
  if (search.exhausted()) {
    result.incomplete = true;
    result.nodes = search.nodes();
    result.plans.push_back(make_plan(inst, best_k < greedy.cardinality()
                                               ? to_stops(search.best_stops())
                                               : greedy_stops));
    return result;
  }

  const auto covers = search.enumerate(uncovered, best_k, options.max_solutions);
  result.incomplete = search.exhausted();
  result.nodes = search.nodes();
  for (const auto& chosen : covers) result.plans.push_back(make_plan(inst, to_stops(chosen)));
  if (result.plans.empty()) {
    // Only reachable when the node limit cut enumeration short.
    result.plans.push_back(make_plan(inst, greedy_stops));
  }
  std::sort(result.plans.begin(), result.plans.end(),
            [](const RefuelPlan& a, const RefuelPlan& b) { return a.stops < b.stops; });
  return result;
}

bool plan_is_valid(const RefuelPlan& plan, const CoverInstance& inst) {
  if (plan.stops.empty() || plan.stops.front() != inst.depot) return false;
  for (PointId s : plan.stops) {
    if (std::find(inst.candidates.begin(), inst.candidates.end(), s) == inst.candidates.end()) {
      return false;
    }
  }
  for (PointId t : inst.targets) {
    auto it = plan.assignment.find(t);
    if (it == plan.assignment.end()) return false;
    if (std::find(plan.stops.begin(), plan.stops.end(), it->second) == plan.stops.end()) {
      return false;
    }
    auto k = static_cast<std::size_t>(
        std::find(inst.candidates.begin(), inst.candidates.end(), it->second) -
        inst.candidates.begin());
    const auto& set = inst.cover_sets[k];
    if (std::find(set.begin(), set.end(), t) == set.end()) return false;
  }
  return true;
}

}  // namespace cooproute
