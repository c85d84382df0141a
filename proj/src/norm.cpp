#include "shiftlab/norm.hpp"

#include <algorithm>
#include <set>

namespace shiftlab {

std::string to_string(TailBehavior b) {
  switch (b) {
    case TailBehavior::Constant: return "constant";
    case TailBehavior::Increasing: return "increasing";
    case TailBehavior::Decreasing: return "decreasing";
    case TailBehavior::HorizonScan: return "horizon_scan";
  }
  return "?";
}

std::string to_string(LimitOutcome o) {
  switch (o) {
    case LimitOutcome::DecreasingApproach: return "decreasing_approach";
    case LimitOutcome::LargerWeightExists: return "larger_weight_exists";
    case LimitOutcome::NotNormAttaining: return "not_norm_attaining";
    case LimitOutcome::MixedLimits: return "mixed_limits";
    case LimitOutcome::WeightEqualsLimit: return "weight_equals_limit";
    case LimitOutcome::Falsified: return "FALSIFIED";
  }
  return "?";
}

bool contradicts_dichotomy(LimitOutcome o) {
  return o == LimitOutcome::WeightEqualsLimit || o == LimitOutcome::Falsified;
}

std::int64_t pure_tail_start(const RaySpec& ray) { return static_cast<std::int64_t>(ray.prefix.size()) + 1; }

std::vector<VertexId> influence_zone(const ValidatedTree& tree, int window) {
  auto zone = tree.core_vertices();
  for (const auto& ray : tree.rays()) {
    const auto last = pure_tail_start(ray) + window;
    for (std::int64_t k = 1; k <= last; ++k) zone.push_back(VertexId::ray(ray.id, k));
  }
  std::sort(zone.begin(), zone.end());
  return zone;
}

Rational RawFraction::reduced() const {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

SquaredWeightWindow::SquaredWeightWindow(const ValidatedTree& tree, const RaySpec& ray, std::int64_t start,
                                         int window)
    : tree_(tree), ray_(ray), index_(start) {
  for (std::int64_t k = start; k <= start + window; ++k) {
    const RawFraction w(tree_.ray_weight(ray_, k));
    values_.push_back(w * w);
  }
}

void SquaredWeightWindow::advance() {
  const RawFraction w(tree_.ray_weight(ray_, index_ + static_cast<std::int64_t>(values_.size())));
  values_.pop_front();
  values_.push_back(w * w);
  ++index_;
}

SupResult supremum(const ValidatedTree& tree, const VertexQuantity& q, std::int64_t horizon) {
  struct Candidate {
    VertexId vertex;
    Rational value;
  };
  std::vector<Candidate> seen;
  for (const auto& v : influence_zone(tree, q.window)) seen.push_back({v, q.at(v)});

  SupResult result;
  std::vector<Rational> strict_limits;
  for (const auto& ray : tree.rays()) {
    TailEvidence ev;
    ev.ray_id = ray.id;
    ev.first_index = pure_tail_start(ray);
    ev.limit = q.at_limit(ray.tail.limit());
    const auto dir = ray.tail.direction();
    if (dir == TailDirection::Constant) {
      ev.behavior = TailBehavior::Constant;
    } else if (q.monotone_in_weights) {
      ev.behavior = dir == TailDirection::Increasing ? TailBehavior::Increasing : TailBehavior::Decreasing;
      if (dir == TailDirection::Increasing) strict_limits.push_back(ev.limit);
    } else {
      ev.behavior = TailBehavior::HorizonScan;
      const auto zone_end = ev.first_index + q.window;
      ev.horizon = std::max(horizon, zone_end);
      std::optional<Candidate> best;
      if (q.on_chain && zone_end < ev.horizon) {
        std::optional<std::pair<std::int64_t, RawFraction>> raw_best;
        SquaredWeightWindow chain(tree, ray, zone_end + 1, q.window);
        for (auto k = zone_end + 1; k <= ev.horizon; ++k, chain.advance()) {
          auto value = q.on_chain(chain.values());
          if (!raw_best || compare(value, raw_best->second) > 0) raw_best.emplace(k, std::move(value));
        }
        best = Candidate{VertexId::ray(ray.id, raw_best->first), raw_best->second.reduced()};
      } else {
        for (auto k = zone_end + 1; k <= ev.horizon; ++k) {
          auto v = VertexId::ray(ray.id, k);
          Rational value = q.at(v);
          if (!best || value > best->value) best = Candidate{std::move(v), std::move(value)};
        }
      }
      if (best) seen.push_back(std::move(*best));
      strict_limits.push_back(ev.limit);
    }
    result.tail_evidence.push_back(std::move(ev));
  }

  Rational best_seen = seen.front().value;
  for (const auto& c : seen) best_seen = std::max(best_seen, c.value);
  Rational sup = best_seen;
  for (const auto& l : strict_limits) sup = std::max(sup, l);

  result.value_sq = sup;
  result.attained = best_seen == sup;
  if (result.attained) {
    for (const auto& c : seen) {
      if (c.value == sup && (!result.witness || c.vertex < *result.witness)) result.witness = c.vertex;
    }
  }
  return result;
}

namespace {

VertexQuantity power_quantity(const ValidatedTree& tree, int n) {
  VertexQuantity q;
  q.at = [&tree, n](const VertexId& v) { return local_norm_sq(tree, v, n); };
  q.at_limit = [n](const Rational& l) { return pow(l, 2UL * static_cast<unsigned long>(n)); };
  q.window = n;
  q.monotone_in_weights = true;
  return q;
}

std::vector<VertexId> attaining_vertices(const ValidatedTree& tree, const SupResult& sup, int n) {
  std::vector<VertexId> out;
  if (!sup.attained) return out;
  for (const auto& v : influence_zone(tree, n)) {
    if (v.is_ray() && v.index() > pure_tail_start(tree.ray(v.name()))) continue;
    if (local_norm_sq(tree, v, n) == sup.value_sq) out.push_back(v);
  }
  return out;
}

}  // namespace

SupResult operator_norm_sq(const ValidatedTree& tree, int n) {
  if (n < 1) throw std::invalid_argument("operator_norm_sq: power must be >= 1");
  return supremum(tree, power_quantity(tree, n));
}

AttainmentReport norm_attainment(const ValidatedTree& tree) {
  AttainmentReport report;
  report.power = 1;
  report.norm_sq_of_power = operator_norm_sq(tree, 1);
  report.norm_sq = report.norm_sq_of_power.value_sq;
  report.attaining_vertices = attaining_vertices(tree, report.norm_sq_of_power, 1);
  report.corollary_checks.push_back(
      {"norm_attained_at_basis_vector", report.norm_sq_of_power.attained, report.norm_sq_of_power.witness});
  if (report.norm_sq_of_power.attained) {
    const auto& u = *report.norm_sq_of_power.witness;
    FinVector s;
    for (const auto& v : tree.children(u)) s.add(v, *tree.weight(v));
    report.adjoint_witness = s.empty() ? FinVector::basis(u) : s;
  }
  return report;
}

AttainmentReport power_attainment(const ValidatedTree& tree, int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("power_attainment: n must be 2 or 3");
  AttainmentReport report;
  report.power = n;
  report.norm_sq_of_power = operator_norm_sq(tree, n);
  report.norm_sq = operator_norm_sq(tree, 1).value_sq;
  report.attaining_vertices = attaining_vertices(tree, report.norm_sq_of_power, n);

  const bool multiplicative =
      report.norm_sq_of_power.value_sq == pow(report.norm_sq, static_cast<unsigned long>(n));
  report.corollary_checks.push_back({"power_norm_multiplicative", multiplicative, std::nullopt});
  // ‖S^n e_v‖² <= ‖S^n‖² <= ‖S‖^{2n}: a vertex reaching ‖S‖^{2n} exists iff
  // both inequalities are tight and the first is attained.
  const bool local = multiplicative && report.norm_sq_of_power.attained;
  report.corollary_checks.push_back({n == 2 ? "local_square_equals_norm_pow4" : "local_cube_equals_norm_pow6", local,
                                     local ? report.norm_sq_of_power.witness : std::nullopt});
  return report;
}

std::vector<RayLimitClass> weight_limit_classify(const ValidatedTree& tree) {
  const bool attained = operator_norm_sq(tree, 1).attained;
  std::set<Rational> limits;
  for (const auto& ray : tree.rays()) limits.insert(ray.tail.limit());

  // Every weight up to the first tail index; tails beyond are monotone.
  std::vector<std::pair<VertexId, Rational>> explicit_weights;
  for (const auto& v : influence_zone(tree, 0)) {
    if (const auto w = tree.weight(v)) explicit_weights.emplace_back(v, *w);
  }

  auto equal_weight = [&](const Rational& lambda) -> std::optional<VertexId> {
    // Tails past the zone stay strictly on one side of their limit.
    for (const auto& [v, w] : explicit_weights) {
      if (w == lambda) return v;
    }
    return std::nullopt;
  };
  auto larger_weight = [&](const Rational& lambda) -> std::optional<VertexId> {
    for (const auto& [v, w] : explicit_weights) {
      if (w > lambda) return v;
    }
    for (const auto& ray : tree.rays()) {
      if (ray.tail.direction() != TailDirection::Increasing || ray.tail.limit() <= lambda) continue;
      // Converges to a limit above lambda, so some index crosses it.
      for (auto k = pure_tail_start(ray);; ++k) {
        if (ray.tail.value(k) > lambda) return VertexId::ray(ray.id, k);
      }
    }
    return std::nullopt;
  };

  std::vector<RayLimitClass> out;
  for (const auto& ray : tree.rays()) {
    RayLimitClass c;
    c.ray_id = ray.id;
    c.limit = ray.tail.limit();
    c.direction = ray.tail.direction();
    if (c.direction != TailDirection::Increasing) {
      c.outcome = LimitOutcome::DecreasingApproach;
    } else if ((c.larger_weight_at = larger_weight(c.limit))) {
      c.outcome = LimitOutcome::LargerWeightExists;
    } else if (!attained) {
      c.outcome = LimitOutcome::NotNormAttaining;
    } else if (limits.size() > 1) {
      c.outcome = LimitOutcome::MixedLimits;
    } else if ((c.larger_weight_at = equal_weight(c.limit))) {
      c.outcome = LimitOutcome::WeightEqualsLimit;
    } else {
      c.outcome = LimitOutcome::Falsified;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace shiftlab
