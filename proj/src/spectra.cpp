#include "shiftlab/spectra.hpp"

#include "shiftlab/norm.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace shiftlab {

std::string to_string(Approach a) { return a == Approach::FromBelow ? "from_below" : "from_above"; }

std::string ParameterSequence::describe() const {
  return "paired_rotation(t_j = " + to_string(slope) + "*j + " + to_string(offset) + ")";
}

namespace {

/// True when some tail index j >= first takes the value x.
bool family_takes(const RaySpec& ray, std::int64_t first, const Rational& x) {
  const auto& tail = ray.tail;
  const auto lo = tail.value(first);
  const auto lim = tail.limit();
  if (tail.direction() == TailDirection::Increasing ? (x < lo || x >= lim) : (x > lo || x <= lim)) return false;
  if (const auto* a = std::get_if<AffineReciprocalTail>(&tail.rule())) {
    // L - c/(j - s) = x  <=>  j = s + c/(L - x)
    const Rational j = a->shift + a->c / (a->limit - x);
    return j.get_den() == 1 && j >= first;
  }
  // Geometric: strictly monotone, so walk until the terms pass x.
  for (auto j = first;; ++j) {
    const auto v = tail.value(j);
    if (v == x) return true;
    if (tail.direction() == TailDirection::Increasing ? v > x : v < x) return false;
  }
}

}  // namespace

SpectrumReport diag_spectrum(const ValidatedTree& tree) {
  SpectrumReport report;

  // value -> count; empty optional marks INFINITE multiplicity.
  std::map<Rational, std::optional<std::int64_t>> explicit_values;
  auto add_value = [&](const Rational& x) {
    auto [it, inserted] = explicit_values.try_emplace(x, 0);
    if (it->second) ++*it->second;
  };
  for (const auto& v : tree.core_vertices()) {
    if (const auto w = tree.weight(v)) add_value(*w);
  }
  std::set<Rational> infinite_values;
  for (const auto& ray : tree.rays()) {
    for (const auto& w : ray.prefix) add_value(w);
    const auto first = pure_tail_start(ray);
    const auto dir = ray.tail.direction();
    if (dir == TailDirection::Constant) {
      infinite_values.insert(ray.tail.limit());
    } else {
      report.families.push_back({ray.id, first, ray.tail.value(first), ray.tail.limit(), dir});
      report.accumulation_points.push_back(
          {ray.tail.limit(), dir == TailDirection::Increasing ? Approach::FromBelow : Approach::FromAbove, ray.id});
    }
  }
  for (const auto& x : infinite_values) explicit_values[x] = std::nullopt;
  for (auto& [x, mult] : explicit_values) {
    if (!mult) continue;
    for (const auto& fam : report.families) {
      if (family_takes(tree.ray(fam.ray_id), fam.first_index, x)) ++*mult;
    }
  }
  for (const auto& [x, mult] : explicit_values) report.eigenvalues.push_back({x, mult});

  std::sort(report.accumulation_points.begin(), report.accumulation_points.end(),
            [](const AccumulationPoint& p, const AccumulationPoint& q) {
              return p.value != q.value ? p.value < q.value : p.ray_id < q.ray_id;
            });

  std::set<Rational> ess(infinite_values.begin(), infinite_values.end());
  for (const auto& p : report.accumulation_points) ess.insert(p.value);
  report.sigma_ess.assign(ess.begin(), ess.end());
  if (!report.sigma_ess.empty()) report.m_e = report.sigma_ess.front();

  // Infimum: explicit values and increasing families are attained at their
  // smallest term; decreasing families only approach their limit.
  std::optional<Rational> best;
  bool best_attained = false;
  auto consider = [&](const Rational& x, bool attained) {
    if (!best || x < *best) {
      best = x;
      best_attained = attained;
    } else if (x == *best) {
      best_attained = best_attained || attained;
    }
  };
  for (const auto& e : report.eigenvalues) consider(e.value, true);
  for (const auto& fam : report.families) {
    if (fam.direction == TailDirection::Increasing) {
      consider(fam.first_value, true);
    } else {
      consider(fam.limit, false);
    }
  }
  report.m = best;
  report.m_attained = best && best_attained;

  VertexQuantity q;
  q.at = [&tree](const VertexId& v) {
    const auto w = tree.weight(v);
    return w ? *w : Rational(0);
  };
  q.at_limit = [](const Rational& l) { return l; };
  q.window = 0;
  q.monotone_in_weights = true;
  const auto sup = supremum(tree, q);
  report.norm = sup.value_sq;
  report.norm_attained = sup.attained;
  return report;
}

ProbeReport an_restriction_probe(const ValidatedTree& tree, const ParameterSequence& t, std::int64_t verify_terms) {
  std::vector<const RaySpec*> constant_rays;
  for (const auto& ray : tree.rays()) {
    if (ray.tail.direction() == TailDirection::Constant) constant_rays.push_back(&ray);
  }
  if (constant_rays.size() < 2) {
    throw ProbeError("FamilyInapplicable: the probe needs at least two constant rays");
  }
  if (t.slope < 0 || t.at(1) <= 0) throw std::invalid_argument("t_j must be positive for every j >= 1");

  const RaySpec* p = constant_rays[0];
  const RaySpec* q = constant_rays[1];
  if (q->tail.limit() < p->tail.limit()) std::swap(p, q);

  ProbeReport r;
  r.family = t.describe();
  r.ray_low = p->id;
  r.ray_high = q->id;
  r.a = p->tail.limit();
  r.b = q->tail.limit();
  const Rational a2 = r.a * r.a;
  const Rational b2 = r.b * r.b;
  auto value = [&](std::int64_t j) {
    const Rational tj = t.at(j);
    return Rational((a2 + b2 * tj * tj) / (1 + tj * tj));
  };
  for (std::int64_t j = 1; j <= 5; ++j) r.first_values.push_back(value(j));

  if (r.a == r.b || t.slope == 0) {
    // Every term equals the first one.
    r.restriction_sup_sq = value(1);
    r.attained = true;
    r.witness_j = 1;
    return r;
  }

  // t_j diverges, so the terms b² - (b² - a²)/(1 + t_j²) increase to b².
  r.restriction_sup_sq = b2;
  r.attained = false;
  r.strictly_increasing = true;
  r.below_limit = true;
  Rational prev = value(1);
  r.below_limit = prev < b2;
  for (std::int64_t j = 2; j <= verify_terms; ++j) {
    Rational cur = value(j);
    r.strictly_increasing = r.strictly_increasing && cur > prev;
    r.below_limit = r.below_limit && cur < b2;
    prev = std::move(cur);
  }
  r.verified_terms = verify_terms;
  return r;
}

}  // namespace shiftlab
