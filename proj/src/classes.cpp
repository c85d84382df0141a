#include "shiftlab/classes.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace shiftlab {

std::string to_string(Verdict v) { return v == Verdict::PassAll ? "PASS_ALL" : "FAIL"; }

std::string to_string(TailStatus s) {
  return s == TailStatus::ClosedFormVerified ? "closed_form_verified" : "verified_to_horizon_plus_limit";
}

std::string to_string(InequalityKind k) {
  switch (k) {
    case InequalityKind::StarParanormalThm: return "star_paranormal_thm";
    case InequalityKind::StarParanormalDef: return "star_paranormal_def";
    case InequalityKind::QuasiDef: return "quasi_def";
    case InequalityKind::QuasiThm: return "quasi_thm";
  }
  return "?";
}

std::string to_string(Direction d) { return d == Direction::Forward ? "forward" : "adjoint"; }

InequalityKind parse_inequality_kind(const std::string& name) {
  for (auto k : {InequalityKind::StarParanormalThm, InequalityKind::StarParanormalDef, InequalityKind::QuasiDef,
                 InequalityKind::QuasiThm}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown inequality kind: " + name);
}

std::string to_string(BoundMode m) {
  switch (m) {
    case BoundMode::StarParanormal: return "star_paranormal";
    case BoundMode::QuasiFirst: return "quasi_first";
    case BoundMode::QuasiSecond: return "quasi_second";
  }
  return "?";
}

LocalQuantities local_quantities(const ValidatedTree& tree, const VertexId& v) {
  LocalQuantities q;
  const auto w = tree.weight(v);
  q.adjoint_sq = w ? Rational(*w * *w) : Rational(0);
  q.shift_sq = local_norm_sq(tree, v, 1);
  q.shift2_sq = local_norm_sq(tree, v, 2);
  q.shift3_sq = local_norm_sq(tree, v, 3);
  return q;
}

namespace {

/// lhs(v) <= rhs(v) at every vertex, both sides polynomial in the weights
/// within `window` of v.
struct VertexCriterion {
  std::string class_name;
  std::string scope;
  int window = 1;
  std::function<std::pair<Rational, Rational>(const ValidatedTree&, const VertexId&)> sides;
  std::function<std::pair<Rational, Rational>(const Rational&)> sides_at_limit;
  /// Both sides at a ray vertex from λ_k², ..., λ_{k+window}².
  /// Any pair ordered like the true sides; witnesses are recomputed with `sides`.
  std::function<std::pair<RawFraction, RawFraction>(const std::deque<RawFraction>&)> sides_on_chain;
};

ClassReport run_criterion(const ValidatedTree& tree, const VertexCriterion& c, std::int64_t horizon) {
  ClassReport report;
  report.class_name = c.class_name;
  report.scope = c.scope;

  for (const auto& v : influence_zone(tree, c.window)) {
    auto [lhs, rhs] = c.sides(tree, v);
    if (lhs > rhs) report.fail_witnesses.push_back({v, std::move(lhs), std::move(rhs)});
  }

  for (const auto& ray : tree.rays()) {
    RayTailStatus status;
    status.ray_id = ray.id;
    const auto [llhs, lrhs] = c.sides_at_limit(ray.tail.limit());
    status.limit_holds = llhs <= lrhs;
    if (ray.tail.direction() == TailDirection::Constant) {
      // Past the zone every vertex of the ray sees the same weights.
      status.status = TailStatus::ClosedFormVerified;
    } else {
      status.status = TailStatus::VerifiedToHorizonPlusLimit;
      const auto zone_end = pure_tail_start(ray) + c.window;
      status.horizon = std::max(horizon, zone_end);
      if (zone_end < status.horizon) {
        SquaredWeightWindow chain(tree, ray, zone_end + 1, c.window);
        for (auto k = zone_end + 1; k <= status.horizon; ++k, chain.advance()) {
          const auto [lhs, rhs] = c.sides_on_chain(chain.values());
          if (compare(lhs, rhs) > 0) {
            auto v = VertexId::ray(ray.id, k);
            auto [wl, wr] = c.sides(tree, v);
            report.fail_witnesses.push_back({std::move(v), std::move(wl), std::move(wr)});
            break;
          }
        }
      }
    }
    report.tail_status.push_back(std::move(status));
  }

  std::sort(report.fail_witnesses.begin(), report.fail_witnesses.end(),
            [](const FailWitness& a, const FailWitness& b) { return a.vertex < b.vertex; });
  const bool limits_ok = std::all_of(report.tail_status.begin(), report.tail_status.end(),
                                     [](const RayTailStatus& s) { return s.limit_holds; });
  report.verdict = report.fail_witnesses.empty() && limits_ok ? Verdict::PassAll : Verdict::Fail;
  return report;
}

}  // namespace

ClassReport hyponormal_basis_test(const ValidatedTree& tree, std::int64_t horizon) {
  VertexCriterion c;
  c.class_name = "hyponormal";
  c.scope = "necessary condition only";
  c.window = 1;
  c.sides = [](const ValidatedTree& t, const VertexId& v) {
    const auto w = t.weight(v);
    return std::pair<Rational, Rational>{w ? Rational(*w * *w) : Rational(0), local_norm_sq(t, v, 1)};
  };
  c.sides_at_limit = [](const Rational& l) {
    Rational sq = l * l;
    return std::pair<Rational, Rational>{sq, sq};
  };
  c.sides_on_chain = [](const std::deque<RawFraction>& sq) { return std::pair{sq[0], sq[1]}; };
  return run_criterion(tree, c, horizon);
}

ClassReport star_paranormal_vertex_test(const ValidatedTree& tree, std::int64_t horizon) {
  VertexCriterion c;
  c.class_name = "star_paranormal";
  c.scope = "necessary criterion";
  c.window = 2;
  c.sides = [](const ValidatedTree& t, const VertexId& v) {
    const auto w = t.weight(v);
    return std::pair<Rational, Rational>{w ? pow(*w, 4) : Rational(0), local_norm_sq(t, v, 2)};
  };
  c.sides_at_limit = [](const Rational& l) { return std::pair<Rational, Rational>{pow(l, 4), pow(l, 4)}; };
  c.sides_on_chain = [](const std::deque<RawFraction>& sq) { return std::pair{sq[0] * sq[0], sq[1] * sq[2]}; };
  return run_criterion(tree, c, horizon);
}

ClassReport quasi_star_vertex_test(const ValidatedTree& tree, std::int64_t horizon) {
  VertexCriterion c;
  c.class_name = "quasi_star_paranormal";
  c.scope = "definitive";
  c.window = 3;
  c.sides = [](const ValidatedTree& t, const VertexId& v) {
    return std::pair<Rational, Rational>{pow(local_norm_sq(t, v, 1), 3), local_norm_sq(t, v, 3)};
  };
  c.sides_at_limit = [](const Rational& l) { return std::pair<Rational, Rational>{pow(l, 6), pow(l, 6)}; };
  c.sides_on_chain = [](const std::deque<RawFraction>& sq) { return std::pair{sq[1] * sq[1], sq[2] * sq[3]}; };
  return run_criterion(tree, c, horizon);
}

Rational pencil_value(PencilKind kind, const Rational& a, const Rational& b, const Rational& k) {
  if (kind == PencilKind::StarParanormal) return b - 2 * k * a + k * k;
  return b - 2 * k * a * a + k * k * a;
}

bool discriminant_holds(PencilKind kind, const Rational& a, const Rational& b) {
  // Both quadratics are minimized over k > 0 at k = a.
  if (kind == PencilKind::StarParanormal) return a * a <= b;
  return a * a * a <= b;
}

std::vector<Rational> k_probe_grid(const Rational& a) {
  const Rational scale = a > 0 ? a : Rational(1);
  std::vector<Rational> grid;
  for (int i = -10; i <= 10; ++i) {
    const Rational p = pow(Rational(2), static_cast<unsigned long>(std::abs(i)));
    grid.push_back(i >= 0 ? Rational(scale * p) : Rational(scale / p));
  }
  return grid;
}

bool pencil_nonnegative_on_grid(PencilKind kind, const Rational& a, const Rational& b) {
  for (const auto& k : k_probe_grid(a)) {
    if (pencil_value(kind, a, b, k) < 0) return false;
  }
  return true;
}

namespace {

Word word_of(std::initializer_list<Letter> letters) { return Word(letters); }

/// Maps a letter of T to a letter of S: T = S forward, T = S* adjoint.
Word in_direction(const Word& w, Direction d) {
  if (d == Direction::Forward) return w;
  Word out;
  for (auto l : w) out.push_back(l == Letter::Shift ? Letter::Adjoint : Letter::Shift);
  return out;
}

Rational weighted_sum(const FinVector& f, const std::function<Rational(const VertexId&)>& weight) {
  Rational s = 0;
  for (const auto& [v, c] : f.coefficients()) s += weight(v) * c * c;
  return s;
}

}  // namespace

CheckResult functional_inequality_check(const ValidatedTree& tree, InequalityKind kind, const FinVector& f,
                                        Direction direction) {
  CheckResult r;
  r.name = to_string(kind);
  const auto T = Letter::Shift;
  const auto Tstar = Letter::Adjoint;
  switch (kind) {
    case InequalityKind::StarParanormalDef: {
      // ‖T*x‖² <= ‖T²x‖ ‖x‖
      const Rational a = apply_word(tree, in_direction(word_of({Tstar}), direction), f).norm_sq();
      r.lhs_sq = a * a;
      r.rhs_sq = apply_word(tree, in_direction(word_of({T, T}), direction), f).norm_sq() * f.norm_sq();
      break;
    }
    case InequalityKind::QuasiDef: {
      // ‖T*Tx‖² <= ‖T³x‖ ‖Tx‖
      const Rational a = apply_word(tree, in_direction(word_of({Tstar, T}), direction), f).norm_sq();
      r.lhs_sq = a * a;
      r.rhs_sq = apply_word(tree, in_direction(word_of({T, T, T}), direction), f).norm_sq() *
                 apply_word(tree, in_direction(word_of({T}), direction), f).norm_sq();
      break;
    }
    case InequalityKind::StarParanormalThm: {
      if (direction != Direction::Forward) throw std::invalid_argument("star_paranormal_thm is forward-only");
      const Rational a = apply_adjoint(tree, f).norm_sq();
      const Rational lhs = a * a;
      const Rational rhs =
          weighted_sum(f, [&](const VertexId& v) { return local_norm_sq(tree, v, 2); }) * f.norm_sq();
      r.lhs_sq = lhs * lhs;
      r.rhs_sq = rhs * rhs;
      break;
    }
    case InequalityKind::QuasiThm: {
      if (direction != Direction::Forward) throw std::invalid_argument("quasi_thm is forward-only");
      const Rational a = weighted_sum(f, [&](const VertexId& v) { return pow(local_norm_sq(tree, v, 1), 2); });
      const Rational lhs = a * a;
      const Rational rhs = weighted_sum(f, [&](const VertexId& v) { return local_norm_sq(tree, v, 3); }) *
                           weighted_sum(f, [&](const VertexId& v) { return local_norm_sq(tree, v, 1); });
      r.lhs_sq = lhs * lhs;
      r.rhs_sq = rhs * rhs;
      break;
    }
  }
  r.holds = r.lhs_sq <= r.rhs_sq;
  return r;
}

namespace {

// Uniform integer in [0, n) by rejection, so results do not depend on the
// standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

FinVector random_vector(std::mt19937_64& rng, const std::vector<VertexId>& pool) {
  FinVector f;
  const auto support = 1 + uniform_below(rng, std::min<std::uint64_t>(6, pool.size()));
  while (f.support_size() < support) {
    const auto& v = pool[uniform_below(rng, pool.size())];
    if (f.get(v) != 0) continue;
    auto num = static_cast<long>(uniform_below(rng, 6)) + 1;  // 1..6 -> -3..-1, 1..3
    if (num > 3) num = 3 - num;
    const auto den = static_cast<long>(uniform_below(rng, 3)) + 1;
    f.set(v, Rational(num, den));
  }
  return f;
}

FinVector shrink(const ValidatedTree& tree, InequalityKind kind, Direction direction, FinVector f) {
  bool changed = true;
  while (changed && f.support_size() > 1) {
    changed = false;
    std::vector<VertexId> keys;
    for (const auto& [v, c] : f.coefficients()) keys.push_back(v);
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
      FinVector g = f;
      g.set(*it, 0);
      if (g.empty()) continue;
      if (!functional_inequality_check(tree, kind, g, direction).holds) {
        f = std::move(g);
        changed = true;
        break;
      }
    }
  }
  return f;
}

}  // namespace

SweepResult random_functional_sweep(const ValidatedTree& tree, InequalityKind kind, Direction direction,
                                    std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("random_functional_sweep: trials must be >= 1");
  SweepResult result;
  result.kind = kind;
  result.direction = direction;

  const auto pool = influence_zone(tree, 4);
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto basis_count = static_cast<std::int64_t>(pool.size());
    FinVector f = t < basis_count ? FinVector::basis(pool[static_cast<std::size_t>(t)]) : random_vector(rng, pool);
    result.trials_run = t + 1;
    if (!functional_inequality_check(tree, kind, f, direction).holds) {
      result.passed = false;
      result.violation_trial = t;
      auto shrunk = shrink(tree, kind, direction, std::move(f));
      result.violation_check = functional_inequality_check(tree, kind, shrunk, direction);
      result.violation = std::move(shrunk);
      break;
    }
  }
  return result;
}

SupResult densely_defined_bound(const ValidatedTree& tree, BoundMode mode, std::int64_t horizon) {
  VertexQuantity q;
  switch (mode) {
    case BoundMode::StarParanormal:
      q.at = [&tree](const VertexId& v) {
        Rational s = 0;
        for (const auto& u : tree.children(v)) {
          const auto w = *tree.weight(u);
          s += w * w / (1 + local_norm_sq(tree, u, 2));
        }
        return s;
      };
      q.at_limit = [](const Rational& l) { return Rational(l * l / (1 + pow(l, 4))); };
      q.on_chain = [](const std::deque<RawFraction>& sq) {
        // Quotients shed large common factors, so reduce here.
        return RawFraction(Rational(sq[1].reduced() / (1 + sq[2].reduced() * sq[3].reduced())));
      };
      q.window = 3;
      q.monotone_in_weights = false;
      break;
    case BoundMode::QuasiFirst:
      q.at = [&tree](const VertexId& v) {
        const auto a = local_norm_sq(tree, v, 1);
        return Rational(a * a / (1 + a));
      };
      q.at_limit = [](const Rational& l) { return Rational(pow(l, 4) / (1 + l * l)); };
      q.window = 1;
      // x²/(1+x) increases with x = ‖Se_v‖², which increases with the weights.
      q.monotone_in_weights = true;
      break;
    case BoundMode::QuasiSecond:
      q.at = [&tree](const VertexId& v) {
        const auto a = local_norm_sq(tree, v, 1);
        return Rational(a * a / (1 + local_norm_sq(tree, v, 3)));
      };
      q.at_limit = [](const Rational& l) { return Rational(pow(l, 4) / (1 + pow(l, 6))); };
      q.on_chain = [](const std::deque<RawFraction>& sq) {
        const auto a = sq[1].reduced();
        return RawFraction(Rational(a * a / (1 + a * sq[2].reduced() * sq[3].reduced())));
      };
      q.window = 3;
      q.monotone_in_weights = false;
      break;
  }
  return supremum(tree, q, horizon);
}

HierarchyReport hierarchy_spot_check(const ValidatedTree& tree, std::int64_t horizon) {
  HierarchyReport report;
  report.hyponormal_basis_pass = hyponormal_basis_test(tree, horizon).verdict == Verdict::PassAll;
  auto hypo_at = [&tree](const VertexId& v) {
    const auto w = tree.weight(v);
    return (w ? Rational(*w * *w) : Rational(0)) <= local_norm_sq(tree, v, 1);
  };
  for (const auto& v : influence_zone(tree, 2)) {
    if (!hypo_at(v)) continue;
    const auto kids = tree.children(v);
    if (!std::all_of(kids.begin(), kids.end(), hypo_at)) continue;
    const auto w = tree.weight(v);
    const Rational lhs = w ? pow(*w, 4) : Rational(0);
    const Rational rhs = local_norm_sq(tree, v, 2);
    if (lhs > rhs) report.flagged.push_back({v, lhs, rhs});
  }
  return report;
}

}  // namespace shiftlab
