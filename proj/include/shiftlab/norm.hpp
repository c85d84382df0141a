#pragma once

#include "shiftlab/rational.hpp"
#include "shiftlab/tree.hpp"
#include "shiftlab/words.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

inline constexpr std::int64_t kDefaultHorizon = 10000;

enum class TailBehavior { Constant, Increasing, Decreasing, HorizonScan };

std::string to_string(TailBehavior b);

/// How a per-vertex quantity behaves along one ray once every weight it
/// reads comes from the tail rule.
struct TailEvidence {
  std::string ray_id;
  TailBehavior behavior = TailBehavior::Constant;
  std::int64_t first_index = 1;  // first ray index whose quantity is tail-only
  Rational limit;                // value of the quantity in the limit j -> inf
  std::int64_t horizon = 0;      // last index evaluated exactly (HorizonScan only)
};

/// Exact supremum of a per-vertex quantity over the whole (possibly infinite)
/// vertex set.
struct SupResult {
  Rational value_sq;
  bool attained = false;
  std::optional<VertexId> witness;
  std::vector<TailEvidence> tail_evidence;
};

/// Numerator/denominator pair (den > 0) kept unreduced. Long horizon scans
/// use it to skip the gcd work that canonical rationals do on every step.
struct RawFraction {
  mpz_class num = 0;
  mpz_class den = 1;

  RawFraction() = default;
  RawFraction(mpz_class n, mpz_class d) : num(std::move(n)), den(std::move(d)) {}
  explicit RawFraction(const Rational& r) : num(r.get_num()), den(r.get_den()) {}

  Rational reduced() const;
  RawFraction plus(long k) const { return {mpz_class(num + k * den), den}; }

  friend RawFraction operator*(const RawFraction& a, const RawFraction& b) {
    return {mpz_class(a.num * b.num), mpz_class(a.den * b.den)};
  }
  /// b must be positive.
  friend RawFraction operator/(const RawFraction& a, const RawFraction& b) {
    return {mpz_class(a.num * b.den), mpz_class(a.den * b.num)};
  }
  friend int compare(const RawFraction& a, const RawFraction& b) {
    return cmp(mpz_class(a.num * b.den), mpz_class(b.num * a.den));
  }
};

/// A non-negative per-vertex quantity together with what the sup engine needs
/// to handle infinite rays exactly.
struct VertexQuantity {
  std::function<Rational(const VertexId&)> at;
  /// Value of the quantity on a ray vertex whose surrounding weights all equal
  /// the given limit.
  std::function<Rational(const Rational&)> at_limit;
  /// Number of weights past the vertex that the quantity reads.
  int window = 1;
  /// Nondecreasing in every weight it reads; monotone tails then give
  /// monotone sequences and the limit is handled analytically.
  bool monotone_in_weights = false;
  /// Optional fast path for ray vertices: the quantity at the k-th ray vertex
  /// from the squared weights λ_k², ..., λ_{k+window}². Used by horizon scans.
  std::function<RawFraction(const std::deque<RawFraction>&)> on_chain;
};

/// Squared weights λ_k², ..., λ_{k+window}² along one ray, advanced one
/// index at a time so each weight is computed once.
class SquaredWeightWindow {
 public:
  SquaredWeightWindow(const ValidatedTree& tree, const RaySpec& ray, std::int64_t start, int window);

  std::int64_t index() const { return index_; }
  const std::deque<RawFraction>& values() const { return values_; }
  void advance();

 private:
  const ValidatedTree& tree_;
  const RaySpec& ray_;
  std::int64_t index_;
  std::deque<RawFraction> values_;
};

/// Core vertices plus, per ray, indices 1 .. prefix+1+window.
std::vector<VertexId> influence_zone(const ValidatedTree& tree, int window);

/// First ray index at which the vertex's own weight and every weight after it
/// come from the tail rule.
std::int64_t pure_tail_start(const RaySpec& ray);

SupResult supremum(const ValidatedTree& tree, const VertexQuantity& q,
                   std::int64_t horizon = kDefaultHorizon);

/// ‖S^n‖² = sup_v ‖S^n e_v‖².
SupResult operator_norm_sq(const ValidatedTree& tree, int n);

struct CorollaryCheck {
  std::string name;
  bool holds = false;
  std::optional<VertexId> witness;
};

struct AttainmentReport {
  int power = 1;
  SupResult norm_sq_of_power;
  Rational norm_sq;  // ‖S‖²
  /// Influence-zone vertices at which the supremum is reached; along a
  /// constant tail only the first tail-only vertex is listed.
  std::vector<VertexId> attaining_vertices;
  std::vector<CorollaryCheck> corollary_checks;
  /// For power 1: Σ_{v∈chi(u)} λ_v e_v at an attaining u, a vector at which
  /// S* attains its norm.
  std::optional<FinVector> adjoint_witness;
};

AttainmentReport norm_attainment(const ValidatedTree& tree);

/// n ∈ {2, 3}.
AttainmentReport power_attainment(const ValidatedTree& tree, int n);

enum class LimitOutcome {
  DecreasingApproach,   // constant or decreasing tail
  LargerWeightExists,   // increasing tail, but some weight exceeds the limit
  NotNormAttaining,     // increasing tail, S not norm attaining: vacuous
  MixedLimits,          // rays converge to different limits: hypothesis not met
  WeightEqualsLimit,    // norm attained, only a weight equal to the limit exists
  Falsified,            // norm attained, every weight below the limit
};

std::string to_string(LimitOutcome o);

struct RayLimitClass {
  std::string ray_id;
  Rational limit;
  TailDirection direction = TailDirection::Constant;
  LimitOutcome outcome = LimitOutcome::DecreasingApproach;
  /// A weight > limit, or for WeightEqualsLimit a weight == limit.
  std::optional<VertexId> larger_weight_at;
};

/// Outcomes that contradict the strict dichotomy "decreasing approach or a
/// strictly larger weight" for a norm-attaining shift.
bool contradicts_dichotomy(LimitOutcome o);

std::vector<RayLimitClass> weight_limit_classify(const ValidatedTree& tree);

}  // namespace shiftlab
