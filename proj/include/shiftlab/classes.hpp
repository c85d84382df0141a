#pragma once

#include "shiftlab/norm.hpp"
#include "shiftlab/rational.hpp"
#include "shiftlab/tree.hpp"
#include "shiftlab/words.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

enum class Verdict { PassAll, Fail };
enum class TailStatus { ClosedFormVerified, VerifiedToHorizonPlusLimit };

std::string to_string(Verdict v);
std::string to_string(TailStatus s);

struct FailWitness {
  VertexId vertex;
  Rational lhs;
  Rational rhs;
};

struct RayTailStatus {
  std::string ray_id;
  TailStatus status = TailStatus::ClosedFormVerified;
  std::int64_t horizon = 0;
  bool limit_holds = true;
};

struct ClassReport {
  std::string class_name;
  /// How much a PASS_ALL verdict proves.
  std::string scope;
  Verdict verdict = Verdict::PassAll;
  /// Every failing influence-zone vertex, plus the first failing horizon
  /// vertex of each monotone tail. Canonical order.
  std::vector<FailWitness> fail_witnesses;
  std::vector<RayTailStatus> tail_status;
};

/// The per-vertex numbers every criterion is built from.
struct LocalQuantities {
  Rational adjoint_sq;  // ‖S* e_v‖² = λ_v²
  Rational shift_sq;    // ‖S e_v‖²
  Rational shift2_sq;   // ‖S² e_v‖²
  Rational shift3_sq;   // ‖S³ e_v‖²
};

LocalQuantities local_quantities(const ValidatedTree& tree, const VertexId& v);

/// ‖S* e_v‖ <= ‖S e_v‖ on every basis vector (necessary for hyponormality).
ClassReport hyponormal_basis_test(const ValidatedTree& tree, std::int64_t horizon = kDefaultHorizon);

/// ‖S* e_v‖⁴ <= ‖S² e_v‖² on every vertex: the discriminant form of
/// ‖S²e_v‖² - 2k‖S*e_v‖² + k² >= 0 for all k > 0.
ClassReport star_paranormal_vertex_test(const ValidatedTree& tree, std::int64_t horizon = kDefaultHorizon);

/// ‖S e_v‖⁶ <= ‖S³ e_v‖² on every vertex: the discriminant form of
/// ‖S³e_v‖² - 2k‖Se_v‖⁴ + k²‖Se_v‖² >= 0 for all k > 0. Characterizes
/// quasi-*-paranormal weighted shifts.
ClassReport quasi_star_vertex_test(const ValidatedTree& tree, std::int64_t horizon = kDefaultHorizon);

// k-parameterized forms, kept for the discriminant-equivalence checks.

enum class PencilKind { StarParanormal, QuasiStar };

/// StarParanormal: b - 2ka + k² with a = ‖S*e_v‖², b = ‖S²e_v‖².
/// QuasiStar:      b - 2ka² + k²a with a = ‖Se_v‖², b = ‖S³e_v‖².
Rational pencil_value(PencilKind kind, const Rational& a, const Rational& b, const Rational& k);
bool discriminant_holds(PencilKind kind, const Rational& a, const Rational& b);
/// {scale·2^i : -10 <= i <= 10}, scale = a when a > 0, else 1.
std::vector<Rational> k_probe_grid(const Rational& a);
bool pencil_nonnegative_on_grid(PencilKind kind, const Rational& a, const Rational& b);

// Functional inequalities on finitely supported vectors.

enum class InequalityKind { StarParanormalThm, StarParanormalDef, QuasiDef, QuasiThm };
enum class Direction { Forward, Adjoint };

std::string to_string(InequalityKind k);
std::string to_string(Direction d);
InequalityKind parse_inequality_kind(const std::string& name);

struct CheckResult {
  std::string name;
  Rational lhs_sq;
  Rational rhs_sq;
  bool holds = true;
};

/// Both sides are squared so they stay rational. Def kinds evaluate words in
/// T = S (Forward) or T = S* (Adjoint); thm kinds use the per-vertex
/// expansions and are only defined for the forward direction.
CheckResult functional_inequality_check(const ValidatedTree& tree, InequalityKind kind, const FinVector& f,
                                        Direction direction = Direction::Forward);

struct SweepResult {
  InequalityKind kind = InequalityKind::QuasiDef;
  Direction direction = Direction::Forward;
  std::int64_t trials_run = 0;
  bool passed = true;
  std::optional<std::int64_t> violation_trial;
  /// Shrunk to a minimal support by greedy coordinate removal.
  std::optional<FinVector> violation;
  std::optional<CheckResult> violation_check;
};

/// Probes every basis vector of the candidate pool (influence zone plus four
/// tail indices) in canonical order, then random vectors with support <= 6 and
/// coefficients from {-3..3}/{1,2,3}. Deterministic in (seed, trials).
SweepResult random_functional_sweep(const ValidatedTree& tree, InequalityKind kind, Direction direction,
                                    std::int64_t trials, std::uint64_t seed);

enum class BoundMode { StarParanormal, QuasiFirst, QuasiSecond };

std::string to_string(BoundMode m);

/// sup_v of the per-vertex quantity whose boundedness the densely-defined
/// theorems require:
///   StarParanormal  Σ_{u∈chi(v)} λ_u² / (1 + ‖S²e_u‖²)
///   QuasiFirst      ‖Se_v‖⁴ / (1 + ‖Se_v‖²)
///   QuasiSecond     ‖Se_v‖⁴ / (1 + ‖S³e_v‖²)
SupResult densely_defined_bound(const ValidatedTree& tree, BoundMode mode = BoundMode::StarParanormal,
                                std::int64_t horizon = kDefaultHorizon);

struct HierarchyReport {
  bool hyponormal_basis_pass = false;
  /// Vertices where the hyponormal basis inequality holds at the vertex and
  /// at all its children but the *-paranormal vertex inequality fails.
  std::vector<FailWitness> flagged;
};

HierarchyReport hierarchy_spot_check(const ValidatedTree& tree, std::int64_t horizon = kDefaultHorizon);

}  // namespace shiftlab
