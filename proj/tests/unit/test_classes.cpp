#include "shiftlab/classes.hpp"
#include "shiftlab/fixtures.hpp"

#include "../support/random_trees.hpp"

#include <doctest.h>

#include <algorithm>

using namespace shiftlab;

namespace {

ValidatedTree fixture_tree(const std::string& name) { return validate_tree(fixture(name).spec); }

FinVector e(const std::string& text) { return FinVector::basis(VertexId::parse(text)); }

// Root "1", then weights w, then the constant tail.
ValidatedTree path(std::vector<Rational> prefix, const Rational& tail) {
  return validate_tree(TreeSpec{"1", {}, {RaySpec{"path", "1", std::move(prefix), ConstantTail{tail}}}});
}

void check_witnesses_sound(const ClassReport& r) {
  CHECK((r.verdict == Verdict::Fail) == !r.fail_witnesses.empty());
  for (const auto& w : r.fail_witnesses) CHECK(w.lhs > w.rhs);
}

}  // namespace

TEST_CASE("hyponormal basis test") {
  const auto a = hyponormal_basis_test(fixture_tree("A"));
  CHECK(a.verdict == Verdict::Fail);
  CHECK(a.scope == "necessary condition only");
  REQUIRE(a.fail_witnesses.size() == 1);
  CHECK(a.fail_witnesses[0].vertex == VertexId::ray("r2", 1));
  CHECK(a.fail_witnesses[0].lhs == Rational(1, 9));
  CHECK(a.fail_witnesses[0].rhs == Rational(1, 16));

  const auto iso = hyponormal_basis_test(path({}, 1));
  CHECK(iso.verdict == Verdict::PassAll);
  REQUIRE(iso.tail_status.size() == 1);
  CHECK(iso.tail_status[0].status == TailStatus::ClosedFormVerified);

  // λ_22 = 2 is followed by λ_23 = 1.
  const auto b = hyponormal_basis_test(fixture_tree("B"));
  CHECK(b.verdict == Verdict::Fail);
  REQUIRE(b.fail_witnesses.size() == 1);
  CHECK(b.fail_witnesses[0].vertex == VertexId::ray("r2", 2));
  CHECK(b.fail_witnesses[0].lhs == 4);
  CHECK(b.fail_witnesses[0].rhs == 1);
}

TEST_CASE("star-paranormal vertex test") {
  const auto a = fixture_tree("A");
  const auto q = local_quantities(a, VertexId::ray("r2", 1));
  CHECK(q.adjoint_sq * q.adjoint_sq == Rational(1, 81));
  CHECK(q.shift2_sq == Rational(1, 4));
  CHECK(local_quantities(a, a.root()).adjoint_sq == 0);
  const auto ra = star_paranormal_vertex_test(a);
  CHECK(ra.verdict == Verdict::PassAll);
  CHECK(ra.scope == "necessary criterion");

  const auto p = star_paranormal_vertex_test(path({2}, 1));
  CHECK(p.verdict == Verdict::Fail);
  REQUIRE(p.fail_witnesses.size() == 1);
  CHECK(p.fail_witnesses[0].vertex == VertexId::ray("path", 1));
  CHECK(p.fail_witnesses[0].lhs == 16);
  CHECK(p.fail_witnesses[0].rhs == 1);
}

TEST_CASE("quasi-*-paranormal vertex test") {
  const auto b = fixture_tree("B");
  const auto q0 = local_quantities(b, b.root());
  CHECK(q0.shift_sq * q0.shift_sq * q0.shift_sq == 8);
  CHECK(q0.shift3_sq == 20);
  const auto q22 = local_quantities(b, VertexId::ray("r2", 2));
  CHECK(q22.shift_sq * q22.shift_sq * q22.shift_sq == 1);
  CHECK(q22.shift3_sq == 256);
  CHECK(local_quantities(b, VertexId::ray("r2", 50)).shift3_sq == 4096);
  const auto rb = quasi_star_vertex_test(b);
  CHECK(rb.verdict == Verdict::PassAll);
  CHECK(rb.scope == "definitive");
  for (const auto& s : rb.tail_status) CHECK(s.status == TailStatus::ClosedFormVerified);

  const auto rc = quasi_star_vertex_test(fixture_tree("C"), 200);
  CHECK(rc.verdict == Verdict::Fail);
  REQUIRE_FALSE(rc.fail_witnesses.empty());
  CHECK(rc.fail_witnesses[0].vertex == VertexId::core("1"));
  CHECK(rc.fail_witnesses[0].lhs == 1);
  CHECK(rc.fail_witnesses[0].rhs == Rational(9, 64));
  REQUIRE(rc.tail_status.size() == 1);
  CHECK(rc.tail_status[0].status == TailStatus::VerifiedToHorizonPlusLimit);
  CHECK(rc.tail_status[0].horizon == 200);
  check_witnesses_sound(rc);

  // A leaf has ‖Se_v‖ = 0 and passes vacuously; only its parent fails.
  const auto leaf = quasi_star_vertex_test(validate_tree(TreeSpec{"u", {{"u", "a", 1}}, {}}));
  REQUIRE(leaf.fail_witnesses.size() == 1);
  CHECK(leaf.fail_witnesses[0].vertex == VertexId::core("u"));
}

TEST_CASE("functional inequality examples") {
  const auto b = functional_inequality_check(fixture_tree("B"), InequalityKind::QuasiDef, e("u0"));
  CHECK(b.lhs_sq == 16);
  CHECK(b.rhs_sq == 40);
  CHECK(b.holds);

  const auto c = functional_inequality_check(fixture_tree("C"), InequalityKind::QuasiDef, e("path:1"),
                                             Direction::Adjoint);
  CHECK(c.lhs_sq == 1);
  CHECK(c.rhs_sq == 0);
  CHECK_FALSE(c.holds);

  const auto a = functional_inequality_check(fixture_tree("A"), InequalityKind::StarParanormalThm, e("r1:2"));
  CHECK(a.lhs_sq == 256);
  CHECK(a.rhs_sq == 256);
  CHECK(a.holds);

  const auto zero = functional_inequality_check(fixture_tree("A"), InequalityKind::QuasiThm, FinVector{});
  CHECK(zero.lhs_sq == 0);
  CHECK(zero.rhs_sq == 0);
  CHECK(zero.holds);

  CHECK_THROWS_AS(functional_inequality_check(fixture_tree("A"), InequalityKind::QuasiThm, e("u0"), Direction::Adjoint),
                  std::invalid_argument);
  CHECK(parse_inequality_kind("quasi_def") == InequalityKind::QuasiDef);
  CHECK_THROWS_AS(parse_inequality_kind("paranormal"), std::invalid_argument);
}

TEST_CASE("densely defined bounds") {
  const auto a = fixture_tree("A");
  const auto r = densely_defined_bound(a);
  CHECK(r.value_sq == Rational(4, 17));
  CHECK(r.attained);

  CHECK(densely_defined_bound(validate_tree(TreeSpec{"x", {}, {}})).value_sq == 0);

  Rational root_term = 0;
  for (const auto& u : a.children(a.root())) {
    root_term += *a.weight(u) * *a.weight(u) / (1 + local_norm_sq(a, u, 2));
  }
  CHECK(root_term == Rational(1, 1377) + Rational(4, 45));
  CHECK(root_term <= r.value_sq);
}

TEST_CASE("random functional sweeps") {
  const auto b = random_functional_sweep(fixture_tree("B"), InequalityKind::QuasiDef, Direction::Forward, 10000, 7);
  CHECK(b.passed);
  CHECK(b.trials_run == 10000);

  const auto c = random_functional_sweep(fixture_tree("C"), InequalityKind::QuasiDef, Direction::Adjoint, 500, 7);
  CHECK_FALSE(c.passed);
  REQUIRE(c.violation.has_value());
  CHECK(*c.violation == e("path:1"));
  CHECK(c.violation_check->lhs_sq == 1);
  CHECK(c.violation_check->rhs_sq == 0);

  const auto a =
      random_functional_sweep(fixture_tree("A"), InequalityKind::StarParanormalDef, Direction::Forward, 2000, 7);
  CHECK(a.passed);

  // Same seed, same answer.
  const auto again = random_functional_sweep(fixture_tree("C"), InequalityKind::QuasiDef, Direction::Adjoint, 500, 7);
  CHECK(again.violation_trial == c.violation_trial);
  CHECK(*again.violation == *c.violation);
}

TEST_CASE("the k-grid and the discriminant agree") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = validate_tree(testing::random_tree_spec(rng, {12, 3, false}));
    for (const auto& v : influence_zone(t, 3)) {
      const auto q = local_quantities(t, v);
      CHECK(pencil_nonnegative_on_grid(PencilKind::StarParanormal, q.adjoint_sq, q.shift2_sq) ==
            discriminant_holds(PencilKind::StarParanormal, q.adjoint_sq, q.shift2_sq));
      CHECK(pencil_nonnegative_on_grid(PencilKind::QuasiStar, q.shift_sq, q.shift3_sq) ==
            discriminant_holds(PencilKind::QuasiStar, q.shift_sq, q.shift3_sq));
    }
  }
  // At the minimiser k = a the pencils reduce to b - a² and b - a³.
  CHECK(pencil_value(PencilKind::StarParanormal, 3, 5, 3) == -4);
  CHECK(pencil_value(PencilKind::QuasiStar, 2, 20, 2) == 12);
}

TEST_CASE("the quasi vertex test matches the functional form on basis vectors") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = validate_tree(testing::random_tree_spec(rng, {10, 3, false}));
    const auto report = quasi_star_vertex_test(t, 100);
    check_witnesses_sound(report);
    for (const auto& v : influence_zone(t, 3)) {
      const auto q = local_quantities(t, v);
      const bool vertex_ok = discriminant_holds(PencilKind::QuasiStar, q.shift_sq, q.shift3_sq);
      CHECK(vertex_ok == functional_inequality_check(t, InequalityKind::QuasiDef, FinVector::basis(v)).holds);
      const bool listed = std::any_of(report.fail_witnesses.begin(), report.fail_witnesses.end(),
                                      [&](const FailWitness& w) { return w.vertex == v; });
      CHECK(listed == !vertex_ok);
    }
  }
}

TEST_CASE("hyponormal implies the star vertex test at single-child vertices") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = validate_tree(testing::random_tree_spec(rng, {12, 3, false}));
    const auto h = hierarchy_spot_check(t, 100);
    for (const auto& w : h.flagged) CHECK(t.children(w.vertex).size() != 1);
  }
  // A branching vertex can be flagged.
  const auto branch = validate_tree(TreeSpec{"u",
                                             {{"u", "v", 1}},
                                             {RaySpec{"a", "v", {}, ConstantTail{Rational(3, 4)}},
                                              RaySpec{"b", "v", {}, ConstantTail{Rational(3, 4)}}}});
  const auto h = hierarchy_spot_check(branch, 100);
  REQUIRE(h.flagged.size() == 1);
  CHECK(h.flagged[0].vertex == VertexId::core("v"));
}
