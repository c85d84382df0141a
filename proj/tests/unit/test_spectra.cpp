#include "shiftlab/fixtures.hpp"
#include "shiftlab/norm.hpp"
#include "shiftlab/spectra.hpp"

#include "../support/random_trees.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace shiftlab;

namespace {

ValidatedTree fixture_tree(const std::string& name) { return validate_tree(fixture(name).spec); }

std::vector<Rational> rationals(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

SupResult weight_sup(const ValidatedTree& t) {
  VertexQuantity q;
  q.at = [&t](const VertexId& v) {
    const auto w = t.weight(v);
    return w ? Rational(*w * *w) : Rational(0);
  };
  q.at_limit = [](const Rational& l) { return Rational(l * l); };
  q.window = 0;
  q.monotone_in_weights = true;
  return supremum(t, q, 500);
}

}  // namespace

TEST_CASE("fixture D spectrum") {
  const auto r = diag_spectrum(fixture_tree("D"));
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(r.eigenvalues[0].value == 1);
  CHECK_FALSE(r.eigenvalues[0].multiplicity.has_value());
  CHECK(r.eigenvalues[1].value == 2);
  CHECK_FALSE(r.eigenvalues[1].multiplicity.has_value());
  CHECK(r.sigma_ess == rationals({1, 2}));
  CHECK(r.norm == 2);
  CHECK(r.norm_attained);
  CHECK(*r.m == 1);
  CHECK(*r.m_e == 1);
}

TEST_CASE("fixture E spectrum") {
  const auto r = diag_spectrum(fixture_tree("E"));
  CHECK(r.sigma_ess == rationals({1, 2}));
  CHECK(r.norm == 2);
  CHECK(*r.m_e == 1);
  // λ_13 = 1 - 1/2 sits below every other weight.
  CHECK(*r.m == Rational(1, 2));
  REQUIRE(r.accumulation_points.size() == 2);
  for (const auto& p : r.accumulation_points) CHECK(p.approach == Approach::FromBelow);
  REQUIRE(r.families.size() == 2);
  CHECK(r.families[0].first_index == 3);
  CHECK(r.families[0].first_value == Rational(1, 2));
  // The prefix weights 1, 1 and 2, 2 are finite-multiplicity eigenvalues.
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(*r.eigenvalues[0].multiplicity == 2);
  CHECK(*r.eigenvalues[1].multiplicity == 2);
}

TEST_CASE("a single constant ray") {
  const auto r = diag_spectrum(validate_tree(TreeSpec{"u", {}, {RaySpec{"r", "u", {}, ConstantTail{Rational(3, 2)}}}}));
  CHECK(r.sigma_ess == std::vector<Rational>{Rational(3, 2)});
  CHECK(*r.m == Rational(3, 2));
  CHECK(*r.m_e == Rational(3, 2));
}

TEST_CASE("decreasing families leave the infimum unattained") {
  const auto r = diag_spectrum(validate_tree(TreeSpec{"u", {}, {RaySpec{"r", "u", {}, AffineReciprocalTail{1, -1, 0}}}}));
  CHECK(*r.m == 1);
  CHECK_FALSE(r.m_attained);
  CHECK(r.norm == 2);
  REQUIRE(r.accumulation_points.size() == 1);
  CHECK(r.accumulation_points[0].approach == Approach::FromAbove);
}

TEST_CASE("restriction probe") {
  const auto d = fixture_tree("D");
  const auto p = an_restriction_probe(d);
  CHECK(p.family == "paired_rotation(t_j = 1*j + 0)");
  CHECK(p.a == 1);
  CHECK(p.b == 2);
  CHECK(p.restriction_sup_sq == 4);
  CHECK_FALSE(p.attained);
  CHECK(p.verified_terms == 1000);
  CHECK(p.strictly_increasing);
  CHECK(p.below_limit);
  REQUIRE(p.first_values.size() == 5);
  CHECK(p.first_values[0] == Rational(5, 2));
  CHECK(p.first_values[1] == Rational(17, 5));

  const auto flat = an_restriction_probe(d, ParameterSequence{0, 1});
  CHECK(flat.attained);
  CHECK(flat.restriction_sup_sq == Rational(5, 2));

  const auto same = an_restriction_probe(validate_tree(
      TreeSpec{"u", {}, {RaySpec{"p", "u", {}, ConstantTail{3}}, RaySpec{"q", "u", {}, ConstantTail{3}}}}));
  CHECK(same.attained);
  CHECK(same.restriction_sup_sq == 9);

  CHECK_THROWS_AS(an_restriction_probe(fixture_tree("C")), ProbeError);
  CHECK_THROWS_AS(an_restriction_probe(d, ParameterSequence{0, 0}), std::invalid_argument);
}

TEST_CASE("an unattained probe sup is a strict limit of increasing terms") {
  for (const auto& t : {ParameterSequence{1, 0}, ParameterSequence{2, 1}, ParameterSequence{Rational(1, 3), 0}}) {
    const auto p = an_restriction_probe(fixture_tree("D"), t);
    REQUIRE_FALSE(p.attained);
    Rational previous = -1;
    for (std::int64_t j = 1; j <= 1000; ++j) {
      const auto tj = t.at(j);
      const Rational value = (p.a * p.a + p.b * p.b * tj * tj) / (1 + tj * tj);
      REQUIRE(value > previous);
      REQUIRE(value < p.restriction_sup_sq);
      previous = value;
    }
  }
}

TEST_CASE("the spectral norm agrees with the weight supremum") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 80; ++trial) {
    const auto t = validate_tree(testing::random_tree_spec(rng, {10, 3, false}));
    const auto r = diag_spectrum(t);
    const auto s = weight_sup(t);
    CHECK(r.norm * r.norm == s.value_sq);
    CHECK(r.norm_attained == s.attained);

    // σ_ess is exactly the infinite-multiplicity eigenvalues plus the accumulation points.
    std::set<Rational> expect;
    for (const auto& ev : r.eigenvalues) {
      if (!ev.multiplicity) expect.insert(ev.value);
    }
    for (const auto& p : r.accumulation_points) expect.insert(p.value);
    CHECK(std::vector<Rational>(expect.begin(), expect.end()) == r.sigma_ess);
    if (!r.sigma_ess.empty()) CHECK(*r.m_e == r.sigma_ess.front());
  }
}
