#include "shiftlab/fixtures.hpp"
#include "shiftlab/norm.hpp"
#include "shiftlab/tree.hpp"
#include "shiftlab/tree_io.hpp"
#include "shiftlab/words.hpp"

#include "../support/random_trees.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace shiftlab;

namespace {

TreeErrorKind error_kind(const TreeSpec& spec) {
  try {
    validate_tree(spec);
  } catch (const TreeError& e) {
    return e.kind();
  }
  FAIL("expected a TreeError");
  return TreeErrorKind::UnknownVertex;
}

bool contains(const std::vector<VertexId>& vs, const VertexId& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

}  // namespace

TEST_CASE("a lone root is a valid tree") {
  const auto t = validate_tree(TreeSpec{"root", {}, {}});
  CHECK(t.is_finite());
  CHECK(t.core_size() == 1);
  CHECK(t.children(t.root()).empty());
  CHECK_FALSE(t.weight(t.root()).has_value());
  CHECK_FALSE(t.parent(t.root()).has_value());
}

TEST_CASE("the corpus validates") {
  for (const auto& f : list_fixtures()) {
    CAPTURE(f.name);
    CHECK_NOTHROW(validate_tree(f.spec));
  }
}

TEST_CASE("validation errors name the offence") {
  SUBCASE("pole inside the tail") {
    TreeSpec s{"u", {}, {RaySpec{"r", "u", {}, AffineReciprocalTail{1, 1, 1}}}};
    CHECK(error_kind(s) == TreeErrorKind::TailPole);
  }
  SUBCASE("non-positive core weight") {
    TreeSpec s{"u", {{"u", "a", Rational(0)}}, {}};
    CHECK(error_kind(s) == TreeErrorKind::NonPositiveWeight);
  }
  SUBCASE("non-positive prefix weight") {
    TreeSpec s{"u", {}, {RaySpec{"r", "u", {Rational(-1)}, ConstantTail{1}}}};
    CHECK(error_kind(s) == TreeErrorKind::NonPositiveWeight);
  }
  SUBCASE("tail that starts at zero") {
    TreeSpec s{"u", {}, {RaySpec{"r", "u", {}, AffineReciprocalTail{1, 1, 0}}}};
    CHECK(error_kind(s) == TreeErrorKind::NonPositiveWeight);
  }
  SUBCASE("oscillating geometric tail") {
    TreeSpec s{"u", {}, {RaySpec{"r", "u", {}, GeometricTail{2, 1, Rational(-1, 2)}}}};
    CHECK(error_kind(s) == TreeErrorKind::NonMonotoneTail);
  }
  SUBCASE("two parents") {
    TreeSpec s{"u", {{"u", "a", 1}, {"u", "b", 1}, {"a", "c", 1}, {"b", "c", 1}}, {}};
    CHECK(error_kind(s) == TreeErrorKind::MultipleParents);
  }
  SUBCASE("second root") {
    TreeSpec s{"u", {{"u", "a", 1}, {"x", "y", 1}}, {}};
    CHECK(error_kind(s) == TreeErrorKind::MultipleRoots);
  }
  SUBCASE("edge into the root") {
    TreeSpec s{"u", {{"u", "a", 1}, {"a", "u", 1}}, {}};
    CHECK(error_kind(s) == TreeErrorKind::Cycle);
  }
  SUBCASE("detached cycle") {
    TreeSpec s{"u", {{"u", "a", 1}, {"b", "c", 1}, {"c", "b", 1}}, {}};
    CHECK(error_kind(s) == TreeErrorKind::Cycle);
  }
  SUBCASE("ray attached to a missing vertex") {
    TreeSpec s{"u", {}, {RaySpec{"r", "nowhere", {}, ConstantTail{1}}}};
    CHECK(error_kind(s) == TreeErrorKind::OrphanVertex);
  }
  SUBCASE("ray id reused") {
    TreeSpec s{"u", {}, {RaySpec{"r", "u", {}, ConstantTail{1}}, RaySpec{"r", "u", {}, ConstantTail{2}}}};
    CHECK(error_kind(s) == TreeErrorKind::DuplicateRay);
  }
}

TEST_CASE("resolve on fixture A") {
  const auto t = validate_tree(fixture("A").spec);
  const auto root = t.resolve(t.root());
  CHECK_FALSE(root.parent.has_value());
  CHECK_FALSE(root.weight.has_value());
  CHECK(root.children == std::vector<VertexId>{VertexId::ray("r1", 1), VertexId::ray("r2", 1)});

  const auto v = t.resolve(VertexId::ray("r2", 2));
  CHECK(*v.parent == VertexId::ray("r2", 1));
  CHECK(*v.weight == Rational(1, 4));
  CHECK(v.children == std::vector<VertexId>{VertexId::ray("r2", 3)});

  CHECK_THROWS_AS(t.resolve(VertexId::core("nope")), TreeError);
  CHECK_THROWS_AS(t.resolve(VertexId::ray("r9", 1)), TreeError);
}

TEST_CASE("fixture C weights follow 1 - 2^(1-n)") {
  const auto t = validate_tree(fixture("C").spec);
  // Ray index k is the (k+1)-th vertex of the path and carries α_k.
  CHECK(*t.weight(VertexId::ray("path", 1)) == 1);
  CHECK(*t.weight(VertexId::ray("path", 2)) == Rational(1, 2));
  CHECK(*t.weight(VertexId::ray("path", 4)) == Rational(7, 8));
  CHECK(*t.weight(VertexId::ray("path", 5)) == Rational(15, 16));
  CHECK(t.depth(VertexId::ray("path", 1)) == 1);
}

TEST_CASE("vertex ids order canonically and round-trip through text") {
  CHECK(VertexId::core("z") < VertexId::ray("a", 1));
  CHECK(VertexId::ray("a", 2) < VertexId::ray("a", 10));
  CHECK(VertexId::ray("a", 9) < VertexId::ray("b", 1));
  CHECK(VertexId::parse("r2:7") == VertexId::ray("r2", 7));
  CHECK(VertexId::parse("u0") == VertexId::core("u0"));
  CHECK(VertexId::ray("r2", 7).str() == "r2:7");
}

TEST_CASE("parent and child lookups agree on random trees") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = validate_tree(testing::random_tree_spec(rng, {12, 3, false}));
    for (const auto& v : influence_zone(t, 3)) {
      for (const auto& c : t.children(v)) CHECK(*t.parent(c) == v);
      if (const auto p = t.parent(v)) CHECK(contains(t.children(*p), v));
      else CHECK(v == t.root());
    }
  }
}

TEST_CASE("shifting keeps supports inside the descendants of a vertex") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = validate_tree(testing::random_tree_spec(rng, {10, 2, false}));
    const auto zone = influence_zone(t, 2);
    const auto& top = zone[static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<long>(zone.size()) - 1))];
    // Descendants of `top` within the zone.
    std::vector<VertexId> des;
    for (const auto& v : zone) {
      for (std::optional<VertexId> a = v; a; a = t.parent(*a)) {
        if (*a == top) {
          des.push_back(v);
          break;
        }
      }
    }
    const auto f = testing::random_vector(rng, des);
    const auto sf = apply_shift(t, f);
    for (const auto& [v, c] : sf.coefficients()) {
      bool below = false;
      for (std::optional<VertexId> a = v; a; a = t.parent(*a)) below = below || *a == top;
      CHECK(below);
    }
  }
}

TEST_CASE("weights stay positive deep into every tail") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = validate_tree(testing::random_tree_spec(rng, {5, 3, false}));
    for (const auto& ray : t.rays()) {
      for (std::int64_t j = 1; j <= 1000; ++j) REQUIRE(t.ray_weight(ray, j) > 0);
    }
  }
}

TEST_CASE("tree JSON round-trips exactly") {
  for (const auto& f : list_fixtures()) {
    CHECK(tree_spec_from_json(tree_spec_to_json(f.spec)) == f.spec);
  }
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const auto spec = testing::random_tree_spec(rng, {8, 3, false});
    const auto text = tree_spec_to_json(spec).dump();
    CHECK(tree_spec_from_json(parse_json_text(text)) == spec);
  }
}

TEST_CASE("tree JSON errors carry a location") {
  try {
    tree_spec_from_json(parse_json_text(R"({"root": "u", "rays": [{"id": "r", "attach_at": "u", "tail": {"kind": "wobbly"}}]})"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.location() == "/rays/0/tail/kind");
  }
  try {
    parse_json_text("{\n  \"root\": ,\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.location().rfind("2:", 0) == 0);
  }
  CHECK_THROWS_AS(tree_spec_from_json(parse_json_text(R"({"root": "u", "core_edges": [{"parent": "u", "child": "a", "weight": "1/0"}]})")),
                  ParseError);
}
