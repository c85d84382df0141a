#pragma once

#include "shiftlab/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace shiftlab {

/// A vertex is either a named core vertex or the j-th vertex (j >= 1) of an
/// attached infinite ray. Ordering is canonical: core vertices by name, then
/// ray vertices by (ray id, index).
class VertexId {
 public:
  static VertexId core(std::string name);
  static VertexId ray(std::string ray_id, std::int64_t index);

  /// "name" for core vertices, "ray:j" for ray vertices.
  static VertexId parse(const std::string& text);

  bool is_core() const { return !ray_kind_; }
  bool is_ray() const { return ray_kind_; }
  const std::string& name() const { return name_; }  // core name or ray id
  std::int64_t index() const { return index_; }

  std::string str() const;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
  friend bool operator==(const VertexId&, const VertexId&) = default;

 private:
  VertexId(bool ray_kind, std::string name, std::int64_t index)
      : ray_kind_(ray_kind), name_(std::move(name)), index_(index) {}

  // Member order defines the canonical ordering.
  bool ray_kind_ = false;
  std::string name_;
  std::int64_t index_ = 0;
};

// ---------------------------------------------------------------------------
// Tail rules

enum class TailDirection { Constant, Increasing, Decreasing };

std::string to_string(TailDirection d);

/// λ_j = c for every tail index.
struct ConstantTail {
  Rational c;

  friend bool operator==(const ConstantTail&, const ConstantTail&) = default;
};

/// λ_j = L - c / (j - s).
struct AffineReciprocalTail {
  Rational limit;
  Rational c;
  Rational shift;

  friend bool operator==(const AffineReciprocalTail&, const AffineReciprocalTail&) = default;
};

/// λ_j = L - c * r^j with 0 < r < 1.
struct GeometricTail {
  Rational limit;
  Rational c;
  Rational ratio;

  friend bool operator==(const GeometricTail&, const GeometricTail&) = default;
};

class TailRule {
 public:
  using Variant = std::variant<ConstantTail, AffineReciprocalTail, GeometricTail>;

  TailRule(ConstantTail t) : rule_(std::move(t)) {}
  TailRule(AffineReciprocalTail t) : rule_(std::move(t)) {}
  TailRule(GeometricTail t) : rule_(std::move(t)) {}

  Rational value(std::int64_t j) const;
  Rational limit() const;
  TailDirection direction() const;

  const Variant& rule() const { return rule_; }
  friend bool operator==(const TailRule&, const TailRule&) = default;

 private:
  Variant rule_;
};

struct RaySpec {
  std::string id;
  std::string attach_at;  // core vertex name
  std::vector<Rational> prefix;
  TailRule tail;

  friend bool operator==(const RaySpec&, const RaySpec&) = default;
};

struct CoreEdge {
  std::string parent;
  std::string child;
  Rational weight;

  friend bool operator==(const CoreEdge&, const CoreEdge&) = default;
};

struct TreeSpec {
  std::string root;
  std::vector<CoreEdge> core_edges;
  std::vector<RaySpec> rays;

  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

// ---------------------------------------------------------------------------
// Errors

enum class TreeErrorKind {
  MultipleRoots,
  MultipleParents,
  Cycle,
  OrphanVertex,
  NonPositiveWeight,
  TailPole,
  NonMonotoneTail,
  InvalidTail,
  InvalidName,
  DuplicateRay,
  UnknownVertex,
};

std::string to_string(TreeErrorKind kind);

class TreeError : public std::runtime_error {
 public:
  TreeError(TreeErrorKind kind, std::string subject, const std::string& detail);

  TreeErrorKind kind() const noexcept { return kind_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  TreeErrorKind kind_;
  std::string subject_;
};

// ---------------------------------------------------------------------------
// Validated tree

struct Resolved {
  std::optional<VertexId> parent;
  std::vector<VertexId> children;
  std::optional<Rational> weight;
};

/// Immutable, validated carrier of a weighted shift. All queries are total on
/// vertices of the tree and throw TreeError(UnknownVertex) otherwise.
class ValidatedTree {
 public:
  const TreeSpec& spec() const { return spec_; }
  VertexId root() const { return VertexId::core(spec_.root); }

  bool contains(const VertexId& v) const;
  Resolved resolve(const VertexId& v) const;

  std::optional<VertexId> parent(const VertexId& v) const;
  std::vector<VertexId> children(const VertexId& v) const;
  /// λ_v; empty for the root.
  std::optional<Rational> weight(const VertexId& v) const;
  /// Number of edges between v and the root.
  std::int64_t depth(const VertexId& v) const;

  /// Core vertices in canonical order.
  std::vector<VertexId> core_vertices() const;
  const std::vector<RaySpec>& rays() const { return spec_.rays; }
  const RaySpec& ray(const std::string& id) const;
  /// Weight of the j-th vertex of a ray.
  Rational ray_weight(const RaySpec& ray, std::int64_t j) const;

  std::size_t core_size() const { return core_.size(); }
  bool is_finite() const { return spec_.rays.empty(); }

  friend ValidatedTree validate_tree(const TreeSpec& spec);

 private:
  ValidatedTree() = default;

  struct CoreNode {
    std::optional<std::string> parent;
    std::optional<Rational> weight;
    std::vector<VertexId> children;
    std::int64_t depth = 0;
  };

  const CoreNode& core_node(const std::string& name) const;

  TreeSpec spec_;
  std::map<std::string, CoreNode> core_;
  std::map<std::string, std::size_t> ray_index_;
};

/// Checks every tree axiom and tail invariant; throws TreeError naming the
/// offending vertex or ray.
ValidatedTree validate_tree(const TreeSpec& spec);

}  // namespace shiftlab
