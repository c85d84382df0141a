#include "shiftlab/tree.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace shiftlab {

// ---------------------------------------------------------------------------
// VertexId

VertexId VertexId::core(std::string name) { return VertexId(false, std::move(name), 0); }

VertexId VertexId::ray(std::string ray_id, std::int64_t index) {
  if (index < 1) throw std::invalid_argument("ray index must be >= 1");
  return VertexId(true, std::move(ray_id), index);
}

VertexId VertexId::parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) return core(text);
  const auto suffix = text.substr(colon + 1);
  if (suffix.empty() || suffix.size() > 18 ||
      !std::all_of(suffix.begin(), suffix.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("malformed vertex id: '" + text + "'");
  }
  return ray(text.substr(0, colon), std::stoll(suffix));
}

std::string VertexId::str() const {
  return ray_kind_ ? name_ + ":" + std::to_string(index_) : name_;
}

// ---------------------------------------------------------------------------
// TailRule

std::string to_string(TailDirection d) {
  switch (d) {
    case TailDirection::Constant: return "constant";
    case TailDirection::Increasing: return "increasing";
    case TailDirection::Decreasing: return "decreasing";
  }
  return "?";
}

Rational TailRule::value(std::int64_t j) const {
  return std::visit(
      [j](const auto& t) -> Rational {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantTail>) {
          return t.c;
        } else if constexpr (std::is_same_v<T, AffineReciprocalTail>) {
          return Rational(t.limit - t.c / (Rational(j) - t.shift));
        } else {
          return Rational(t.limit - t.c * pow(t.ratio, static_cast<unsigned long>(j)));
        }
      },
      rule_);
}

Rational TailRule::limit() const {
  return std::visit(
      [](const auto& t) -> Rational {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantTail>) {
          return t.c;
        } else {
          return t.limit;
        }
      },
      rule_);
}

TailDirection TailRule::direction() const {
  return std::visit(
      [](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantTail>) {
          return TailDirection::Constant;
        } else {
          if (t.c == 0) return TailDirection::Constant;
          return t.c > 0 ? TailDirection::Increasing : TailDirection::Decreasing;
        }
      },
      rule_);
}

// ---------------------------------------------------------------------------
// Errors

std::string to_string(TreeErrorKind kind) {
  switch (kind) {
    case TreeErrorKind::MultipleRoots: return "MultipleRoots";
    case TreeErrorKind::MultipleParents: return "MultipleParents";
    case TreeErrorKind::Cycle: return "Cycle";
    case TreeErrorKind::OrphanVertex: return "OrphanVertex";
    case TreeErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case TreeErrorKind::TailPole: return "TailPole";
    case TreeErrorKind::NonMonotoneTail: return "NonMonotoneTail";
    case TreeErrorKind::InvalidTail: return "InvalidTail";
    case TreeErrorKind::InvalidName: return "InvalidName";
    case TreeErrorKind::DuplicateRay: return "DuplicateRay";
    case TreeErrorKind::UnknownVertex: return "UnknownVertex";
  }
  return "?";
}

TreeError::TreeError(TreeErrorKind kind, std::string subject, const std::string& detail)
    : std::runtime_error(to_string(kind) + " [" + subject + "]: " + detail),
      kind_(kind),
      subject_(std::move(subject)) {}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_name(const std::string& name) {
  if (name.empty() || name.find(':') != std::string::npos) {
    throw TreeError(TreeErrorKind::InvalidName, name, "names must be non-empty and contain no ':'");
  }
}

void check_tail(const RaySpec& ray) {
  const auto first = static_cast<std::int64_t>(ray.prefix.size()) + 1;
  const std::string subject = ray.id;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantTail>) {
          if (t.c <= 0) throw TreeError(TreeErrorKind::NonPositiveWeight, subject, "constant tail must be positive");
        } else {
          if (t.limit <= 0) throw TreeError(TreeErrorKind::InvalidTail, subject, "tail limit must be positive");
          if constexpr (std::is_same_v<T, AffineReciprocalTail>) {
            if (t.shift >= first) {
              throw TreeError(TreeErrorKind::TailPole, subject,
                              "shift " + to_string(t.shift) + " is not below the first tail index " +
                                  std::to_string(first));
            }
          } else {
            if (t.ratio < 0) throw TreeError(TreeErrorKind::NonMonotoneTail, subject, "negative ratio oscillates");
            if (t.ratio == 0 || t.ratio >= 1) {
              throw TreeError(TreeErrorKind::InvalidTail, subject, "ratio must lie in (0, 1)");
            }
          }
        }
      },
      ray.tail.rule());
  // Monotone tails take their least value either at the first tail index
  // (increasing) or in the limit (decreasing, limit > 0 checked above).
  if (ray.tail.direction() == TailDirection::Increasing && ray.tail.value(first) <= 0) {
    throw TreeError(TreeErrorKind::NonPositiveWeight, VertexId::ray(ray.id, first).str(),
                    "first tail weight " + to_string(ray.tail.value(first)) + " is not positive");
  }
}

}  // namespace

ValidatedTree validate_tree(const TreeSpec& spec) {
  ValidatedTree tree;
  tree.spec_ = spec;
  auto& core = tree.core_;

  check_name(spec.root);
  core[spec.root];

  std::map<std::string, std::vector<std::string>> parents;
  for (const auto& e : spec.core_edges) {
    check_name(e.parent);
    check_name(e.child);
    if (e.weight <= 0) {
      throw TreeError(TreeErrorKind::NonPositiveWeight, e.child, "weight " + to_string(e.weight));
    }
    core[e.parent];
    core[e.child];
    parents[e.child].push_back(e.parent);
  }

  for (const auto& e : spec.core_edges) {
    if (parents[e.child].size() > 1) {
      throw TreeError(TreeErrorKind::MultipleParents, e.child, "vertex has more than one parent");
    }
    auto& node = core[e.child];
    node.parent = e.parent;
    node.weight = e.weight;
    core[e.parent].children.push_back(VertexId::core(e.child));
  }

  for (const auto& [name, node] : core) {
    if (name != spec.root && !node.parent) {
      throw TreeError(TreeErrorKind::MultipleRoots, name, "second vertex without a parent");
    }
  }
  if (core[spec.root].parent) {
    throw TreeError(TreeErrorKind::Cycle, spec.root, "root has an incoming edge");
  }

  std::set<std::string> reached{spec.root};
  std::deque<std::string> queue{spec.root};
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto& c : core[u].children) {
      core[c.name()].depth = core[u].depth + 1;
      if (reached.insert(c.name()).second) queue.push_back(c.name());
    }
  }
  for (const auto& [name, node] : core) {
    if (!reached.count(name)) {
      throw TreeError(TreeErrorKind::Cycle, name, "vertex lies on a cycle unreachable from the root");
    }
  }

  for (std::size_t i = 0; i < spec.rays.size(); ++i) {
    const auto& ray = spec.rays[i];
    check_name(ray.id);
    if (!tree.ray_index_.emplace(ray.id, i).second) {
      throw TreeError(TreeErrorKind::DuplicateRay, ray.id, "ray id used twice");
    }
    if (!core.count(ray.attach_at)) {
      throw TreeError(TreeErrorKind::OrphanVertex, ray.id, "attach vertex '" + ray.attach_at + "' is not in the core");
    }
    for (std::size_t j = 0; j < ray.prefix.size(); ++j) {
      if (ray.prefix[j] <= 0) {
        throw TreeError(TreeErrorKind::NonPositiveWeight, VertexId::ray(ray.id, static_cast<std::int64_t>(j) + 1).str(),
                        "weight " + to_string(ray.prefix[j]));
      }
    }
    check_tail(ray);
    core[ray.attach_at].children.push_back(VertexId::ray(ray.id, 1));
  }

  for (auto& [name, node] : core) std::sort(node.children.begin(), node.children.end());
  return tree;
}

// ---------------------------------------------------------------------------
// Queries

const ValidatedTree::CoreNode& ValidatedTree::core_node(const std::string& name) const {
  const auto it = core_.find(name);
  if (it == core_.end()) throw TreeError(TreeErrorKind::UnknownVertex, name, "no such core vertex");
  return it->second;
}

const RaySpec& ValidatedTree::ray(const std::string& id) const {
  const auto it = ray_index_.find(id);
  if (it == ray_index_.end()) throw TreeError(TreeErrorKind::UnknownVertex, id, "no such ray");
  return spec_.rays[it->second];
}

bool ValidatedTree::contains(const VertexId& v) const {
  return v.is_core() ? core_.count(v.name()) > 0 : ray_index_.count(v.name()) > 0;
}

Rational ValidatedTree::ray_weight(const RaySpec& ray, std::int64_t j) const {
  if (j <= static_cast<std::int64_t>(ray.prefix.size())) return ray.prefix[static_cast<std::size_t>(j - 1)];
  return ray.tail.value(j);
}

std::optional<VertexId> ValidatedTree::parent(const VertexId& v) const {
  if (v.is_core()) {
    const auto& node = core_node(v.name());
    if (!node.parent) return std::nullopt;
    return VertexId::core(*node.parent);
  }
  const auto& r = ray(v.name());
  if (v.index() == 1) return VertexId::core(r.attach_at);
  return VertexId::ray(v.name(), v.index() - 1);
}

std::vector<VertexId> ValidatedTree::children(const VertexId& v) const {
  if (v.is_core()) return core_node(v.name()).children;
  ray(v.name());
  return {VertexId::ray(v.name(), v.index() + 1)};
}

std::optional<Rational> ValidatedTree::weight(const VertexId& v) const {
  if (v.is_core()) return core_node(v.name()).weight;
  return ray_weight(ray(v.name()), v.index());
}

std::int64_t ValidatedTree::depth(const VertexId& v) const {
  if (v.is_core()) return core_node(v.name()).depth;
  return core_node(ray(v.name()).attach_at).depth + v.index();
}

Resolved ValidatedTree::resolve(const VertexId& v) const {
  return Resolved{parent(v), children(v), weight(v)};
}

std::vector<VertexId> ValidatedTree::core_vertices() const {
  std::vector<VertexId> out;
  out.reserve(core_.size());
  for (const auto& [name, node] : core_) out.push_back(VertexId::core(name));
  return out;
}

}  // namespace shiftlab
