#include "shiftlab/words.hpp"

#include <stdexcept>

namespace shiftlab {

FinVector FinVector::basis(const VertexId& v, const Rational& coeff) {
  FinVector f;
  f.set(v, coeff);
  return f;
}

Rational FinVector::get(const VertexId& v) const {
  const auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void FinVector::set(const VertexId& v, const Rational& value) {
  if (value == 0) {
    coeffs_.erase(v);
  } else {
    coeffs_[v] = value;
  }
}

void FinVector::add(const VertexId& v, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(v, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Rational FinVector::norm_sq() const {
  Rational s = 0;
  for (const auto& [v, c] : coeffs_) s += c * c;
  return s;
}

FinVector FinVector::scaled(const Rational& s) const {
  FinVector out;
  if (s == 0) return out;
  for (const auto& [v, c] : coeffs_) out.coeffs_.emplace(v, c * s);
  return out;
}

Rational inner(const FinVector& f, const FinVector& g) {
  const auto& small = f.coeffs_.size() <= g.coeffs_.size() ? f : g;
  const auto& large = &small == &f ? g : f;
  Rational s = 0;
  for (const auto& [v, c] : small.coeffs_) {
    const auto it = large.coeffs_.find(v);
    if (it != large.coeffs_.end()) s += c * it->second;
  }
  return s;
}

Word power(Letter letter, int n) { return Word(static_cast<std::size_t>(n), letter); }

FinVector apply_shift(const ValidatedTree& tree, const FinVector& f) {
  FinVector out;
  for (const auto& [u, coeff] : f.coefficients()) {
    for (const auto& v : tree.children(u)) out.add(v, coeff * *tree.weight(v));
  }
  return out;
}

FinVector apply_adjoint(const ValidatedTree& tree, const FinVector& f) {
  FinVector out;
  for (const auto& [v, coeff] : f.coefficients()) {
    const auto p = tree.parent(v);
    if (!p) continue;
    out.add(*p, coeff * *tree.weight(v));
  }
  return out;
}

FinVector apply_word(const ValidatedTree& tree, const Word& word, const FinVector& f) {
  FinVector g = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    g = *it == Letter::Shift ? apply_shift(tree, g) : apply_adjoint(tree, g);
  }
  return g;
}

Rational local_norm_sq(const ValidatedTree& tree, const VertexId& v, int n) {
  if (n < 0) throw std::invalid_argument("local_norm_sq: negative power");
  if (!tree.contains(v)) throw TreeError(TreeErrorKind::UnknownVertex, v.str(), "no such vertex");
  if (n == 0) return 1;
  if (v.is_ray()) {
    // A ray vertex has a single chain of descendants.
    const auto& ray = tree.ray(v.name());
    Rational product = 1;
    for (int i = 1; i <= n; ++i) {
      const auto w = tree.ray_weight(ray, v.index() + i);
      product *= w * w;
    }
    return product;
  }
  Rational sum = 0;
  for (const auto& c : tree.children(v)) {
    const auto w = *tree.weight(c);
    sum += w * w * local_norm_sq(tree, c, n - 1);
  }
  return sum;
}

Rational adjoint_local_norm_sq(const ValidatedTree& tree, const VertexId& v, int n) {
  if (n < 0) throw std::invalid_argument("adjoint_local_norm_sq: negative power");
  if (!tree.contains(v)) throw TreeError(TreeErrorKind::UnknownVertex, v.str(), "no such vertex");
  Rational product = 1;
  VertexId cur = v;
  for (int i = 0; i < n; ++i) {
    const auto w = tree.weight(cur);
    if (!w) return 0;
    product *= *w * *w;
    cur = *tree.parent(cur);
  }
  return product;
}

}  // namespace shiftlab
