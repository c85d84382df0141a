#pragma once

#include "shiftlab/rational.hpp"
#include "shiftlab/tree.hpp"

#include <map>
#include <vector>

namespace shiftlab {

/// Finitely supported function V -> Q. Zero coefficients are never stored.
class FinVector {
 public:
  using Storage = std::map<VertexId, Rational>;

  FinVector() = default;
  static FinVector basis(const VertexId& v, const Rational& coeff = 1);

  Rational get(const VertexId& v) const;
  void set(const VertexId& v, const Rational& value);
  void add(const VertexId& v, const Rational& value);

  bool empty() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }
  const Storage& coefficients() const { return coeffs_; }

  Rational norm_sq() const;
  FinVector scaled(const Rational& s) const;

  friend Rational inner(const FinVector& f, const FinVector& g);
  friend bool operator==(const FinVector&, const FinVector&) = default;

 private:
  Storage coeffs_;
};

enum class Letter { Shift, Adjoint };

/// Letters are applied right to left: {Adjoint, Shift} is S* S.
using Word = std::vector<Letter>;

Word power(Letter letter, int n);

/// S e_u = sum over children v of λ_v e_v;  S* e_v = λ_v e_par(v), 0 at the root.
FinVector apply_shift(const ValidatedTree& tree, const FinVector& f);
FinVector apply_adjoint(const ValidatedTree& tree, const FinVector& f);
FinVector apply_word(const ValidatedTree& tree, const Word& word, const FinVector& f);

/// ‖S^n e_v‖², by the recursion ‖S^n e_u‖² = Σ_{v∈chi(u)} λ_v² ‖S^{n-1} e_v‖².
Rational local_norm_sq(const ValidatedTree& tree, const VertexId& v, int n);

/// ‖S*^n e_v‖²: product of squared weights up the ancestor chain, 0 when v
/// is closer than n edges to the root.
Rational adjoint_local_norm_sq(const ValidatedTree& tree, const VertexId& v, int n);

}  // namespace shiftlab
