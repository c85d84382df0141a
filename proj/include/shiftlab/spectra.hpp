#pragma once

#include "shiftlab/rational.hpp"
#include "shiftlab/tree.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftlab {

/// An eigenvalue of N_λ listed explicitly. multiplicity is empty for
/// INFINITE (a constant tail takes the value at every index).
struct Eigenvalue {
  Rational value;
  std::optional<std::int64_t> multiplicity;
};

/// The weights λ_j of a strictly monotone tail, j >= first_index. Every term
/// is an eigenvalue of multiplicity one (unless it also appears explicitly,
/// in which case it is folded into the explicit list).
struct MonotoneFamily {
  std::string ray_id;
  std::int64_t first_index = 1;
  Rational first_value;
  Rational limit;
  TailDirection direction = TailDirection::Increasing;
};

enum class Approach { FromBelow, FromAbove };

std::string to_string(Approach a);

struct AccumulationPoint {
  Rational value;
  Approach approach = Approach::FromBelow;
  std::string ray_id;
};

/// Spectral data of the diagonal operator N_λ e_v = λ_v e_v on ℓ²(V⁰).
struct SpectrumReport {
  std::vector<Eigenvalue> eigenvalues;  // ascending
  std::vector<MonotoneFamily> families;
  std::vector<AccumulationPoint> accumulation_points;  // ascending by value
  std::vector<Rational> sigma_ess;                     // ascending, distinct
  std::optional<Rational> m_e;  // empty when σ_ess is empty
  std::optional<Rational> m;    // empty when V⁰ is empty
  bool m_attained = false;
  Rational norm;
  bool norm_attained = false;
};

SpectrumReport diag_spectrum(const ValidatedTree& tree);

class ProbeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// t_j = slope * j + offset; the default is t_j = j.
struct ParameterSequence {
  Rational slope = 1;
  Rational offset = 0;

  Rational at(std::int64_t j) const { return slope * j + offset; }
  std::string describe() const;
};

/// Restriction of N_λ to the closed span of
///   x_j = (e_{p,j} + t_j e_{q,j}) / sqrt(1 + t_j²),   j >= 1,
/// where p, q are the two lowest-id constant rays ordered so that
/// a = c_p <= b = c_q and e_{p,j} is the j-th tail vertex of p. The N x_j
/// are mutually orthogonal, so ‖N|_M‖² = sup_j (a² + b² t_j²)/(1 + t_j²).
struct ProbeReport {
  std::string family;
  std::string ray_low;
  std::string ray_high;
  Rational a;
  Rational b;
  Rational restriction_sup_sq;
  bool attained = false;
  std::optional<std::int64_t> witness_j;
  /// Terms checked exactly when the sup is not attained.
  std::int64_t verified_terms = 0;
  bool strictly_increasing = false;
  bool below_limit = false;
  std::vector<Rational> first_values;  // j = 1..5
};

/// Throws ProbeError (FamilyInapplicable) with fewer than two constant rays
/// and std::invalid_argument when t_j is not positive.
ProbeReport an_restriction_probe(const ValidatedTree& tree, const ParameterSequence& t = {},
                                 std::int64_t verify_terms = 1000);

}  // namespace shiftlab
