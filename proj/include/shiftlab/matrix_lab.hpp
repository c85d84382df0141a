#pragma once

#include "shiftlab/tree.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kStructuralTol = 1e-9;
inline constexpr double kViolationMargin = 1e-12;
inline constexpr double kClusterGap = 1e-7;

enum class MatrixErrorKind { NonFinite, NotSquare, TooLarge, ZeroOperator, DimensionMismatch };

std::string to_string(MatrixErrorKind k);

class MatrixError : public std::runtime_error {
 public:
  MatrixError(MatrixErrorKind kind, const std::string& detail);
  MatrixErrorKind kind() const noexcept { return kind_; }

 private:
  MatrixErrorKind kind_;
};

/// Real square matrix, n <= 512, finite entries.
class DenseMatrix {
 public:
  static constexpr Eigen::Index kMaxDim = 512;

  explicit DenseMatrix(Matrix m);

  const Matrix& data() const { return m_; }
  Eigen::Index n() const { return m_.rows(); }
  double norm() const;

 private:
  Matrix m_;
};

/// Orthonormal columns.
struct Subspace {
  Matrix basis;
  double tolerance = kStructuralTol;

  Eigen::Index dim() const { return basis.cols(); }
  Matrix projector() const { return basis * basis.transpose(); }
};

struct SingularCluster {
  double value = 0;
  Eigen::Index multiplicity = 0;
  Subspace right;  // right-singular vectors of the cluster
};

struct SingularData {
  std::vector<SingularCluster> clusters;  // descending
  Matrix right_vectors;                   // all right-singular vectors, same order
  double smallest = 0;                    // m(T)
};

/// Groups singular values whose gap is at most kClusterGap relative to ‖T‖.
SingularData singular_data(const DenseMatrix& t);

enum class NormSide { M, MStar };

/// M = N(|T| - ‖T‖I), or M_* = the same for T*.
Subspace norm_space(const DenseMatrix& t, NormSide side);

/// sin of the largest principal angle between equal-dimensional subspaces.
double principal_angle_sin(const Subspace& a, const Subspace& b);
/// ‖(I - P_b) P_a‖.
double containment_defect(const Subspace& a, const Subspace& b);

struct QuasiBudget {
  int samples = 200;
  int descent_iterations = 60;
  int k_grid = 41;
  std::uint64_t seed = 0;
};

struct QuasiMatrixResult {
  bool pass = true;
  std::string label = "sampled verification";
  /// Unit vector with ‖T*Tx‖⁴ > ‖T³x‖²‖Tx‖² + margin (T scaled to norm 1).
  std::optional<Vector> witness;
  double witness_lhs = 0;  // ‖T*Tx‖⁴ at the witness, unscaled
  double witness_rhs = 0;  // ‖T³x‖²‖Tx‖²
  /// min over probed unit x of ‖A³x‖²‖Ax‖² - ‖A*Ax‖⁴ with A = T/‖T‖.
  double min_gap = 0;
  /// min over the k-grid of the smallest eigenvalue of
  /// A*³A³ - 2k(A*A)² + k²A*A, k in [1e-4, 1e4].
  double min_pencil_eigenvalue = 0;
  std::int64_t vectors_probed = 0;
  /// Per probed x: the pencil form at the best k is negative exactly when
  /// the definition is violated at x.
  bool pencil_consistent = true;
};

/// Probes basis vectors, right-singular vectors, seeded sphere samples and
/// projected-gradient descent from the worst samples. PASS means no violation
/// was found under the budget.
QuasiMatrixResult quasi_star_matrix_test(const DenseMatrix& t, const QuasiBudget& budget = {});

struct InvarianceReport {
  double t_defect = 0;     // ‖(I - P)TP‖
  double tstar_defect = 0;  // ‖(I - P)T*P‖
  bool t_invariant = false;
  bool tstar_invariant = false;
  bool reducing = false;
  /// max - min of ‖Tx‖/‖x‖ over x in S.
  double ratio_spread = 0;
  double ratio_max = 0;
};

InvarianceReport invariance_reducing_check(const DenseMatrix& t, const Subspace& s);

/// Blocks of T in an orthonormal basis M ⊕ M⊥:  [ ‖T‖U  A ; C  B ].
struct Residual {
  double norm = 0;
  Matrix basis_m;
  Matrix basis_rest;
  Matrix U;
  Matrix A;
  Matrix B;
  Matrix C;  // kept so reassembly is exact; zero when M is invariant
};

struct BlockCheck {
  bool hypothesis_holds = false;  // quasi test passed
  bool vacuous = false;
  double u_isometry_defect = 0;  // ‖U*U - I‖
  double lower_left_norm = 0;   // ‖C‖
  double ustar_a_norm = 0;      // ‖U*A‖
  double b_norm = 0;
  bool b_norm_flagged = false;  // ‖B‖ >= ‖T‖ - tol
};

struct BlockDecomposition {
  Residual blocks;
  BlockCheck check;
};

BlockDecomposition block_decompose(const DenseMatrix& t, const QuasiBudget& budget = {});

struct PeelBlock {
  double alpha = 0;
  Matrix U;      // unitary on H_i, in the basis columns below
  Matrix basis;  // orthonormal basis of H_i in original coordinates
};

struct BlockForm {
  std::vector<PeelBlock> blocks;
  /// Present when some stage's M was not reducing; peeling stops there.
  std::optional<Residual> residual;
  std::optional<int> stopped_at_stage;
  double reassembly_error = 0;
  double max_unitary_defect = 0;
};

BlockForm peel_decomposition(const DenseMatrix& t);
Matrix reassemble(const BlockForm& form, Eigen::Index n);

struct NormalityReport {
  bool normal = false;
  double defect = 0;  // ‖T*T - TT*‖_F
  bool invertible = false;
  double smallest_singular_value = 0;
};

NormalityReport normality_check(const DenseMatrix& t);

/// Matrix of S_λ on a finite tree, vertices in canonical order.
DenseMatrix shift_matrix(const ValidatedTree& tree);

Matrix random_orthogonal(Eigen::Index n, std::mt19937_64& rng);

/// W (⊕ α_i U_i) Wᵀ with random orthogonal U_i and W, alphas descending and
/// separated by at least 0.1.
struct Construction {
  Matrix T;
  std::vector<double> alphas;
  std::vector<Eigen::Index> dims;
  Matrix W;

  /// Columns of W spanning the i-th summand.
  Subspace summand(std::size_t i) const;
};

Construction direct_sum_construction(std::mt19937_64& rng, Eigen::Index max_dim = 64);

}  // namespace shiftlab
