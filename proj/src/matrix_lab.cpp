#include "shiftlab/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shiftlab {

std::string to_string(MatrixErrorKind k) {
  switch (k) {
    case MatrixErrorKind::NonFinite: return "NonFinite";
    case MatrixErrorKind::NotSquare: return "NotSquare";
    case MatrixErrorKind::TooLarge: return "TooLarge";
    case MatrixErrorKind::ZeroOperator: return "ZeroOperator";
    case MatrixErrorKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "?";
}

MatrixError::MatrixError(MatrixErrorKind kind, const std::string& detail)
    : std::runtime_error(to_string(kind) + ": " + detail), kind_(kind) {}

namespace {

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix orth_complement_projector_times(const Matrix& basis, const Matrix& m) {
  return m - basis * (basis.transpose() * m);
}

}  // namespace

DenseMatrix::DenseMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw MatrixError(MatrixErrorKind::NotSquare, "matrix must be square");
  if (m_.rows() < 1) throw MatrixError(MatrixErrorKind::DimensionMismatch, "matrix must be at least 1x1");
  if (m_.rows() > kMaxDim) throw MatrixError(MatrixErrorKind::TooLarge, "dimension exceeds 512");
  if (!m_.allFinite()) throw MatrixError(MatrixErrorKind::NonFinite, "entries must be finite");
}

double DenseMatrix::norm() const { return op_norm(m_); }

SingularData singular_data(const DenseMatrix& t) {
  Eigen::JacobiSVD<Matrix> svd(t.data(), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  SingularData out;
  out.right_vectors = svd.matrixV();
  const auto n = s.size();
  out.smallest = s(n - 1);
  const double scale = std::max(s(0), std::numeric_limits<double>::min());
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || s(i - 1) - s(i) > kClusterGap * scale) {
      SingularCluster c;
      c.multiplicity = i - start;
      c.value = s.segment(start, c.multiplicity).mean();
      c.right.basis = out.right_vectors.middleCols(start, c.multiplicity);
      out.clusters.push_back(std::move(c));
      start = i;
    }
  }
  return out;
}

Subspace norm_space(const DenseMatrix& t, NormSide side) {
  const DenseMatrix op = side == NormSide::M ? t : DenseMatrix(t.data().transpose());
  auto sd = singular_data(op);
  if (sd.clusters.front().value == 0) throw MatrixError(MatrixErrorKind::ZeroOperator, "T = 0");
  return sd.clusters.front().right;
}

double containment_defect(const Subspace& a, const Subspace& b) {
  if (a.basis.rows() != b.basis.rows()) throw MatrixError(MatrixErrorKind::DimensionMismatch, "ambient dimensions differ");
  return op_norm(orth_complement_projector_times(b.basis, a.basis));
}

double principal_angle_sin(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) throw MatrixError(MatrixErrorKind::DimensionMismatch, "subspace dimensions differ");
  return containment_defect(a, b);
}

namespace {

struct QuasiForms {
  Matrix A, P1, P1sq, P3;

  explicit QuasiForms(const Matrix& a) : A(a) {
    P1 = A.transpose() * A;
    P1sq = P1 * P1;
    const Matrix a3 = A * A * A;
    P3 = a3.transpose() * a3;
  }

  // ‖A³x‖²‖Ax‖² - ‖A*Ax‖⁴
  double gap(const Vector& x) const {
    const double q1 = x.dot(P1 * x);
    const double q2 = x.dot(P1sq * x);
    const double q3 = x.dot(P3 * x);
    return q3 * q1 - q2 * q2;
  }

  Vector gradient(const Vector& x) const {
    const Vector p1x = P1 * x;
    const Vector p2x = P1sq * x;
    const Vector p3x = P3 * x;
    return 2 * x.dot(p1x) * p3x + 2 * x.dot(p3x) * p1x - 4 * x.dot(p2x) * p2x;
  }

  // min over the grid and the minimizing k of the pencil form at x, scaled by
  // ‖Ax‖² so it compares with gap().
  double scaled_pencil_min(const Vector& x, const std::vector<double>& grid) const {
    const double q1 = x.dot(P1 * x);
    const double q2 = x.dot(P1sq * x);
    const double q3 = x.dot(P3 * x);
    auto form = [&](double k) { return q3 - 2 * k * q2 + k * k * q1; };
    double best = std::numeric_limits<double>::infinity();
    for (double k : grid) best = std::min(best, form(k));
    if (q1 > 0) best = std::min(best, form(q2 / q1));
    return q1 > 0 ? best * q1 : best;
  }
};

Vector descend(const QuasiForms& f, Vector x, int iterations) {
  double g = f.gap(x);
  for (int it = 0; it < iterations; ++it) {
    Vector grad = f.gradient(x);
    grad -= x.dot(grad) * x;
    if (grad.norm() < 1e-14) break;
    double step = 1.0;
    bool moved = false;
    for (int tries = 0; tries < 40 && !moved; ++tries, step *= 0.5) {
      Vector y = (x - step * grad).normalized();
      const double gy = f.gap(y);
      if (gy < g) {
        x = std::move(y);
        g = gy;
        moved = true;
      }
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace

QuasiMatrixResult quasi_star_matrix_test(const DenseMatrix& t, const QuasiBudget& budget) {
  QuasiMatrixResult r;
  const double norm = t.norm();
  const auto n = t.n();
  if (norm == 0) return r;
  const QuasiForms f(t.data() / norm);

  std::vector<double> grid;
  const int k_count = std::max(budget.k_grid, 2);
  for (int i = 0; i < k_count; ++i) grid.push_back(std::pow(10.0, -4.0 + 8.0 * i / (k_count - 1)));

  r.min_pencil_eigenvalue = std::numeric_limits<double>::infinity();
  for (double k : grid) {
    const Matrix pencil = f.P3 - 2 * k * f.P1sq + k * k * f.P1;
    Eigen::SelfAdjointEigenSolver<Matrix> es(pencil, Eigen::EigenvaluesOnly);
    r.min_pencil_eigenvalue = std::min(r.min_pencil_eigenvalue, es.eigenvalues()(0));
  }

  std::vector<Vector> probes;
  for (Eigen::Index i = 0; i < n; ++i) probes.push_back(Vector::Unit(n, i));
  const auto sd = singular_data(t);
  for (Eigen::Index i = 0; i < n; ++i) probes.push_back(sd.right_vectors.col(i));
  std::mt19937_64 rng(budget.seed);
  std::normal_distribution<double> normal;
  for (int s = 0; s < budget.samples; ++s) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = normal(rng);
    if (x.norm() > 0) probes.push_back(x.normalized());
  }

  r.min_gap = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, std::size_t>> ranked;
  auto examine = [&](const Vector& x) {
    ++r.vectors_probed;
    const double g = f.gap(x);
    r.min_gap = std::min(r.min_gap, g);
    const bool violation = g < -kViolationMargin;
    const bool pencil_negative = f.scaled_pencil_min(x, grid) < -kViolationMargin;
    if (violation != pencil_negative) r.pencil_consistent = false;
    if (violation && !r.witness) r.witness = x;
    return g;
  };
  for (std::size_t i = 0; i < probes.size(); ++i) ranked.emplace_back(examine(probes[i]), i);

  if (!r.witness) {
    std::sort(ranked.begin(), ranked.end());
    const std::size_t starts = std::min<std::size_t>(3, ranked.size());
    for (std::size_t i = 0; i < starts && !r.witness; ++i) {
      examine(descend(f, probes[ranked[i].second], budget.descent_iterations));
    }
  }

  if (r.witness) {
    r.pass = false;
    const Matrix& T = t.data();
    const Vector& x = *r.witness;
    const double a = (T.transpose() * (T * x)).squaredNorm();
    r.witness_lhs = a * a;
    r.witness_rhs = (T * (T * (T * x))).squaredNorm() * (T * x).squaredNorm();
  }
  return r;
}

InvarianceReport invariance_reducing_check(const DenseMatrix& t, const Subspace& s) {
  if (s.basis.rows() != t.n()) throw MatrixError(MatrixErrorKind::DimensionMismatch, "subspace and operator differ");
  InvarianceReport r;
  const Matrix& T = t.data();
  const double tol = s.tolerance * std::max(1.0, t.norm());
  r.t_defect = op_norm(orth_complement_projector_times(s.basis, T * s.basis));
  r.tstar_defect = op_norm(orth_complement_projector_times(s.basis, T.transpose() * s.basis));
  r.t_invariant = r.t_defect <= tol;
  r.tstar_invariant = r.tstar_defect <= tol;
  r.reducing = r.t_invariant && r.tstar_invariant;
  if (s.dim() > 0) {
    Eigen::JacobiSVD<Matrix> svd(T * s.basis);
    const auto& sv = svd.singularValues();
    r.ratio_max = sv(0);
    r.ratio_spread = sv(0) - sv(sv.size() - 1);
  }
  return r;
}

namespace {

Residual split(const Matrix& T, const Matrix& qm, const Matrix& qr, double norm) {
  Residual res;
  res.norm = norm;
  res.basis_m = qm;
  res.basis_rest = qr;
  res.U = qm.transpose() * T * qm / norm;
  res.A = qm.transpose() * T * qr;
  res.C = qr.transpose() * T * qm;
  res.B = qr.transpose() * T * qr;
  return res;
}

double unitary_defect(const Matrix& u) {
  return op_norm(u.transpose() * u - Matrix::Identity(u.cols(), u.cols()));
}

}  // namespace

BlockDecomposition block_decompose(const DenseMatrix& t, const QuasiBudget& budget) {
  const auto sd = singular_data(t);
  const double norm = sd.clusters.front().value;
  if (norm == 0) throw MatrixError(MatrixErrorKind::ZeroOperator, "T = 0");
  const auto m = sd.clusters.front().multiplicity;
  BlockDecomposition out;
  out.blocks = split(t.data(), sd.right_vectors.leftCols(m), sd.right_vectors.rightCols(t.n() - m), norm);
  auto& c = out.check;
  c.hypothesis_holds = quasi_star_matrix_test(t, budget).pass;
  c.vacuous = !c.hypothesis_holds;
  c.u_isometry_defect = unitary_defect(out.blocks.U);
  c.lower_left_norm = op_norm(out.blocks.C);
  c.ustar_a_norm = op_norm(out.blocks.U.transpose() * out.blocks.A);
  c.b_norm = op_norm(out.blocks.B);
  c.b_norm_flagged = out.blocks.B.size() > 0 && c.b_norm >= norm - kStructuralTol;
  return out;
}

BlockForm peel_decomposition(const DenseMatrix& t) {
  const auto n = t.n();
  const Matrix& T = t.data();
  BlockForm form;
  Matrix W = Matrix::Identity(n, n);
  for (int stage = 1; W.cols() > 0; ++stage) {
    const DenseMatrix R(W.transpose() * T * W);
    const auto sd = singular_data(R);
    const double alpha = sd.clusters.front().value;
    if (alpha == 0) {
      form.blocks.push_back({0.0, Matrix::Identity(W.cols(), W.cols()), W});
      break;
    }
    const auto m = sd.clusters.front().multiplicity;
    const Matrix q = sd.right_vectors.leftCols(m);
    const Matrix qr = sd.right_vectors.rightCols(R.n() - m);
    const auto inv = invariance_reducing_check(R, Subspace{q});
    if (!inv.reducing) {
      form.residual = split(T, W * q, W * qr, alpha);
      form.stopped_at_stage = stage;
      break;
    }
    PeelBlock block{alpha, q.transpose() * R.data() * q / alpha, W * q};
    form.max_unitary_defect = std::max(form.max_unitary_defect, unitary_defect(block.U));
    form.blocks.push_back(std::move(block));
    W = W * qr;
  }
  form.reassembly_error = op_norm(T - reassemble(form, n));
  return form;
}

Matrix reassemble(const BlockForm& form, Eigen::Index n) {
  Matrix out = Matrix::Zero(n, n);
  for (const auto& b : form.blocks) out += b.basis * (b.alpha * b.U) * b.basis.transpose();
  if (form.residual) {
    const auto& r = *form.residual;
    const auto m = r.basis_m.cols();
    const auto k = r.basis_rest.cols();
    Matrix basis(n, m + k);
    basis << r.basis_m, r.basis_rest;
    Matrix blocks(m + k, m + k);
    blocks.topLeftCorner(m, m) = r.norm * r.U;
    blocks.topRightCorner(m, k) = r.A;
    blocks.bottomLeftCorner(k, m) = r.C;
    blocks.bottomRightCorner(k, k) = r.B;
    out += basis * blocks * basis.transpose();
  }
  return out;
}

NormalityReport normality_check(const DenseMatrix& t) {
  const Matrix& T = t.data();
  NormalityReport r;
  r.defect = (T.transpose() * T - T * T.transpose()).norm();
  r.normal = r.defect <= kStructuralTol * T.squaredNorm();
  r.smallest_singular_value = singular_data(t).smallest;
  r.invertible = r.smallest_singular_value > kStructuralTol;
  return r;
}

DenseMatrix shift_matrix(const ValidatedTree& tree) {
  if (!tree.is_finite()) throw std::invalid_argument("shift_matrix: tree has infinite rays");
  const auto vertices = tree.core_vertices();
  const auto n = static_cast<Eigen::Index>(vertices.size());
  Matrix m = Matrix::Zero(n, n);
  auto index_of = [&](const VertexId& v) {
    return static_cast<Eigen::Index>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
  };
  for (const auto& v : vertices) {
    const auto p = tree.parent(v);
    if (p) m(index_of(v), index_of(*p)) = to_double(*tree.weight(v));
  }
  return DenseMatrix(std::move(m));
}

Matrix random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1;
  }
  return q;
}

Subspace Construction::summand(std::size_t i) const {
  Eigen::Index start = 0;
  for (std::size_t k = 0; k < i; ++k) start += dims[k];
  return Subspace{W.middleCols(start, dims[i])};
}

Construction direct_sum_construction(std::mt19937_64& rng, Eigen::Index max_dim) {
  std::uniform_int_distribution<Eigen::Index> dim_dist(2, std::max<Eigen::Index>(2, max_dim));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Construction c;
  const auto n = dim_dist(rng);
  const auto blocks = std::uniform_int_distribution<Eigen::Index>(1, std::min<Eigen::Index>(4, n))(rng);

  // Random composition of n into `blocks` positive parts.
  std::vector<Eigen::Index> cuts;
  std::vector<Eigen::Index> all(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n - 1; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(all.begin(), all.end(), rng);
  cuts.assign(all.begin(), all.begin() + (blocks - 1));
  std::sort(cuts.begin(), cuts.end());
  Eigen::Index prev = 0;
  for (auto cut : cuts) {
    c.dims.push_back(cut - prev);
    prev = cut;
  }
  c.dims.push_back(n - prev);

  double alpha = 0.5 + unit(rng);
  std::vector<double> ascending;
  for (Eigen::Index i = 0; i < blocks; ++i) {
    ascending.push_back(alpha);
    alpha += 0.1 + 0.9 * unit(rng);
  }
  c.alphas.assign(ascending.rbegin(), ascending.rend());

  Matrix d = Matrix::Zero(n, n);
  Eigen::Index start = 0;
  for (std::size_t i = 0; i < c.dims.size(); ++i) {
    d.block(start, start, c.dims[i], c.dims[i]) = c.alphas[i] * random_orthogonal(c.dims[i], rng);
    start += c.dims[i];
  }
  c.W = random_orthogonal(n, rng);
  c.T = c.W * d * c.W.transpose();
  return c;
}

}  // namespace shiftlab
