#include "wgbh/solver.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

namespace wgbh {

namespace {

constexpr double kResidualTol = 1e-10;

double relative_residual(const SparseMat& m, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& b) {
  const double bn = b.norm();
  const double rn = (m * x - b).norm();
  return bn > 0.0 ? rn / bn : rn;
}

/// Jacobi-style preconditioner for the saddle-point blocks: the diagonal of
/// S on the w-block and a diagonal Schur estimate sum_i A_ij^2 / S_ii on the
/// u-block (whose own diagonal is zero).
class SaddleDiagonalPreconditioner {
 public:
  using Scalar = double;
  using StorageIndex = int;
  enum {
    ColsAtCompileTime = Eigen::Dynamic,
    MaxColsAtCompileTime = Eigen::Dynamic
  };

  SaddleDiagonalPreconditioner() = default;

  void set_split(int n_w) { n_w_ = n_w; }

  template <typename MatType>
  SaddleDiagonalPreconditioner& analyzePattern(const MatType&) {
    return *this;
  }

  template <typename MatType>
  SaddleDiagonalPreconditioner& factorize(const MatType& mat) {
    const int n = static_cast<int>(mat.rows());
    Eigen::VectorXd s_diag = Eigen::VectorXd::Zero(n_w_);
    for (int o = 0; o < mat.outerSize(); ++o)
      for (typename MatType::InnerIterator it(mat, o); it; ++it)
        if (it.row() == it.col() && it.row() < n_w_)
          s_diag(it.row()) = it.value();
    inv_diag_.setZero(n);
    for (int o = 0; o < mat.outerSize(); ++o)
      for (typename MatType::InnerIterator it(mat, o); it; ++it)
        if (it.row() < n_w_ && it.col() >= n_w_ && s_diag(it.row()) > 0.0)
          inv_diag_(it.col()) += it.value() * it.value() / s_diag(it.row());
    for (int i = 0; i < n_w_; ++i)
      inv_diag_(i) = s_diag(i) > 0.0 ? 1.0 / s_diag(i) : 1.0;
    for (int i = n_w_; i < n; ++i)
      inv_diag_(i) = inv_diag_(i) > 0.0 ? 1.0 / inv_diag_(i) : 1.0;
    ready_ = true;
    return *this;
  }

  template <typename MatType>
  SaddleDiagonalPreconditioner& compute(const MatType& mat) {
    return factorize(mat);
  }

  template <typename Rhs>
  Eigen::VectorXd solve(const Rhs& b) const {
    return inv_diag_.cwiseProduct(b);
  }

  Eigen::ComputationInfo info() const {
    return ready_ ? Eigen::Success : Eigen::NumericalIssue;
  }

 private:
  int n_w_ = 0;
  Eigen::VectorXd inv_diag_;
  bool ready_ = false;
};

}  // namespace

Solution solve(const Mesh& mesh, const DofMap& dm, const LinearSystem& sys,
               SolverMethod method) {
  const int n = sys.n_w + sys.n_u;
  if (sys.matrix.rows() != n || sys.rhs.size() != n)
    throw InvalidArgument("linear system has inconsistent dimensions");

  Eigen::VectorXd x(n);
  SolveStats stats;
  stats.n = n;

  if (method == SolverMethod::Direct) {
    Eigen::SparseLU<SparseMat> lu;
    lu.analyzePattern(sys.matrix);
    lu.factorize(sys.matrix);
    if (lu.info() != Eigen::Success)
      throw SolverError(
          "sparse LU factorization failed (" + lu.lastErrorMessage() +
          "); the assembled system should be nonsingular");
    x = lu.solve(sys.rhs);
    stats.method = "sparse-lu";
  } else {
    Eigen::MINRES<SparseMat, Eigen::Lower | Eigen::Upper,
                  SaddleDiagonalPreconditioner>
        minres;
    minres.preconditioner().set_split(sys.n_w);
    minres.setTolerance(1e-13);
    minres.setMaxIterations(20 * n);
    minres.compute(sys.matrix);
    x = minres.solve(sys.rhs);
    stats.method = "minres";
    stats.iterations = static_cast<int>(minres.iterations());
  }

  stats.residual_rel = relative_residual(sys.matrix, x, sys.rhs);
  if (!(stats.residual_rel <= kResidualTol))
    throw SolverError("algebraic residual " +
                      std::to_string(stats.residual_rel) +
                      " exceeds the 1e-10 contract");

  Solution sol;
  sol.w = unflatten(dm, x.head(sys.n_w));
  Eigen::VectorXd u_full = sys.lift;
  for (int r = 0; r < sys.n_u; ++r)
    u_full(dm.reduced_to_full[static_cast<std::size_t>(r)]) = x(sys.n_w + r);
  sol.u = unflatten(dm, u_full);
  sol.residual_rel = stats.residual_rel;
  sol.stats = std::move(stats);
  (void)mesh;
  return sol;
}

Eigen::VectorXd solve_spd(const SparseMat& matrix, const Eigen::VectorXd& rhs) {
  Eigen::SimplicialLDLT<SparseMat> ldlt;
  ldlt.compute(matrix);
  if (ldlt.info() != Eigen::Success)
    throw SolverError("LDLT factorization failed");
  if (ldlt.vectorD().minCoeff() <= 0.0)
    throw SolverError("matrix is not positive definite");
  const Eigen::VectorXd x = ldlt.solve(rhs);
  const double res = relative_residual(matrix, x, rhs);
  if (!(res <= kResidualTol))
    throw SolverError("SPD solve residual " + std::to_string(res) +
                      " exceeds the 1e-10 contract");
  return x;
}

}  // namespace wgbh
