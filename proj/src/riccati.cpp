#include "quasihelm/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lapack_shim.hpp"

namespace quasihelm {

int QepSpectrum::count_inside_unit_disk() const {
  int c = 0;
  for (int i = 0; i < alphas.size(); ++i)
    if (std::abs(alphas[i]) < std::abs(betas[i])) ++c;
  return c;
}

namespace {

double abs_lambda(Complex alpha, Complex beta) {
  double a = std::abs(alpha), b = std::abs(beta);
  if (b == 0.0) return std::numeric_limits<double>::infinity();
  return a / b;
}

// Chordal distance between lambda_j and 1/lambda_i on the Riemann sphere,
// written projectively: lambda_j ~ (a_j, b_j), 1/lambda_i ~ (b_i, a_i).
double chordal_inversion_distance(Complex ai, Complex bi, Complex aj,
                                  Complex bj) {
  double ni = std::sqrt(std::norm(ai) + std::norm(bi));
  double nj = std::sqrt(std::norm(aj) + std::norm(bj));
  return std::abs(ai * aj - bi * bj) / (ni * nj);
}

}  // namespace

QepSpectrum solve_qep(const DtnQuad& T, const QepOptions& options) {
  const int N = T.size();
  if (T.T01.rows() != N || T.T10.rows() != N || T.T11.rows() != N ||
      T.T00.cols() != N || T.T01.cols() != N || T.T10.cols() != N ||
      T.T11.cols() != N)
    throw ConfigError("DtN matrices must be square and of equal size");

  // B = diag(I, T10); monitor the conditioning of T10 when asked to.
  if (options.b_singularity_tol > 0.0) {
    Eigen::JacobiSVD<CMatrix> svd(T.T10);
    double smin = svd.singularValues()(N - 1);
    double smax = svd.singularValues()(0);
    if (!(smax > 0.0) || smin < options.b_singularity_tol * smax)
      throw NumericalError(
          "riccati", "linearization matrix B numerically singular (T10 smallest "
                     "singular value " +
                         std::to_string(smin) + ", largest " +
                         std::to_string(smax) + ")");
  }

  const int n2 = 2 * N;
  CMatrix A = CMatrix::Zero(n2, n2);
  CMatrix B = CMatrix::Zero(n2, n2);
  A.topRightCorner(N, N) = CMatrix::Identity(N, N);
  A.bottomLeftCorner(N, N) = -T.T01;
  A.bottomRightCorner(N, N) = -(T.T00 + T.T11);
  B.topLeftCorner(N, N) = CMatrix::Identity(N, N);
  B.bottomRightCorner(N, N) = T.T10;

  double normA = A.norm();
  double normB = B.norm();

  CMatrix Awork = A, Bwork = B;
  CVector alpha(n2), beta(n2);
  CMatrix vr(n2, n2);
  lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'V', n2, Awork.data(), n2,
                                  Bwork.data(), n2, alpha.data(), beta.data(),
                                  nullptr, 1, vr.data(), n2);
  if (info != 0)
    throw NumericalError("riccati",
                         "zggev failed with info=" + std::to_string(info));

  // Normalize the projective pairs and order by (|lambda|, arg lambda).
  std::vector<int> idx(n2);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < n2; ++i) {
    double n = std::sqrt(std::norm(alpha[i]) + std::norm(beta[i]));
    if (n == 0.0)
      throw NumericalError("riccati", "indeterminate eigenvalue (alpha = beta = 0)");
    alpha[i] /= n;
    beta[i] /= n;
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    double ma = abs_lambda(alpha[a], beta[a]), mb = abs_lambda(alpha[b], beta[b]);
    if (ma != mb) return ma < mb;
    return std::arg(alpha[a] * std::conj(beta[a])) <
           std::arg(alpha[b] * std::conj(beta[b]));
  });

  CMatrix AV = A * vr;
  CMatrix BV = B * vr;

  QepSpectrum spec;
  spec.alphas.resize(n2);
  spec.betas.resize(n2);
  spec.eigenvalues.resize(n2);
  spec.eigenvectors.resize(N, n2);
  for (int i = 0; i < n2; ++i) {
    int k = idx[i];
    spec.alphas[i] = alpha[k];
    spec.betas[i] = beta[k];
    spec.eigenvalues[i] =
        beta[k] == Complex(0.0)
            ? Complex(std::numeric_limits<double>::infinity(), 0.0)
            : alpha[k] / beta[k];

    // Projective backward error || beta A z - alpha B z ||.
    double rnum = (beta[k] * AV.col(k) - alpha[k] * BV.col(k)).norm();
    double rden = (std::abs(beta[k]) * normA + std::abs(alpha[k]) * normB) *
                  vr.col(k).norm();
    if (rnum > options.eigen_residual_tol * rden)
      throw NumericalError("riccati", "eigenpair residual " +
                                          std::to_string(rnum / rden) +
                                          " above tolerance");

    // z = (psi, lambda psi): read psi off the dominant block.
    CVector psi = vr.col(k).head(N);
    if (psi.norm() < 1e-8 * vr.col(k).norm()) psi = vr.col(k).tail(N);
    spec.eigenvectors.col(i) = psi / psi.norm();
  }

  double min_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n2; ++i) {
    double m = abs_lambda(spec.alphas[i], spec.betas[i]);
    min_dist = std::min(min_dist, std::abs(m - 1.0));
  }
  spec.min_unit_circle_distance = min_dist;
  if (min_dist < options.unit_circle_margin)
    throw NumericalError("riccati",
                         "eigenvalue within " + std::to_string(min_dist) +
                             " of the unit circle (near-zero absorption)");

  double worst = 0.0;
  for (int i = 0; i < n2; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n2; ++j)
      best = std::min(best, chordal_inversion_distance(spec.alphas[i],
                                                       spec.betas[i],
                                                       spec.alphas[j],
                                                       spec.betas[j]));
    worst = std::max(worst, best);
  }
  spec.worst_pairing_defect = worst;
  if (worst > options.pairing_tol)
    throw NumericalError("riccati", "(lambda, 1/lambda) pairing defect " +
                                        std::to_string(worst) +
                                        " above tolerance");
  return spec;
}

PropagationOperator select_and_build(const QepSpectrum& spectrum,
                                     const SelectOptions& options) {
  const int n2 = static_cast<int>(spectrum.alphas.size());
  const int N = n2 / 2;
  std::vector<int> inside;
  for (int i = 0; i < n2; ++i)
    if (std::abs(spectrum.alphas[i]) < std::abs(spectrum.betas[i]))
      inside.push_back(i);
  if (static_cast<int>(inside.size()) != N) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n2; ++i) {
      double m = abs_lambda(spectrum.alphas[i], spectrum.betas[i]);
      nearest = std::min(nearest, std::abs(m - 1.0));
    }
    throw NumericalError(
        "riccati", "unit-disk selection failed: " + std::to_string(inside.size()) +
                       " of " + std::to_string(n2) +
                       " eigenvalues inside the unit disk (nearest distance to "
                       "the circle " +
                       std::to_string(nearest) + ")");
  }

  PropagationOperator P;
  P.lambdas.resize(N);
  P.Psi.resize(N, N);
  for (int i = 0; i < N; ++i) {
    P.lambdas[i] = spectrum.eigenvalues[inside[i]];
    P.Psi.col(i) = spectrum.eigenvectors.col(inside[i]);
  }

  Eigen::JacobiSVD<CMatrix> svd(P.Psi);
  double smin = svd.singularValues()(N - 1), smax = svd.singularValues()(0);
  P.cond_Psi = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(P.cond_Psi < options.cond_threshold))
    throw NumericalError("riccati",
                         "diagonalizability assumption violated (cond(Psi) = " +
                             std::to_string(P.cond_Psi) + ")");

  P.psi_lu = Eigen::PartialPivLU<CMatrix>(P.Psi);
  P.P = P.psi_lu.solve(CMatrix::Identity(N, N));  // Psi^{-1}
  P.P = P.Psi * P.lambdas.asDiagonal() * P.P;     // Psi diag Psi^{-1}
  return P;
}

double PropagationOperator::spectral_radius() const {
  double r = 0.0;
  for (int i = 0; i < lambdas.size(); ++i) r = std::max(r, std::abs(lambdas[i]));
  return r;
}

CVector PropagationOperator::apply_power(const CVector& phi, long l) const {
  if (l == 0) return phi;
  CVector c = psi_lu.solve(phi);
  for (int i = 0; i < lambdas.size(); ++i) c[i] *= std::pow(lambdas[i], double(l));
  return Psi * c;
}

double spectral_radius(const PropagationOperator& P) { return P.spectral_radius(); }

double riccati_residual(const DtnQuad& T, const CMatrix& P) {
  CMatrix R = T.T10 * P * P + (T.T00 + T.T11) * P + T.T01;
  return R.norm() / T.T01.norm();
}

}  // namespace quasihelm
