// Copyright 2026 The temperlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "temperlab/analysis.hpp"
#include "temperlab/error.hpp"
#include "temperlab/log_math.hpp"

namespace temperlab {

namespace {

/// L = I - S in CSR form. The diagonal is the off-diagonal row mass of P, so
/// small gaps are not lost to cancellation in 1 - P(x, x).
struct SymLaplacian {
  std::vector<double> diag;
  std::vector<std::size_t> ptr{0};
  std::vector<std::size_t> col;
  std::vector<double> val;

  explicit SymLaplacian(const LumpedChain& chain) {
    const std::size_t n = chain.size();
    diag.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& t : chain.row(i)) {
        diag[i] += t.p;
        const double back = chain.probability(t.to, i);
        col.push_back(t.to);
        val.push_back(-std::sqrt(t.p * back));
      }
      ptr.push_back(col.size());
    }
  }

  std::size_t size() const { return diag.size(); }

  void apply(const double* x, double* y) const {
    for (std::size_t i = 0; i < size(); ++i) {
      double s = diag[i] * x[i];
      for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) s += val[k] * x[col[k]];
      y[i] = s;
    }
  }
};

double gap_of_laplacian_eigenvalue(double ell) { return std::min(ell, 2.0 - ell); }

Eigen::VectorXd sqrt_stationary(const LumpedChain& chain) {
  const double lz = log_sum_exp(chain.stationary_log());
  Eigen::VectorXd u(static_cast<Eigen::Index>(chain.size()));
  for (std::size_t i = 0; i < chain.size(); ++i) u[static_cast<Eigen::Index>(i)] = std::exp(0.5 * (chain.stationary_log()[i] - lz));
  return u / u.norm();
}

struct Ritz {
  double value = 0.0;
  double residual = 0.0;
  bool converged = false;
};

/// Thick-restart Lanczos with full reorthogonalization for one extreme
/// eigenvalue of L on the complement of u.
Ritz lanczos_extreme(const SymLaplacian& L, const Eigen::VectorXd& u, bool smallest, const SpectralOptions& opt) {
  const auto N = static_cast<Eigen::Index>(L.size());
  const Eigen::Index m = std::max<Eigen::Index>(2, std::min<Eigen::Index>(opt.krylov_dim, N - 1));
  const Eigen::Index keep = std::max<Eigen::Index>(1, m / 2);
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(N, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);

  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v0(N);
  for (Eigen::Index i = 0; i < N; ++i) v0[i] = gauss(rng);
  v0 -= u * u.dot(v0);
  V.col(0) = v0 / v0.norm();

  Eigen::VectorXd w(N);
  Ritz best;
  Eigen::Index start = 0;
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    Eigen::Index filled = m;
    double last_beta = 0.0;
    for (Eigen::Index j = start; j < m; ++j) {
      L.apply(V.col(j).data(), w.data());
      Eigen::VectorXd h = V.leftCols(j + 1).transpose() * w;
      w -= V.leftCols(j + 1) * h;
      w -= u * u.dot(w);
      const Eigen::VectorXd h2 = V.leftCols(j + 1).transpose() * w;
      w -= V.leftCols(j + 1) * h2;
      w -= u * u.dot(w);
      h += h2;
      H.col(j).head(j + 1) = h;
      H.row(j).head(j + 1) = h.transpose();
      const double beta = w.norm();
      if (beta < 1e-13) {
        filled = j + 1;  // invariant subspace: Ritz values are exact
        last_beta = 0.0;
        break;
      }
      V.col(j + 1) = w / beta;
      if (j + 1 < m) {
        H(j + 1, j) = H(j, j + 1) = beta;
      } else {
        last_beta = beta;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(filled, filled));
    const Eigen::VectorXd& theta = es.eigenvalues();
    const Eigen::MatrixXd& Y = es.eigenvectors();
    const Eigen::Index target = smallest ? 0 : filled - 1;
    best.value = theta[target];
    best.residual = std::abs(last_beta * Y(filled - 1, target));
    if (best.residual <= opt.tol || filled < m) {
      best.converged = true;
      return best;
    }
    const Eigen::Index first = smallest ? 0 : filled - keep;
    const Eigen::MatrixXd kept = V.leftCols(filled) * Y.middleCols(first, keep);
    const Eigen::VectorXd resid = V.col(m);
    H.setZero();
    V.leftCols(keep) = kept;
    V.col(keep) = resid;
    for (Eigen::Index i = 0; i < keep; ++i) {
      H(i, i) = theta[first + i];
      H(i, keep) = H(keep, i) = last_beta * Y(filled - 1, first + i);
    }
    start = keep;
  }
  return best;
}

}  // namespace

const char* eigen_method_name(EigenMethod m) {
  switch (m) {
    case EigenMethod::kDense: return "dense";
    case EigenMethod::kIterative: return "iterative";
    case EigenMethod::kAuto: return "auto";
  }
  return "auto";
}

std::vector<double> stationary(const LumpedChain& chain, double tol) {
  const double lz = log_sum_exp(chain.stationary_log());
  std::vector<double> pi(chain.size());
  for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = std::exp(chain.stationary_log()[i] - lz);
  const std::vector<double> next = chain.apply_left(pi);
  double err = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) err = std::max(err, std::abs(next[i] - pi[i]));
  if (err > tol) {
    std::ostringstream os;
    os << chain.builder() << ": stationary vector fails pi P = pi (max deviation " << err << ")";
    throw Error(ErrorCode::kInconsistentChain, os.str());
  }
  return pi;
}

SpectralReport spectral_gap(const LumpedChain& chain, const SpectralOptions& options) {
  SpectralReport rep;
  const std::size_t N = chain.size();
  require(N >= 1, ErrorCode::kInvalidArgument, "spectral_gap on an empty chain");
  if (N == 1) {
    rep.gap = 1.0;
    rep.lambda1_abs = 0.0;
    rep.lambda_second = 0.0;
    rep.lambda_min = 1.0;
    return rep;
  }
  const SymLaplacian L(chain);
  const Eigen::VectorXd u = sqrt_stationary(chain);
  EigenMethod method = options.method;
  if (method == EigenMethod::kAuto) method = N <= options.dense_threshold ? EigenMethod::kDense : EigenMethod::kIterative;
  // Tiny chains have no room for a Krylov basis.
  if (N <= 3) method = EigenMethod::kDense;
  rep.method = method;

  double ell_small = 0.0;
  double ell_large = 0.0;
  if (method == EigenMethod::kDense) {
    const auto n = static_cast<Eigen::Index>(N);
    Eigen::MatrixXd A = 4.0 * u * u.transpose();
    for (std::size_t i = 0; i < N; ++i) {
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += L.diag[i];
      for (std::size_t k = L.ptr[i]; k < L.ptr[i + 1]; ++k)
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(L.col[k])) += L.val[k];
    }
    // The unit eigenvalue of P moves to 4, above the rest of the spectrum of L.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    ell_small = es.eigenvalues()[0];
    ell_large = es.eigenvalues()[n - 2];
    rep.residual = 0.0;
    rep.converged = true;
  } else {
    const Ritz lo = lanczos_extreme(L, u, true, options);
    const Ritz hi = lanczos_extreme(L, u, false, options);
    ell_small = lo.value;
    ell_large = hi.value;
    rep.residual = std::max(lo.residual, hi.residual);
    rep.converged = lo.converged && hi.converged;
    if (!rep.converged) {
      std::ostringstream os;
      os << "iterative eigensolver did not converge on " << chain.builder() << " (" << N
         << " states): residual " << rep.residual << " above " << options.tol;
      throw Error(ErrorCode::kNotConverged, os.str());
    }
  }
  ell_small = std::max(ell_small, 0.0);
  rep.lambda_second = 1.0 - ell_small;
  rep.lambda_min = 1.0 - ell_large;
  rep.gap = std::clamp(std::min(gap_of_laplacian_eigenvalue(ell_small), gap_of_laplacian_eigenvalue(ell_large)), 0.0,
                       1.0);
  rep.lambda1_abs = 1.0 - rep.gap;
  return rep;
}

}  // namespace temperlab
