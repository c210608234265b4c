#pragma once

// Dense complex kernels: singular values, numerical rank, and nullspaces of
// linear constraint systems over the real vector space of Hermitian operators.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "ubblab/core.hpp"
#include "ubblab/ket.hpp"

namespace ubblab {

inline constexpr double kRankTolDefault = 1e-9;
inline constexpr double kRankAbsFloor = 1e-12;
// Relative eigenvalue threshold for the constraint Gram matrix. The dense
// eigensolver's noise floor sits near eps*lambda_max (~1e-13 relative at the
// sizes used here) while the physical spectrum starts at O(1), so 1e-9 leaves
// orders of magnitude on both sides.
inline constexpr double kNullspaceEigTol = 1e-9;

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw NonFinite("matrix has non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

inline int numeric_rank(const Eigen::MatrixXcd& m,
                        double tau_rel = kRankTolDefault) {
  Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0 || sv(0) <= kRankAbsFloor) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tau_rel * sv(0)) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// Real coordinates on the space of DxD Hermitian operators. Layout: the D
// diagonal entries first, then for each strict upper-triangle pair (k<l) in
// lexicographic order the real and imaginary coordinate, both scaled by
// sqrt(2) so that the map is a linear isometry for the Frobenius inner
// product. The identity operator has coordinates (1,...,1,0,...,0).

class HermitianCoordinates {
 public:
  explicit HermitianCoordinates(int D) : D_(D) {}

  int D() const { return D_; }
  int dim() const { return D_ * D_; }

  int diag_index(int k) const { return k; }
  int offdiag_re_index(int k, int l) const { return D_ + 2 * pair_index(k, l); }
  int offdiag_im_index(int k, int l) const { return D_ + 2 * pair_index(k, l) + 1; }

  Eigen::VectorXd to_coords(const Eigen::MatrixXcd& H) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim());
    const double s = std::sqrt(2.0);
    for (int k = 0; k < D_; ++k) x(diag_index(k)) = H(k, k).real();
    for (int k = 0; k < D_; ++k)
      for (int l = k + 1; l < D_; ++l) {
        x(offdiag_re_index(k, l)) = s * H(k, l).real();
        x(offdiag_im_index(k, l)) = s * H(k, l).imag();
      }
    return x;
  }

  Eigen::MatrixXcd to_operator(const Eigen::VectorXd& x) const {
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D_, D_);
    const double s = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < D_; ++k) H(k, k) = x(diag_index(k));
    for (int k = 0; k < D_; ++k)
      for (int l = k + 1; l < D_; ++l) {
        cplx v(s * x(offdiag_re_index(k, l)), s * x(offdiag_im_index(k, l)));
        H(k, l) = v;
        H(l, k) = std::conj(v);
      }
    return H;
  }

  Eigen::VectorXd identity_coords() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim());
    for (int k = 0; k < D_; ++k) x(diag_index(k)) = 1.0;
    return x;
  }

 private:
  int pair_index(int k, int l) const {
    // index of (k,l), k<l, in lexicographic strict upper-triangle order
    return k * D_ - k * (k + 1) / 2 + (l - k - 1);
  }

  int D_;
};

// ---------------------------------------------------------------------------
// Nullspace of a homogeneous linear constraint system on Hermitian operators.
// Each constraint is the complex equation sum_{kl} H_{kl} C_{kl} = 0, i.e. two
// real linear equations on HermitianCoordinates. The normal (Gram) matrix of
// the constraint rows is accumulated; the solution space is spanned by its
// eigenvectors with eigenvalue <= rel_tol * lambda_max. Accumulation is
// order-independent up to roundoff, so constraint ordering does not matter.

class HermitianConstraintAccumulator {
 public:
  explicit HermitianConstraintAccumulator(int D)
      : coords_(D), gram_(Eigen::MatrixXd::Zero(coords_.dim(), coords_.dim())),
        count_(0) {}

  int D() const { return coords_.D(); }
  long count() const { return count_; }

  // C is a sparse matrix given as (k,l) -> value.
  void add_constraint(const std::map<std::pair<int, int>, cplx>& C) {
    // Build the complex row r with f(H) = sum_alpha x_alpha r_alpha, then add
    // Re(r)Re(r)^T + Im(r)Im(r)^T restricted to the row support.
    std::map<int, cplx> row;
    const double s = 1.0 / std::sqrt(2.0);
    for (const auto& [kl, v] : C) {
      auto [k, l] = kl;
      if (k == l) {
        row[coords_.diag_index(k)] += v;
      } else {
        int a = std::min(k, l), b = std::max(k, l);
        cplx vab = (k < l) ? v : cplx(0.0);
        cplx vba = (k < l) ? cplx(0.0) : v;
        // f(E_re)= (C_ab + C_ba)/sqrt2, f(E_im)= i(C_ab - C_ba)/sqrt2
        row[coords_.offdiag_re_index(a, b)] += s * (vab + vba);
        row[coords_.offdiag_im_index(a, b)] += cplx(0.0, 1.0) * s * (vab - vba);
      }
    }
    std::vector<std::pair<int, cplx>> r(row.begin(), row.end());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) {
        double g = r[i].second.real() * r[j].second.real() +
                   r[i].second.imag() * r[j].second.imag();
        gram_(r[i].first, r[j].first) += g;
      }
    ++count_;
  }

  struct NullspaceResult {
    Eigen::VectorXd eigenvalues;             // ascending
    std::vector<Eigen::MatrixXcd> basis;     // orthonormal Hermitian solutions
    std::vector<Eigen::VectorXd> basis_coords;
  };

  NullspaceResult nullspace(double rel_tol = kNullspaceEigTol) const {
    NullspaceResult out;
    if (count_ == 0) {
      // No constraints: the full space.
      out.eigenvalues = Eigen::VectorXd::Zero(coords_.dim());
      for (int a = 0; a < coords_.dim(); ++a) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(coords_.dim());
        x(a) = 1.0;
        out.basis_coords.push_back(x);
        out.basis.push_back(coords_.to_operator(x));
      }
      return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_);
    out.eigenvalues = es.eigenvalues();
    double lmax = out.eigenvalues(out.eigenvalues.size() - 1);
    double thresh = std::max(rel_tol * std::max(lmax, 0.0), 0.0);
    for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
      if (out.eigenvalues(i) <= thresh) {
        Eigen::VectorXd x = es.eigenvectors().col(i);
        out.basis_coords.push_back(x);
        out.basis.push_back(coords_.to_operator(x));
      }
    }
    return out;
  }

 private:
  HermitianCoordinates coords_;
  Eigen::MatrixXd gram_;
  long count_;
};

// The constraint <u| (I_unmeasured ⊗ H) |v> = 0 reduced to the sparse matrix
// C with C_{kl} = sum_j conj(u_{j,k}) v_{j,l}; j runs over the unmeasured
// multi-index, k,l over the measured group (parties in increasing order).
inline std::map<std::pair<int, int>, cplx> constraint_matrix(
    const Ket& u, const Ket& v, unsigned measured_mask) {
  u.require_same_d(v);
  std::vector<int> measured = Bipartition::parties_of(measured_mask);
  std::vector<int> rest = Bipartition::parties_of(~measured_mask & 0xFu);
  auto split = [&](const Ket& k) {
    // j -> list of (measured-index, amplitude)
    std::map<long, std::vector<std::pair<int, cplx>>> by_j;
    for (const auto& [key, amp] : k.terms()) {
      auto idx = k.decode(key);
      long j = 0;
      for (int p : rest) j = j * k.d() + idx[p - 1];
      long m = 0;
      for (int p : measured) m = m * k.d() + idx[p - 1];
      by_j[j].emplace_back(static_cast<int>(m), amp);
    }
    return by_j;
  };
  auto ju = split(u);
  auto jv = split(v);
  std::map<std::pair<int, int>, cplx> C;
  for (const auto& [j, us] : ju) {
    auto it = jv.find(j);
    if (it == jv.end()) continue;
    for (const auto& [k, ua] : us)
      for (const auto& [l, va] : it->second) C[{k, l}] += std::conj(ua) * va;
  }
  return C;
}

struct HermitianNullspace {
  Eigen::VectorXd eigenvalues;
  std::vector<Eigen::MatrixXcd> basis;
};

// Orthonormal basis of Hermitian H on the measured group solving
// <u|(I ⊗ H)|v> = 0 for every listed pair. An empty pair list yields the
// full space of dimension D^2.
inline HermitianNullspace hermitian_constraint_nullspace(
    int d, const std::vector<std::pair<Ket, Ket>>& pairs,
    unsigned measured_mask, double rel_tol = kNullspaceEigTol) {
  int D = 1;
  for (std::size_t i = 0; i < Bipartition::parties_of(measured_mask).size(); ++i)
    D *= d;
  HermitianConstraintAccumulator acc(D);
  for (const auto& [u, v] : pairs) {
    if (u.d() != d || v.d() != d)
      throw DimensionMismatch("constraint kets do not match the system dimension");
    acc.add_constraint(constraint_matrix(u, v, measured_mask));
  }
  auto ns = acc.nullspace(rel_tol);
  return HermitianNullspace{ns.eigenvalues, ns.basis};
}

// ---------------------------------------------------------------------------
// Heuristic minimization of the second singular value of the matricization of
// a unit-norm combination of orthonormal basis kets. Local descent with
// backtracking from seeded random unit starts. The returned value is the
// re-evaluated sigma2 at the returned coefficients, never an optimistic bound.

struct MinSigma2Result {
  double min_sigma2;
  Eigen::VectorXcd coefficients;
};

inline MinSigma2Result min_second_singular(const std::vector<Ket>& basis,
                                           const Bipartition& bp, int restarts,
                                           std::uint64_t seed) {
  if (basis.empty()) throw EmptySubspace("min_second_singular of empty subspace");
  if (restarts < 1) throw IndexOutOfRange("restarts must be >= 1");
  const int n = static_cast<int>(basis.size());
  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(basis.size());
  for (const Ket& k : basis) mats.push_back(matricize(k, bp));

  auto combo = [&](const Eigen::VectorXcd& c) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(mats[0].rows(), mats[0].cols());
    for (int j = 0; j < n; ++j) m += c(j) * mats[j];
    return m;
  };
  auto sigma2 = [&](const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
  };

  SplitMix64 rng(seed);
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best_c = Eigen::VectorXcd::Zero(n);
  best_c(0) = 1.0;

  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXcd c(n);
    for (int j = 0; j < n; ++j) c(j) = rng.normal_complex();
    c /= c.norm();
    double f = sigma2(combo(c));
    double step = 0.5;
    for (int it = 0; it < 120 && f > 1e-13; ++it) {
      // gradient of sigma2 w.r.t. the coefficients via the singular pair
      Eigen::MatrixXcd m = combo(c);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
          m, Eigen::ComputeThinU | Eigen::ComputeThinV);
      if (svd.singularValues().size() < 2) break;
      Eigen::VectorXcd u2 = svd.matrixU().col(1);
      Eigen::VectorXcd v2 = svd.matrixV().col(1);
      Eigen::VectorXcd grad(n);
      for (int j = 0; j < n; ++j) grad(j) = std::conj(u2.dot(mats[j] * v2));
      double gn = grad.norm();
      if (gn < 1e-14) break;
      bool moved = false;
      while (step > 1e-12) {
        Eigen::VectorXcd cand = c - step * grad;
        double cn = cand.norm();
        if (cn < 1e-12) {
          step *= 0.5;
          continue;
        }
        cand /= cn;
        double fc = sigma2(combo(cand));
        if (fc < f - 1e-15) {
          c = cand;
          f = fc;
          moved = true;
          step = std::min(step * 1.5, 1.0);
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (f < best) {
      best = f;
      best_c = c;
    }
  }
  // re-evaluation: report sigma2 at the argmin exactly
  double value = sigma2(combo(best_c));
  return MinSigma2Result{value, best_c};
}

}  // namespace ubblab
