#pragma once

// Sparse 4-party state vectors over (C^d)^4, bipartitions of the four
// parties, matricization, Schmidt values, and reduced density matrices.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "ubblab/core.hpp"

namespace ubblab {

// ---------------------------------------------------------------------------
// Bipartition of parties {1,2,3,4} into two nonempty groups. Canonical form:
// group A is the side containing party 1. Exactly seven canonical values.

class Bipartition {
 public:
  // mask bit (p-1) set <=> party p in group A; canonicalized on construction.
  explicit Bipartition(unsigned mask) {
    if (mask == 0 || mask >= 0xF) throw IndexOutOfRange("bipartition mask must be a proper nonempty subset");
    mask_ = (mask & 1u) ? mask : (~mask & 0xFu);
  }

  unsigned mask_a() const { return mask_; }
  unsigned mask_b() const { return ~mask_ & 0xFu; }

  Bipartition complement() const { return Bipartition(mask_b()); }

  std::vector<int> parties_a() const { return parties_of(mask_a()); }
  std::vector<int> parties_b() const { return parties_of(mask_b()); }

  std::string name() const {
    std::string s;
    for (int p : parties_a()) s += static_cast<char>('0' + p);
    s += '|';
    for (int p : parties_b()) s += static_cast<char>('0' + p);
    return s;
  }

  bool operator==(const Bipartition& o) const { return mask_ == o.mask_; }
  bool operator!=(const Bipartition& o) const { return mask_ != o.mask_; }

  static const std::vector<Bipartition>& all() {
    static const std::vector<Bipartition> v = {
        Bipartition(0b0001), Bipartition(0b0011), Bipartition(0b0101),
        Bipartition(0b1001), Bipartition(0b0111), Bipartition(0b1011),
        Bipartition(0b1101)};
    return v;
  }

  static std::vector<int> parties_of(unsigned mask) {
    std::vector<int> ps;
    for (int p = 1; p <= 4; ++p)
      if (mask & (1u << (p - 1))) ps.push_back(p);
    return ps;
  }

 private:
  unsigned mask_;
};

// ---------------------------------------------------------------------------
// Ket: finite map from index quadruples to complex amplitudes. Terms are kept
// in lexicographic order of (i1,i2,i3,i4) so every downstream matrix is
// reproducible bit-for-bit. Immutable in spirit: operations return new Kets.

class Ket {
 public:
  explicit Ket(int d) : d_(d) {
    if (d < 1) throw IndexOutOfRange("local dimension must be positive");
  }

  static Ket basis_state(int d, int i1, int i2, int i3, int i4) {
    Ket k(d);
    k.add_term(i1, i2, i3, i4, cplx(1.0, 0.0));
    return k;
  }

  int d() const { return d_; }

  void add_term(int i1, int i2, int i3, int i4, cplx amp) {
    check_index(i1);
    check_index(i2);
    check_index(i3);
    check_index(i4);
    long key = encode(i1, i2, i3, i4);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (std::abs(amp) >= kStorageEps) terms_.emplace(key, amp);
    } else {
      it->second += amp;
      if (std::abs(it->second) < kStorageEps) terms_.erase(it);
    }
  }

  const std::map<long, cplx>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  cplx amplitude(int i1, int i2, int i3, int i4) const {
    auto it = terms_.find(encode(i1, i2, i3, i4));
    return it == terms_.end() ? cplx(0.0) : it->second;
  }

  long encode(int i1, int i2, int i3, int i4) const {
    return ((static_cast<long>(i1) * d_ + i2) * d_ + i3) * d_ + i4;
  }

  std::array<int, 4> decode(long key) const {
    std::array<int, 4> idx{};
    idx[3] = static_cast<int>(key % d_);
    key /= d_;
    idx[2] = static_cast<int>(key % d_);
    key /= d_;
    idx[1] = static_cast<int>(key % d_);
    idx[0] = static_cast<int>(key / d_);
    return idx;
  }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& [k, a] : terms_) s += std::norm(a);
    return s;
  }
  double norm() const { return std::sqrt(squared_norm()); }

  Ket scaled(cplx c) const {
    Ket r(d_);
    for (const auto& [k, a] : terms_) {
      cplx v = a * c;
      if (std::abs(v) >= kStorageEps) r.terms_.emplace(k, v);
    }
    return r;
  }

  Ket normalized() const {
    double n = norm();
    if (n == 0.0) throw ZeroState("cannot normalize the zero state");
    return scaled(cplx(1.0 / n, 0.0));
  }

  Ket operator+(const Ket& o) const {
    require_same_d(o);
    Ket r = *this;
    for (const auto& [k, a] : o.terms_) {
      auto it = r.terms_.find(k);
      if (it == r.terms_.end()) {
        if (std::abs(a) >= kStorageEps) r.terms_.emplace(k, a);
      } else {
        it->second += a;
        if (std::abs(it->second) < kStorageEps) r.terms_.erase(it);
      }
    }
    return r;
  }

  Ket operator-(const Ket& o) const { return *this + o.scaled(cplx(-1.0)); }

  void require_same_d(const Ket& o) const {
    if (d_ != o.d_) throw DimensionMismatch("kets live in different local dimensions");
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= d_) throw IndexOutOfRange("index component outside [0, d)");
  }

  int d_;
  std::map<long, cplx> terms_;
};

// ---------------------------------------------------------------------------
// Basic operations

inline cplx inner(const Ket& u, const Ket& v) {
  u.require_same_d(v);
  const auto& a = u.terms();
  const auto& b = v.terms();
  cplx s(0.0);
  if (a.size() <= b.size()) {
    for (const auto& [k, au] : a) {
      auto it = b.find(k);
      if (it != b.end()) s += std::conj(au) * it->second;
    }
  } else {
    for (const auto& [k, bv] : b) {
      auto it = a.find(k);
      if (it != a.end()) s += std::conj(it->second) * bv;
    }
  }
  return s;
}

// Product state from four single-party vectors of dimension d.
inline Ket tensor4(const std::vector<cplx>& f1, const std::vector<cplx>& f2,
                   const std::vector<cplx>& f3, const std::vector<cplx>& f4) {
  std::size_t d = f1.size();
  if (f2.size() != d || f3.size() != d || f4.size() != d)
    throw DimensionMismatch("tensor4 factors must share one dimension");
  Ket k(static_cast<int>(d));
  for (std::size_t i1 = 0; i1 < d; ++i1) {
    if (std::abs(f1[i1]) < kStorageEps) continue;
    for (std::size_t i2 = 0; i2 < d; ++i2) {
      if (std::abs(f2[i2]) < kStorageEps) continue;
      for (std::size_t i3 = 0; i3 < d; ++i3) {
        if (std::abs(f3[i3]) < kStorageEps) continue;
        for (std::size_t i4 = 0; i4 < d; ++i4) {
          cplx amp = f1[i1] * f2[i2] * f3[i3] * f4[i4];
          if (std::abs(amp) >= kStorageEps)
            k.add_term(static_cast<int>(i1), static_cast<int>(i2),
                       static_cast<int>(i3), static_cast<int>(i4), amp);
        }
      }
    }
  }
  return k;
}

// Matricization with explicit party orders. Rows are indexed by the
// multi-index over `row_parties` (in the given order, lexicographic),
// columns likewise over `col_parties`. The two lists must partition {1,..,4}.
inline Eigen::MatrixXcd matricize_ordered(const Ket& k,
                                          const std::vector<int>& row_parties,
                                          const std::vector<int>& col_parties) {
  unsigned seen = 0;
  for (int p : row_parties) seen |= 1u << (p - 1);
  for (int p : col_parties) seen |= 1u << (p - 1);
  if (seen != 0xFu || row_parties.size() + col_parties.size() != 4)
    throw IndexOutOfRange("row/col parties must partition {1,2,3,4}");
  long rows = 1, cols = 1;
  for (std::size_t i = 0; i < row_parties.size(); ++i) rows *= k.d();
  for (std::size_t i = 0; i < col_parties.size(); ++i) cols *= k.d();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  for (const auto& [key, amp] : k.terms()) {
    auto idx = k.decode(key);
    long r = 0, c = 0;
    for (int p : row_parties) r = r * k.d() + idx[p - 1];
    for (int p : col_parties) c = c * k.d() + idx[p - 1];
    m(r, c) = amp;
  }
  return m;
}

// Canonical matricization under a bipartition: rows over group A parties in
// increasing party order, columns over the complement, both lexicographic.
inline Eigen::MatrixXcd matricize(const Ket& k, const Bipartition& bp) {
  return matricize_ordered(k, bp.parties_a(), bp.parties_b());
}

inline Eigen::VectorXd schmidt_values(const Ket& k, const Bipartition& bp) {
  if (k.is_zero()) throw ZeroState("Schmidt values of the zero state");
  Eigen::MatrixXcd m = matricize(k, bp);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

// Product test used artifact-wide: sigma2/sigma1 <= 1e-10 under the cut.
inline bool is_product_across(const Ket& k, const Bipartition& bp,
                              double tol = 1e-10) {
  Eigen::VectorXd sv = schmidt_values(k, bp);
  if (sv.size() < 2) return true;
  return sv(1) <= tol * sv(0);
}

// ---------------------------------------------------------------------------
// Reduced density matrices

struct DensityMatrix {
  std::vector<int> kept_parties;  // increasing
  Eigen::MatrixXcd mat;           // d^(#kept) square, Hermitian

  double trace() const { return mat.trace().real(); }
};

// Partial trace of the projector onto a list of orthonormal kets, keeping the
// parties in `keep_mask`. Trace of the result equals the number of kets.
inline DensityMatrix partial_trace(const std::vector<Ket>& kets,
                                   unsigned keep_mask,
                                   double orth_tol = 1e-10) {
  if (kets.empty()) throw EmptySubspace("partial_trace of an empty projector");
  if (keep_mask == 0 || keep_mask >= 0xF)
    throw IndexOutOfRange("keep set must be a proper nonempty subset");
  for (std::size_t i = 0; i < kets.size(); ++i) {
    for (std::size_t j = i; j < kets.size(); ++j) {
      cplx ov = inner(kets[i], kets[j]);
      double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(ov - expect) > orth_tol)
        throw NonOrthonormalInput("partial_trace input kets are not orthonormal");
    }
  }
  std::vector<int> keep = Bipartition::parties_of(keep_mask);
  std::vector<int> traced = Bipartition::parties_of(~keep_mask & 0xFu);
  long dim = 1;
  for (std::size_t i = 0; i < keep.size(); ++i) dim *= kets[0].d();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const Ket& k : kets) {
    Eigen::MatrixXcd m = matricize_ordered(k, keep, traced);
    rho += m * m.adjoint();
  }
  return DensityMatrix{keep, rho};
}

}  // namespace ubblab
