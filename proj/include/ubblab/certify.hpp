#pragma once

// Theorem-level verification suites. Each suite returns a CheckResult with a
// status, the metrics backing the verdict, and (on failure) a witness that
// reproduces the problem.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ubblab/core.hpp"
#include "ubblab/families.hpp"
#include "ubblab/ket.hpp"
#include "ubblab/linalg.hpp"
#include "ubblab/prover.hpp"
#include "ubblab/report.hpp"

namespace ubblab {

using VerifyConfig = ReportConfig;

namespace detail {

inline double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

// Rank of a Hermitian PSD matrix by eigenvalue count.
inline int hermitian_rank(const Eigen::MatrixXcd& H, double tau_rel) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double lmax = ev(ev.size() - 1);
  if (lmax <= kRankAbsFloor) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tau_rel * lmax) ++r;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Orthogonality

inline CheckResult verify_orthogonality(const StateFamily& fam, double tol) {
  double t0 = detail::now_seconds();
  CheckResult res;
  res.name = "orthogonality";
  res.anchor = "Theorem 1";
  if (fam.members.empty()) throw EmptySubspace("empty family");
  std::vector<double> norms;
  norms.reserve(fam.members.size());
  for (const Member& m : fam.members) norms.push_back(m.ket.norm());
  double worst = 0.0;
  std::string worst_pair;
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    for (std::size_t j = i + 1; j < fam.members.size(); ++j) {
      double ov = std::abs(inner(fam.members[i].ket, fam.members[j].ket));
      double rel = ov / (norms[i] * norms[j]);
      if (rel > worst) {
        worst = rel;
        worst_pair = fam.members[i].label + " / " + fam.members[j].label;
      }
    }
  res.metric("pairs", static_cast<double>(fam.members.size() *
                                          (fam.members.size() - 1) / 2));
  res.metric("worst_overlap", worst);
  res.require(worst <= tol, "overlap " + std::to_string(worst) +
                                " between " + worst_pair);
  res.elapsed = detail::now_seconds() - t0;
  return res;
}

// ---------------------------------------------------------------------------
// Biseparability

// All bipartitions under which each eligible member passes the product test.
inline std::map<std::string, std::vector<std::string>> biseparability_witnesses(
    const StateFamily& fam, double tol) {
  std::map<std::string, std::vector<std::string>> out;
  for (const Member& m : fam.members) {
    if (m.role != Role::UbbMember && m.role != Role::StopperState &&
        m.role != Role::CenterState && m.role != Role::PsiPlus)
      continue;
    std::vector<std::string> cuts;
    for (const Bipartition& bp : Bipartition::all())
      if (is_product_across(m.ket, bp, tol)) cuts.push_back(bp.name());
    out[m.label] = std::move(cuts);
  }
  return out;
}

inline CheckResult verify_biseparability(const StateFamily& fam, double tol) {
  double t0 = detail::now_seconds();
  CheckResult res;
  res.name = "biseparability";
  res.anchor = "Theorem 1";
  auto wit = biseparability_witnesses(fam, tol);
  long checked = 0;
  for (const auto& [label, cuts] : wit) {
    ++checked;
    if (cuts.empty())
      res.require(false, label + ": no bipartition passes the product test");
  }
  res.metric("members_checked", static_cast<double>(checked));
  res.elapsed = detail::now_seconds() - t0;
  return res;
}

// ---------------------------------------------------------------------------
// Counts

inline CheckResult verify_counts(int d, const VerifyConfig& cfg) {
  double t0 = detail::now_seconds();
  CheckResult res;
  res.name = "counts";
  res.anchor = "Theorems 1 and 4";
  StateFamily fam = build_ubb(d);
  long n = static_cast<long>(fam.members.size());
  long expect = ubb_expected_count(d);
  long layers = num_layers(d);
  res.metric("ubb_count", static_cast<double>(n));
  res.metric("ubb_expected", static_cast<double>(expect));
  res.require(n == expect, "UBB member count " + std::to_string(n) +
                               " != " + std::to_string(expect));

  StateFamily ges = build_ges_basis(d);
  long gn = 0;
  for (const Member& m : ges.members)
    if (m.role == Role::GesBasis) ++gn;
  res.metric("ges_dim", static_cast<double>(gn));
  res.require(gn == 8 * layers, "GES basis size != 8*floor((d-1)/2)");
  res.metric("psi7_dim", static_cast<double>(7 * layers - 1));

  // linear independence: Gram eigenvalues of the stacked members
  Eigen::MatrixXcd G(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j) {
      cplx v = inner(fam.members[i].ket, fam.members[j].ket);
      G(i, j) = v;
      G(j, i) = std::conj(v);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  double lmax = es.eigenvalues()(n - 1);
  long rank = 0;
  for (long i = 0; i < n; ++i)
    if (std::sqrt(std::max(es.eigenvalues()(i), 0.0)) >
        cfg.tol_rank * std::sqrt(lmax))
      ++rank;
  res.metric("stacked_rank", static_cast<double>(rank));
  res.require(rank == n, "stacked rank " + std::to_string(rank) +
                             " != member count " + std::to_string(n));
  res.elapsed = detail::now_seconds() - t0;
  return res;
}

// ---------------------------------------------------------------------------
// Complement basis shared by the ges / unextendibility / distillability suites

struct ComplementBasis {
  std::vector<Ket> kets;  // orthonormal
  std::vector<std::string> labels;
  bool used_fallback = false;
  double literal_gram_dev = 0.0;                // of the literal basis
  std::map<std::string, double> g8_overlaps;    // |<G8_l|G8_l'>|, literal
};

inline ComplementBasis complement_basis(int d) {
  StateFamily ges = build_ges_basis(d);
  ComplementBasis out;
  for (const Member& m : ges.members)
    if (m.role == Role::GesBasis) {
      out.kets.push_back(m.ket);
      out.labels.push_back(m.label);
    }
  const std::size_t n = out.kets.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double dev = std::abs(inner(out.kets[i], out.kets[j]) -
                            cplx(i == j ? 1.0 : 0.0));
      out.literal_gram_dev = std::max(out.literal_gram_dev, dev);
      if (i != j && out.labels[i].rfind("G8", 0) == 0 &&
          out.labels[j].rfind("G8", 0) == 0)
        out.g8_overlaps[out.labels[i] + "*" + out.labels[j]] =
            std::abs(inner(out.kets[i], out.kets[j]));
    }
  if (out.literal_gram_dev > 1e-8) {
    // replace the G8 family by the re-orthonormalized fallback
    std::vector<Ket> kets;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
      if (out.labels[i].rfind("G8", 0) != 0) {
        kets.push_back(out.kets[i]);
        labels.push_back(out.labels[i]);
      }
    auto fb = build_fallback_g8(d);
    for (std::size_t t = 0; t < fb.size(); ++t) {
      kets.push_back(fb[t]);
      labels.push_back("G8fb_" + std::to_string(t + 1));
    }
    out.kets = std::move(kets);
    out.labels = std::move(labels);
    out.used_fallback = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// GES suite

inline CheckResult verify_ges(int d, const VerifyConfig& cfg) {
  double t0 = detail::now_seconds();
  CheckResult res;
  res.name = "ges";
  res.anchor = "Theorem 1";
  ComplementBasis cb = complement_basis(d);
  res.metric("basis_dim", static_cast<double>(cb.kets.size()));
  res.metric("literal_gram_dev", cb.literal_gram_dev);
  res.metric("used_fallback", cb.used_fallback ? 1.0 : 0.0);
  for (const auto& [k, v] : cb.g8_overlaps) res.metric("overlap_" + k, v);
  if (cb.used_fallback)
    res.witness.push_back(
        "literal cross-layer G8 family is not orthonormal; overlaps reported "
        "as metrics, checks run on the re-orthonormalized fallback basis");

  // (a) orthonormality of the basis in use
  double gram_dev = 0.0;
  for (std::size_t i = 0; i < cb.kets.size(); ++i)
    for (std::size_t j = i; j < cb.kets.size(); ++j)
      gram_dev = std::max(gram_dev, std::abs(inner(cb.kets[i], cb.kets[j]) -
                                             cplx(i == j ? 1.0 : 0.0)));
  res.metric("gram_dev", gram_dev);
  res.require(gram_dev <= 1e-8, "basis Gram deviation " + std::to_string(gram_dev));

  // (b) orthogonality to every UBB member
  StateFamily ubb = build_ubb(d);
  double worst_ubb = 0.0;
  std::string worst_pair;
  for (std::size_t i = 0; i < cb.kets.size(); ++i)
    for (const Member& m : ubb.members) {
      double ov = std::abs(inner(cb.kets[i], m.ket)) / m.ket.norm();
      if (ov > worst_ubb) {
        worst_ubb = ov;
        worst_pair = cb.labels[i] + " / " + m.label;
      }
    }
  res.metric("worst_ubb_overlap", worst_ubb);
  res.require(worst_ubb <= 1e-10,
              "complement not orthogonal to UBB: " + worst_pair);

  // (c) genuine entanglement of basis states and random combinations
  SplitMix64 rng(cfg.seed);
  double min_ratio = std::numeric_limits<double>::infinity();
  auto ratio_all_cuts = [&](const Ket& k) {
    double mn = std::numeric_limits<double>::infinity();
    for (const Bipartition& bp : Bipartition::all()) {
      Eigen::VectorXd sv = schmidt_values(k, bp);
      mn = std::min(mn, sv(1) / sv(0));
    }
    return mn;
  };
  for (std::size_t i = 0; i < cb.kets.size(); ++i) {
    double r = ratio_all_cuts(cb.kets[i]);
    if (r < min_ratio) min_ratio = r;
    if (r <= cfg.tol_ges)
      res.require(false, cb.labels[i] + " nearly product, sigma ratio " +
                             std::to_string(r));
  }
  for (int t = 0; t < cfg.random_trials; ++t) {
    Ket v(d);
    for (const Ket& b : cb.kets) v = v + b.scaled(rng.normal_complex());
    v = v.normalized();
    double r = ratio_all_cuts(v);
    if (r < min_ratio) min_ratio = r;
    if (r <= cfg.tol_ges)
      res.require(false, "random combination (trial " + std::to_string(t) +
                             ") nearly product, sigma ratio " +
                             std::to_string(r));
  }
  res.metric("min_sigma_ratio", min_ratio);

  // (d) d=3: the closed-form basis spans the same subspace
  if (d == 3) {
    StateFamily thm1 = build_ges_basis_thm1();
    Eigen::MatrixXcd X(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        X(i, j) = inner(thm1.members[i].ket, cb.kets[j]);
    Eigen::VectorXd sv = singular_values(X);
    res.metric("cross_sv_min", sv(sv.size() - 1));
    res.metric("cross_sv_max", sv(0));
    res.require(std::abs(sv(0) - 1.0) <= 1e-8 &&
                    std::abs(sv(sv.size() - 1) - 1.0) <= 1e-8,
                "closed-form and general bases span different subspaces");
  }
  res.elapsed = detail::now_seconds() - t0;
  return res;
}

// ---------------------------------------------------------------------------
// Unextendibility

enum class UnextendMode { Symbolic, Numeric, Both };

// Numeric search for a near-product state inside the span of `basis`
// (orthonormal kets). Returns Fail with the witness coefficients if one is
// found, Warn when the evidence is only the optimizer floor.
inline CheckResult verify_unextendibility_numeric(const std::vector<Ket>& basis,
                                                  const VerifyConfig& cfg) {
  double t0 = detail::now_seconds();
  CheckResult res;
  res.name = "unextendibility";
  res.anchor = "Theorem 1 and Appendix A";
  double overall_min = std::numeric_limits<double>::infinity();
  int cut_idx = 0;
  for (const Bipartition& bp : Bipartition::all()) {
    auto r = min_second_singular(basis, bp, cfg.restarts,
                                 cfg.seed + 101 * (++cut_idx));
    res.metric("min_sigma2_" + bp.name(), r.min_sigma2);
    overall_min = std::min(overall_min, r.min_sigma2);
    if (r.min_sigma2 <= 1e-6) {
      std::ostringstream os;
      os << "near-product state in the span under " << bp.name() << ": c = [";
      for (int j = 0; j < r.coefficients.size(); ++j) {
        if (j) os << ", ";
        os << r.coefficients(j).real() << (r.coefficients(j).imag() < 0 ? "-" : "+")
           << std::abs(r.coefficients(j).imag()) << "i";
      }
      os << "]";
      res.require(false, os.str());
    }
  }
  res.metric("min_sigma2", overall_min);
  if (res.status != CheckStatus::Fail) {
    if (overall_min > 0.01)
      res.status = CheckStatus::Warn;  // numeric evidence only
    else
      res.status = CheckStatus::Inconclusive;
  }
  res.elapsed = detail::now_seconds() - t0;
  return res;
}

inline CheckResult verify_unextendibility(int d, UnextendMode mode,
                                          const VerifyConfig& cfg) {
  double t0 = detail::now_seconds();
  CheckResult res;
  res.name = "unextendibility";
  res.anchor = "Theorem 1 and Appendix A";
  bool symbolic_closed = false;
  if (mode == UnextendMode::Symbolic || mode == UnextendMode::Both) {
    SymbolicReport rep = check_unextendibility_symbolic(d);
    long branches = 0;
    int closed = 0;
    for (const auto& e : rep.entries) {
      branches += e.outcome.branches_explored;
      if (e.outcome.closed)
        ++closed;
      else
        for (const auto& ob : e.outcome.open_branches)
          res.witness.push_back("open branch in " + e.bipartition + ": " + ob);
    }
    res.metric("closed_cuts", closed);
    res.metric("branches_explored", static_cast<double>(branches));
    symbolic_closed = (closed == 7);
  }
  if (mode == UnextendMode::Numeric || mode == UnextendMode::Both) {
    ComplementBasis cb = complement_basis(d);
    CheckResult num = verify_unextendibility_numeric(cb.kets, cfg);
    for (const auto& [k, v] : num.metrics) res.metric(k, v);
    for (const auto& w : num.witness) res.witness.push_back(w);
    if (num.status == CheckStatus::Fail) {
      res.status = CheckStatus::Fail;
    } else if (symbolic_closed) {
      res.status = CheckStatus::Pass;
    } else {
      res.status = num.status;  // Warn (floor met) or Inconclusive
    }
  } else {
    res.status = symbolic_closed ? CheckStatus::Pass : CheckStatus::Inconclusive;
  }
  res.elapsed = detail::now_seconds() - t0;
  return res;
}

// ---------------------------------------------------------------------------
// Strong nonlocality

// Solution space of the orthogonality-preserving constraints for a POVM
// element on the three parties other than `party`.
inline HermitianNullspace nonlocality_nullspace(const StateFamily& fam,
                                                int party,
                                                double rel_tol = kNullspaceEigTol) {
  if (party < 1 || party > 4) throw IndexOutOfRange("party outside 1..4");
  unsigned measured = 0xFu & ~(1u << (party - 1));
  int D = fam.d * fam.d * fam.d;
  HermitianConstraintAccumulator acc(D);
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    for (std::size_t j = i + 1; j < fam.members.size(); ++j)
      acc.add_constraint(
          constraint_matrix(fam.members[i].ket, fam.members[j].ket, measured));
  auto ns = acc.nullspace(rel_tol);
  return HermitianNullspace{ns.eigenvalues, ns.basis};
}

inline CheckResult verify_strong_nonlocality(int d,
                                             const std::vector<int>& parties,
                                             const VerifyConfig& cfg) {
  if (d >= 5 && !cfg.long_running)
    throw LongRunningRequired(
        "nonlocality check for d >= 5 requires the long-running flag");
  double t0 = detail::now_seconds();
  CheckResult res;
  res.name = "nonlocality";
  res.anchor = "Theorem 2";
  StateFamily fam = build_ubb(d);
  for (int p : parties) {
    HermitianNullspace ns = nonlocality_nullspace(fam, p);
    std::string tag = "party" + std::to_string(p);
    res.metric("dim_" + tag, static_cast<double>(ns.basis.size()));
    res.require(ns.basis.size() == 1,
                tag + ": nullspace dimension " + std::to_string(ns.basis.size()) +
                    " != 1");
    if (ns.basis.size() == 1) {
      int D = d * d * d;
      double overlap =
          std::abs(ns.basis[0].trace()) / std::sqrt(static_cast<double>(D));
      res.metric("identity_overlap_" + tag, overlap);
      res.require(overlap >= 1.0 - 1e-8,
                  tag + ": solution not proportional to the identity");
    }
    // spectral gap above the nullspace, for diagnostics
    if (ns.eigenvalues.size() > 1)
      res.metric("lambda2_" + tag, ns.eigenvalues(1));
  }
  res.elapsed = detail::now_seconds() - t0;
  return res;
}

// ---------------------------------------------------------------------------
// Distillability

enum class DistillSubspace { FullComplement, PsiPlusSeven };

// Orthonormal basis of {v in span of the normalized psi_+ states (indices
// 1..7, all layers) : <S|v> = 0}. Dimension 7*floor((d-1)/2) - 1.
inline std::vector<Ket> psi_plus_seven_basis(int d) {
  int L = num_layers(d);
  std::vector<Ket> psit;
  Ket s = build_stopper(d);
  Eigen::VectorXd sv(7 * L);
  for (int l = 1; l <= L; ++l)
    for (int i = 1; i <= 7; ++i) {
      Ket p = build_psi(d, l, i, +1).normalized();
      sv(psit.size()) = inner(s, p).real();
      psit.push_back(p);
    }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(sv);
  Eigen::MatrixXd Q = qr.householderQ();
  std::vector<Ket> out;
  for (int j = 1; j < 7 * L; ++j) {
    Ket v(d);
    for (int i = 0; i < 7 * L; ++i)
      if (std::abs(Q(i, j)) > 1e-16) v = v + psit[i].scaled(Q(i, j));
    out.push_back(v);
  }
  return out;
}

namespace detail {

// The nine designated 3-party vectors on parties (2,3,4) for d = 3, as
// 27-dimensional columns indexed by (i2*3+i3)*3+i4.
inline Eigen::MatrixXcd nine_reduced_vectors() {
  auto idx = [](int i2, int i3, int i4) { return (i2 * 3 + i3) * 3 + i4; };
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(27, 9);
  auto set = [&](int col, std::initializer_list<std::array<int, 3>> terms) {
    for (const auto& t : terms) M(idx(t[0], t[1], t[2]), col) = 1.0;
  };
  set(0, {{0, 0, 0}});
  set(1, {{2, 2, 2}});
  set(2, {{0, 1, 2}, {0, 2, 2}, {0, 0, 1}, {0, 0, 2}});
  set(3, {{2, 0, 0}, {2, 1, 0}, {2, 2, 0}, {2, 2, 1}});
  set(4, {{1, 0, 0}, {1, 1, 0}, {2, 0, 0}, {2, 1, 0}});
  set(5, {{1, 2, 0}, {2, 2, 0}, {0, 1, 0}, {0, 2, 0},
          {1, 2, 1}, {2, 2, 1}, {0, 1, 1}, {0, 2, 1}});
  set(6, {{0, 1, 2}, {0, 2, 2}, {1, 1, 2}, {1, 2, 2}});
  set(7, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}, {2, 1, 1},
          {0, 0, 2}, {1, 0, 2}, {2, 0, 2}, {2, 1, 2}});
  set(8, {{1, 1, 1}});
  return M;
}

}  // namespace detail

inline CheckResult verify_distillability(int d, DistillSubspace sub,
                                         const VerifyConfig& cfg) {
  double t0 = detail::now_seconds();
  CheckResult res;
  res.anchor = "Theorem 3";
  std::vector<Ket> basis;
  if (sub == DistillSubspace::FullComplement) {
    res.name = "distillability_full_complement";
    basis = complement_basis(d).kets;
  } else {
    res.name = "distillability_psi_plus_seven";
    basis = psi_plus_seven_basis(d);
  }
  const int n = static_cast<int>(basis.size());
  res.metric("projector_rank", n);

  auto rank_traced = [&](unsigned keep_mask) {
    DensityMatrix rho = partial_trace(basis, keep_mask);
    return detail::hermitian_rank(rho.mat, cfg.tol_rank);
  };

  if (sub == DistillSubspace::FullComplement) {
    for (int p = 1; p <= 4; ++p) {
      unsigned keep = 0xFu & ~(1u << (p - 1));
      int r = rank_traced(keep);
      res.metric("rank_Tr" + std::to_string(p), r);
      res.require(r >= n + 1, "rank(Tr_" + std::to_string(p) +
                                  ") = " + std::to_string(r) + " < " +
                                  std::to_string(n + 1));
    }
    // unclaimed 2-2 cuts: ranks reported, nothing asserted
    for (unsigned keep : {0b0011u, 0b0101u, 0b1001u}) {
      Bipartition bp(keep);
      res.metric("rank_keep_" + bp.name(), rank_traced(keep));
    }
    if (d == 3) {
      int r9 = numeric_rank(detail::nine_reduced_vectors(), cfg.tol_rank);
      res.metric("nine_vector_rank", r9);
      res.require(r9 == 9, "nine reduced vectors have rank " +
                               std::to_string(r9) + " != 9");
    }
  } else {
    for (const Bipartition& bp : Bipartition::all()) {
      int ra = rank_traced(bp.mask_b());  // trace group B, keep group A
      int rb = rank_traced(bp.mask_a());
      res.metric("rank_" + bp.name() + "_keepA", ra);
      res.metric("rank_" + bp.name() + "_keepB", rb);
      if (std::max(ra, rb) < n + 1) {
        // The rank condition is only a sufficient certificate: falling short
        // leaves distillability across this cut uncertified, not refuted.
        // (This happens for d >= 5, where the per-layer counting collides
        // across layers on the 12|34 and 14|23 cuts.)
        res.status = worse(res.status, CheckStatus::Inconclusive);
        res.witness.push_back(
            "cut " + bp.name() + ": max marginal rank " +
            std::to_string(std::max(ra, rb)) + " < " + std::to_string(n + 1) +
            "; rank certificate inapplicable, distillability uncertified");
      }
    }
  }
  res.elapsed = detail::now_seconds() - t0;
  return res;
}

// ---------------------------------------------------------------------------
// Suite runner

inline const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> v = {
      "counts",          "orthogonality", "biseparability", "ges",
      "unextendibility", "nonlocality",   "distillability"};
  return v;
}

inline VerificationReport run_suites(int d,
                                     const std::vector<std::string>& suites,
                                     const VerifyConfig& cfg) {
  double t0 = detail::now_seconds();
  std::vector<std::string> selected;
  for (const std::string& s : all_suite_names()) {
    bool want = false;
    for (const std::string& q : suites)
      if (q == s || q == "all") want = true;
    if (want) selected.push_back(s);
  }
  for (const std::string& q : suites) {
    bool known = (q == "all");
    for (const std::string& s : all_suite_names())
      if (q == s) known = true;
    if (!known) throw IndexOutOfRange("unknown suite: " + q);
  }

  VerificationReport rep;
  rep.d = d;
  rep.config = cfg;
  for (const std::string& s : selected) {
    if (s == "counts") {
      rep.checks.push_back(verify_counts(d, cfg));
    } else if (s == "orthogonality") {
      rep.checks.push_back(verify_orthogonality(build_ubb(d), cfg.tol_orth));
    } else if (s == "biseparability") {
      rep.checks.push_back(verify_biseparability(build_ubb(d), cfg.tol_product));
    } else if (s == "ges") {
      rep.checks.push_back(verify_ges(d, cfg));
    } else if (s == "unextendibility") {
      rep.checks.push_back(verify_unextendibility(d, UnextendMode::Both, cfg));
    } else if (s == "nonlocality") {
      try {
        rep.checks.push_back(
            verify_strong_nonlocality(d, {1, 2, 3, 4}, cfg));
      } catch (const LongRunningRequired& e) {
        CheckResult cr;
        cr.name = "nonlocality";
        cr.anchor = "Theorem 2";
        cr.status = CheckStatus::Inconclusive;
        cr.witness.push_back(e.what());
        rep.checks.push_back(std::move(cr));
      }
    } else if (s == "distillability") {
      rep.checks.push_back(
          verify_distillability(d, DistillSubspace::FullComplement, cfg));
      rep.checks.push_back(
          verify_distillability(d, DistillSubspace::PsiPlusSeven, cfg));
    }
  }
  rep.total_elapsed = detail::now_seconds() - t0;
  return rep;
}

}  // namespace ubblab
