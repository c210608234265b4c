// Acceptance gate: one line per criterion, exit 0 iff all pass.

#include <cstdio>
#include <functional>
#include <string>

#include "ubblab/certify.hpp"

using namespace ubblab;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& name,
               const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (exception: ") + e.what() + ")";
  }
  std::printf("[%s] %d. %s%s\n", ok ? "PASS" : "FAIL", n, name.c_str(),
              note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

int main() {
  VerifyConfig cfg;  // defaults: seed 20250815, 200 restarts, 100 trials

  criterion(1, "counts and linear independence (d = 3, 4, 5)", [&] {
    const long expect[] = {73, 248, 609};
    for (int d : {3, 4, 5}) {
      CheckResult r = verify_counts(d, cfg);
      if (r.status != CheckStatus::Pass) return false;
      if (r.metrics.at("ubb_count") != expect[d - 3]) return false;
      if (r.metrics.at("stacked_rank") != expect[d - 3]) return false;
    }
    return true;
  });

  criterion(2, "pairwise orthogonality <= 1e-12 (d = 3, 4, 5)", [&] {
    for (int d : {3, 4, 5}) {
      CheckResult r = verify_orthogonality(build_ubb(d), 1e-12);
      if (r.status != CheckStatus::Pass) return false;
    }
    return true;
  });

  criterion(3, "biseparability of every member, with correct witnesses", [&] {
    for (int d : {3, 4, 5})
      if (verify_biseparability(build_ubb(d), 1e-10).status !=
          CheckStatus::Pass)
        return false;
    // spot-check the d = 3 product structures
    auto wit = biseparability_witnesses(build_psi_plus_family(3), 1e-10);
    auto has = [&](const std::string& l, const std::string& c) {
      const auto& v = wit.at(l);
      return std::find(v.begin(), v.end(), c) != v.end();
    };
    return has("psiPlus_U1_l1", "12|34") && has("psiPlus_U5_l1", "14|23") &&
           biseparability_witnesses(build_ubb(3), 1e-10).at("stopper").size() ==
               7;
  });

  criterion(4, "genuinely entangled complement basis (d = 3 and 5)", [&] {
    CheckResult r3 = verify_ges(3, cfg);
    if (r3.status != CheckStatus::Pass) return false;
    if (!approx(r3.metrics.at("cross_sv_min"), 1.0, 1e-8)) return false;
    if (!approx(r3.metrics.at("cross_sv_max"), 1.0, 1e-8)) return false;
    if (r3.metrics.at("worst_ubb_overlap") > 1e-10) return false;
    if (r3.metrics.at("min_sigma_ratio") <= 1e-6) return false;
    CheckResult r5 = verify_ges(5, cfg);
    if (r5.status != CheckStatus::Pass) return false;
    if (r5.metrics.at("used_fallback") != 1.0) return false;
    bool reported = false;  // the literal cross-layer overlaps are surfaced
    for (const auto& [k, v] : r5.metrics)
      if (k.rfind("overlap_G8", 0) == 0) reported = true;
    return reported && r5.metrics.at("worst_ubb_overlap") <= 1e-10 &&
           r5.metrics.at("min_sigma_ratio") > 1e-6;
  });

  criterion(5, "unextendibility: symbolic closure + numeric floor (d = 3)",
            [&] {
              SymbolicReport rep = check_unextendibility_symbolic(3);
              if (!rep.all_closed() || rep.entries.size() != 7) return false;
              // pattern matrices agree with a random numeric instantiation
              auto [basis, symbols] = prover_basis(3);
              SplitMix64 rng(cfg.seed);
              std::vector<cplx> vals(symbols.size());
              for (auto& v : vals) v = rng.normal_complex();
              Ket combo(3);
              for (std::size_t s = 0; s < basis.size(); ++s)
                combo = combo + basis[s].scaled(vals[s]);
              for (const Bipartition& bp : Bipartition::all()) {
                PatternMatrix p = derive_pattern(basis, symbols, bp);
                auto [rows, cols] = pattern_party_orders(bp);
                Eigen::MatrixXcd m = matricize_ordered(combo, rows, cols);
                for (int r = 0; r < p.rows; ++r)
                  for (int c = 0; c < p.cols; ++c)
                    if (std::abs(m(r, c) - vals[p.at(r, c)]) > 1e-12)
                      return false;
              }
              CheckResult num =
                  verify_unextendibility_numeric(complement_basis(3).kets, cfg);
              return num.status == CheckStatus::Warn &&
                     num.metrics.at("min_sigma2") > 0.01;
            });

  criterion(6, "strong nonlocality: identity-only solutions (d = 3 and 4)",
            [&] {
              for (int d : {3, 4}) {
                CheckResult r = verify_strong_nonlocality(d, {1, 2, 3, 4}, cfg);
                if (r.status != CheckStatus::Pass) return false;
                for (int p = 1; p <= 4; ++p) {
                  if (r.metrics.at("dim_party" + std::to_string(p)) != 1.0)
                    return false;
                  if (r.metrics.at("identity_overlap_party" +
                                   std::to_string(p)) < 1.0 - 1e-8)
                    return false;
                }
              }
              return true;
            });

  criterion(7, "distillability rank conditions (d = 3, 4, 5)", [&] {
    CheckResult r3 = verify_distillability(3, DistillSubspace::FullComplement, cfg);
    if (r3.status != CheckStatus::Pass) return false;
    if (r3.metrics.at("nine_vector_rank") != 9.0) return false;
    for (int d : {3, 4, 5}) {
      if (verify_distillability(d, DistillSubspace::FullComplement, cfg)
              .status != CheckStatus::Pass)
        return false;
      CheckResult p7 = verify_distillability(d, DistillSubspace::PsiPlusSeven, cfg);
      if (d <= 4) {
        if (p7.status != CheckStatus::Pass) return false;
      } else {
        // at d = 5 the 12|34 and 14|23 marginals stop one rank short of the
        // certificate; the check must surface exactly that, with the
        // remaining cuts still certified
        if (p7.status != CheckStatus::Inconclusive) return false;
        int n = static_cast<int>(p7.metrics.at("projector_rank"));
        if (std::max(p7.metrics.at("rank_1|234_keepA"),
                     p7.metrics.at("rank_1|234_keepB")) < n + 1)
          return false;
        if (std::max(p7.metrics.at("rank_13|24_keepA"),
                     p7.metrics.at("rank_13|24_keepB")) < n + 1)
          return false;
        bool flagged = false;
        for (const auto& w : p7.witness)
          if (w.find("12|34") != std::string::npos) flagged = true;
        if (!flagged) return false;
      }
    }
    return true;
  });

  criterion(8, "property invariants (matricization, trace, residuals, prover)",
            [&] {
              SplitMix64 rng(cfg.seed + 1);
              // matricization is inner-product consistent
              for (int rep = 0; rep < 5; ++rep) {
                Ket u(3), v(3);
                for (int t = 0; t < 12; ++t) {
                  u.add_term(static_cast<int>(rng.next() % 3),
                             static_cast<int>(rng.next() % 3),
                             static_cast<int>(rng.next() % 3),
                             static_cast<int>(rng.next() % 3),
                             rng.normal_complex());
                  v.add_term(static_cast<int>(rng.next() % 3),
                             static_cast<int>(rng.next() % 3),
                             static_cast<int>(rng.next() % 3),
                             static_cast<int>(rng.next() % 3),
                             rng.normal_complex());
                }
                cplx ip = inner(u, v);
                for (const Bipartition& bp : Bipartition::all()) {
                  cplx frob =
                      (matricize(u, bp).adjoint() * matricize(v, bp)).trace();
                  if (std::abs(frob - ip) > 1e-12) return false;
                }
              }
              // partial trace conserves the trace
              std::vector<Ket> basis = complement_basis(3).kets;
              for (const Bipartition& bp : Bipartition::all()) {
                DensityMatrix rho = partial_trace(basis, bp.mask_a());
                if (std::abs(rho.trace() - static_cast<double>(basis.size())) >
                    1e-8)
                  return false;
              }
              // nonlocality nullspace solutions satisfy every constraint
              StateFamily fam = build_ubb(3);
              HermitianNullspace ns = nonlocality_nullspace(fam, 1);
              if (ns.basis.size() != 1) return false;
              for (std::size_t i = 0; i < fam.members.size(); ++i)
                for (std::size_t j = i + 1; j < fam.members.size(); ++j) {
                  auto C = constraint_matrix(fam.members[i].ket,
                                             fam.members[j].ket, 0b1110);
                  cplx s(0.0);
                  for (const auto& [kl, v] : C)
                    s += ns.basis[0](kl.first, kl.second) * v;
                  if (std::abs(s) > 1e-8) return false;
                }
              // prover soundness spot-check: no rank-1 state sneaks into the
              // stopper-orthogonal span
              auto [pbasis, symbols] = prover_basis(3);
              Ket stopper = build_stopper(3);
              Eigen::VectorXcd sv(9);
              for (int i = 0; i < 9; ++i) sv(i) = inner(pbasis[i], stopper);
              for (int trial = 0; trial < 2000; ++trial) {
                Eigen::VectorXcd c(9);
                for (int i = 0; i < 9; ++i) c(i) = rng.normal_complex();
                c -= sv * (sv.dot(c) / sv.squaredNorm());
                Ket phi(3);
                for (int i = 0; i < 9; ++i) phi = phi + pbasis[i].scaled(c(i));
                const Bipartition& bp =
                    Bipartition::all()[trial % Bipartition::all().size()];
                Eigen::VectorXd s2 = schmidt_values(phi, bp);
                if (s2(1) / s2(0) <= 1e-6) return false;
              }
              return true;
            });

  std::printf("%s\n", g_failures == 0 ? "ALL CRITERIA PASSED"
                                      : "SOME CRITERIA FAILED");
  return g_failures == 0 ? 0 : 1;
}
