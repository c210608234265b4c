#pragma once

// Construction of the layered product sets, the paired superposition states,
// the stopper, the center products, the full unextendible biseparable family,
// and the orthonormal bases of its complementary subspace.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ubblab/core.hpp"
#include "ubblab/ket.hpp"

namespace ubblab {

inline int num_layers(int d) { return (d - 1) / 2; }

// Members of the UBB: d^4 - 8*floor((d-1)/2).
inline long ubb_expected_count(int d) {
  long d4 = static_cast<long>(d) * d * d * d;
  return d4 - 8L * num_layers(d);
}

// ---------------------------------------------------------------------------
// Single-party building blocks. Layer l has k = l-1 and uses levels
// [k, d-k-1]; the roots of unity have order m = d-2k-1 and are computed from
// the angle formula so phases do not drift.

inline std::vector<cplx> eta(int d, int k, int j) {
  int m = d - 2 * k - 1;
  if (k < 0 || k > num_layers(d) - 1) throw IndexOutOfRange("eta: k outside [0, floor((d-1)/2)-1]");
  if (j < 0 || j >= m) throw IndexOutOfRange("eta: j outside Z_{d-2k-1}");
  std::vector<cplx> v(d, cplx(0.0));
  for (int t = k; t <= d - k - 2; ++t) {
    long e = static_cast<long>(j) * (t - k) % m;
    v[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / m);
  }
  return v;
}

// Same amplitudes as eta, shifted one level up.
inline std::vector<cplx> xi(int d, int k, int j) {
  int m = d - 2 * k - 1;
  if (k < 0 || k > num_layers(d) - 1) throw IndexOutOfRange("xi: k outside [0, floor((d-1)/2)-1]");
  if (j < 0 || j >= m) throw IndexOutOfRange("xi: j outside Z_{d-2k-1}");
  std::vector<cplx> v(d, cplx(0.0));
  for (int t = k; t <= d - k - 2; ++t) {
    long e = static_cast<long>(j) * (t - k) % m;
    v[t + 1] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / m);
  }
  return v;
}

inline std::vector<cplx> level_vec(int d, int level) {
  std::vector<cplx> v(d, cplx(0.0));
  v.at(level) = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// Subsets C1..C8, D1..D8 of one layer.

enum class SubsetId { C1, C2, C3, C4, C5, C6, C7, C8, D1, D2, D3, D4, D5, D6, D7, D8 };

inline std::string subset_name(SubsetId id) {
  static const char* names[] = {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8",
                                "D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8"};
  return names[static_cast<int>(id)];
}

inline std::optional<SubsetId> subset_from_name(const std::string& s) {
  for (int i = 0; i < 16; ++i)
    if (subset_name(static_cast<SubsetId>(i)) == s)
      return static_cast<SubsetId>(i);
  return std::nullopt;
}

namespace detail {

enum class FactorKind { EtaJ, XiJ, Lo, Hi };  // Lo = |k>, Hi = |d-l>

struct SubsetSpec {
  std::array<FactorKind, 4> kinds;
};

inline const SubsetSpec& subset_spec(SubsetId id) {
  using F = FactorKind;
  static const SubsetSpec specs[16] = {
      {{F::EtaJ, F::Lo, F::Lo, F::Lo}},    // C1
      {{F::Lo, F::XiJ, F::Hi, F::Hi}},     // C2
      {{F::Lo, F::Lo, F::XiJ, F::Hi}},     // C3
      {{F::Lo, F::Lo, F::Lo, F::XiJ}},     // C4
      {{F::EtaJ, F::XiJ, F::EtaJ, F::Lo}}, // C5
      {{F::EtaJ, F::XiJ, F::Hi, F::EtaJ}}, // C6
      {{F::EtaJ, F::Lo, F::XiJ, F::EtaJ}}, // C7
      {{F::Lo, F::XiJ, F::EtaJ, F::XiJ}},  // C8
      {{F::XiJ, F::Hi, F::Hi, F::Hi}},     // D1
      {{F::Hi, F::EtaJ, F::Lo, F::Lo}},    // D2
      {{F::Hi, F::Hi, F::EtaJ, F::Lo}},    // D3
      {{F::Hi, F::Hi, F::Hi, F::EtaJ}},    // D4
      {{F::XiJ, F::EtaJ, F::XiJ, F::Hi}},  // D5
      {{F::XiJ, F::EtaJ, F::Lo, F::XiJ}},  // D6
      {{F::XiJ, F::Hi, F::EtaJ, F::XiJ}},  // D7
      {{F::Hi, F::EtaJ, F::XiJ, F::EtaJ}}, // D8
  };
  return specs[static_cast<int>(id)];
}

inline std::vector<cplx> make_factor(FactorKind kind, int d, int l, int j) {
  int k = l - 1;
  switch (kind) {
    case FactorKind::EtaJ: return eta(d, k, j);
    case FactorKind::XiJ: return xi(d, k, j);
    case FactorKind::Lo: return level_vec(d, k);
    case FactorKind::Hi: return level_vec(d, d - l);
  }
  throw IndexOutOfRange("unknown factor kind");
}

inline void check_layer(int d, int l) {
  if (d < 3) throw IndexOutOfRange("local dimension must be >= 3");
  if (l < 1 || l > num_layers(d)) throw LayerOutOfRange("layer outside [1, floor((d-1)/2)]");
}

}  // namespace detail

// Product states of subset `id` in layer l. Single-index subsets enumerate
// j in Z_{d-2k-1} minus 0; triple-index subsets enumerate the j-tuple over
// the varying parties, lexicographically, minus the all-zero tuple.
inline std::vector<Ket> build_subset(int d, int l, SubsetId id) {
  detail::check_layer(d, l);
  const auto& spec = detail::subset_spec(id);
  int m = d - 2 * (l - 1) - 1;
  std::vector<int> varying;
  for (int p = 0; p < 4; ++p)
    if (spec.kinds[p] == detail::FactorKind::EtaJ ||
        spec.kinds[p] == detail::FactorKind::XiJ)
      varying.push_back(p);
  std::vector<Ket> out;
  auto emit = [&](const std::array<int, 4>& js) {
    std::array<std::vector<cplx>, 4> f;
    for (int p = 0; p < 4; ++p)
      f[p] = detail::make_factor(spec.kinds[p], d, l, js[p]);
    out.push_back(tensor4(f[0], f[1], f[2], f[3]));
  };
  if (varying.size() == 1) {
    for (int j = 1; j < m; ++j) {
      std::array<int, 4> js{0, 0, 0, 0};
      js[varying[0]] = j;
      emit(js);
    }
  } else {
    for (int ja = 0; ja < m; ++ja)
      for (int jb = 0; jb < m; ++jb)
        for (int jc = 0; jc < m; ++jc) {
          if (ja == 0 && jb == 0 && jc == 0) continue;
          std::array<int, 4> js{0, 0, 0, 0};
          js[varying[0]] = ja;
          js[varying[1]] = jb;
          js[varying[2]] = jc;
          emit(js);
        }
  }
  return out;
}

// The paired superposition state psi_{i,±} of layer l: a sum/difference of
// the two removed j=0 product states of the layer's subset pair. All
// computational amplitudes are exactly ±1 and the two terms have disjoint
// supports.
inline Ket build_psi(int d, int l, int i, int sign) {
  detail::check_layer(d, l);
  if (i < 1 || i > 8) throw IndexOutOfRange("psi index outside 1..8");
  if (sign != +1 && sign != -1) throw IndexOutOfRange("sign must be +1 or -1");
  using F = detail::FactorKind;
  struct Pair {
    std::array<F, 4> first, second;
  };
  static const Pair pairs[8] = {
      {{F::EtaJ, F::Lo, F::Lo, F::Lo}, {F::Hi, F::EtaJ, F::Lo, F::Lo}},   // 1
      {{F::Lo, F::XiJ, F::Hi, F::Hi}, {F::XiJ, F::Hi, F::Hi, F::Hi}},     // 2
      {{F::Lo, F::Lo, F::XiJ, F::Hi}, {F::Lo, F::Lo, F::Lo, F::XiJ}},     // 3
      {{F::Hi, F::Hi, F::EtaJ, F::Lo}, {F::Hi, F::Hi, F::Hi, F::EtaJ}},   // 4
      {{F::EtaJ, F::XiJ, F::EtaJ, F::Lo}, {F::Lo, F::XiJ, F::EtaJ, F::XiJ}},  // 5
      {{F::EtaJ, F::XiJ, F::Hi, F::EtaJ}, {F::EtaJ, F::Lo, F::XiJ, F::EtaJ}}, // 6
      {{F::XiJ, F::EtaJ, F::XiJ, F::Hi}, {F::Hi, F::EtaJ, F::XiJ, F::EtaJ}},  // 7
      {{F::XiJ, F::EtaJ, F::Lo, F::XiJ}, {F::XiJ, F::Hi, F::EtaJ, F::XiJ}},   // 8
  };
  const Pair& pr = pairs[i - 1];
  auto term = [&](const std::array<F, 4>& ks) {
    std::array<std::vector<cplx>, 4> f;
    for (int p = 0; p < 4; ++p) f[p] = detail::make_factor(ks[p], d, l, 0);
    return tensor4(f[0], f[1], f[2], f[3]);
  };
  Ket t1 = term(pr.first);
  Ket t2 = term(pr.second);
  return sign > 0 ? t1 + t2 : t1 - t2;
}

// The fifteen even-d center products (empty for odd d).
inline std::vector<Ket> build_center(int d) {
  std::vector<Ket> out;
  if (d % 2 != 0) return out;
  int a = d / 2 - 1, b = d / 2;
  auto phi = [&](int j) {
    std::vector<cplx> v(d, cplx(0.0));
    v[a] = 1.0;
    v[b] = (j == 0) ? 1.0 : -1.0;
    return v;
  };
  for (int j1 = 0; j1 < 2; ++j1)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int j3 = 0; j3 < 2; ++j3)
        for (int j4 = 0; j4 < 2; ++j4) {
          if (j1 == 0 && j2 == 0 && j3 == 0 && j4 == 0) continue;
          out.push_back(tensor4(phi(j1), phi(j2), phi(j3), phi(j4)));
        }
  return out;
}

// All-ones product state.
inline Ket build_stopper(int d) {
  std::vector<cplx> ones(d, cplx(1.0));
  return tensor4(ones, ones, ones, ones);
}

// The innermost state completing the psi_+ list to a spanning set of the
// complement-plus-stopper directions: |(d-1)/2>^x4 for odd d, the all-plus
// center product for even d. Unnormalized, all amplitudes 1.
inline Ket center_state(int d) {
  if (d % 2 == 1) {
    int c = (d - 1) / 2;
    return Ket::basis_state(d, c, c, c, c);
  }
  std::vector<cplx> v(d, cplx(0.0));
  v[d / 2 - 1] = 1.0;
  v[d / 2] = 1.0;
  return tensor4(v, v, v, v);
}

// ---------------------------------------------------------------------------
// Labeled families

enum class Role { UbbMember, StopperState, PsiPlus, CenterState, GesBasis, FState };

inline std::string role_name(Role r) {
  switch (r) {
    case Role::UbbMember: return "UbbMember";
    case Role::StopperState: return "StopperState";
    case Role::PsiPlus: return "PsiPlus";
    case Role::CenterState: return "CenterState";
    case Role::GesBasis: return "GesBasis";
    case Role::FState: return "FState";
  }
  return "?";
}

inline std::optional<Role> role_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Role::FState); ++i) {
    Role r = static_cast<Role>(i);
    if (role_name(r) == s) return r;
  }
  return std::nullopt;
}

struct Member {
  std::string label;
  Role role;
  int layer = 0;        // 0 = none
  std::string subset;   // "" = none
  Ket ket;
};

struct StateFamily {
  int d = 0;
  std::vector<Member> members;

  std::vector<Ket> kets_with_roles(std::initializer_list<Role> roles) const {
    std::vector<Ket> out;
    for (const Member& m : members)
      for (Role r : roles)
        if (m.role == r) {
          out.push_back(m.ket);
          break;
        }
    return out;
  }

  const Member* find(const std::string& label) const {
    for (const Member& m : members)
      if (m.label == label) return &m;
    return nullptr;
  }
};

// The full UBB: all sixteen subsets and the eight psi_- states of every
// layer, the center products for even d, and the stopper.
inline StateFamily build_ubb(int d) {
  if (d < 3) throw IndexOutOfRange("local dimension must be >= 3");
  StateFamily fam;
  fam.d = d;
  for (int l = 1; l <= num_layers(d); ++l) {
    for (int s = 0; s < 16; ++s) {
      SubsetId id = static_cast<SubsetId>(s);
      auto kets = build_subset(d, l, id);
      for (std::size_t n = 0; n < kets.size(); ++n) {
        fam.members.push_back(Member{
            "psi" + std::to_string(n + 1) + "_" + subset_name(id) + "_l" +
                std::to_string(l),
            Role::UbbMember, l, subset_name(id), kets[n]});
      }
    }
    for (int i = 1; i <= 8; ++i) {
      fam.members.push_back(Member{
          "psiMinus_U" + std::to_string(i) + "_l" + std::to_string(l),
          Role::UbbMember, l, "U" + std::to_string(i), build_psi(d, l, i, -1)});
    }
  }
  auto center = build_center(d);
  for (std::size_t n = 0; n < center.size(); ++n)
    fam.members.push_back(Member{"center" + std::to_string(n + 1),
                                 Role::CenterState, 0, "center", center[n]});
  fam.members.push_back(
      Member{"stopper", Role::StopperState, 0, "", build_stopper(d)});
  return fam;
}

// The psi_+ states of every layer plus the center state; together with the
// stopper direction they span the orthogonal complement of the UBB span.
inline StateFamily build_psi_plus_family(int d) {
  if (d < 3) throw IndexOutOfRange("local dimension must be >= 3");
  StateFamily fam;
  fam.d = d;
  for (int l = 1; l <= num_layers(d); ++l)
    for (int i = 1; i <= 8; ++i)
      fam.members.push_back(Member{
          "psiPlus_U" + std::to_string(i) + "_l" + std::to_string(l),
          Role::PsiPlus, l, "U" + std::to_string(i), build_psi(d, l, i, +1)});
  fam.members.push_back(
      Member{"centerState", Role::CenterState, 0, "center", center_state(d)});
  return fam;
}

namespace detail {

// F state of layer l: the fixed mix of the normalized psi_+ states whose
// overlap with the stopper is exactly 1.
inline Ket f_state(int d, int l) {
  check_layer(d, l);
  int m = d - 2 * (l - 1) - 1;
  double alpha = 1.0 / (4.0 * (m * m + 1) * std::sqrt(2.0 * m));
  double beta = std::sqrt(static_cast<double>(m)) /
                (4.0 * std::sqrt(2.0) * (m * m + 1));
  Ket f(d);
  for (int i = 1; i <= 8; ++i) {
    Ket p = build_psi(d, l, i, +1).normalized();
    f = f + p.scaled(i <= 4 ? alpha : beta);
  }
  return f;
}

// Center F state: unit |center> for odd d, (1/16)(all-plus center) for even.
inline Ket f_center(int d) {
  Ket c = center_state(d);
  return (d % 2 == 1) ? c : c.scaled(cplx(1.0 / 16.0));
}

}  // namespace detail

// Literal orthonormal-basis construction for the complement: G1..G7 per layer
// from the normalized psi_+ states, G8 per layer as the discrete-Fourier
// combination of the F states across all layers plus the center F. The F
// states themselves are returned with role FState. Cross-layer orthogonality
// of the G8 family is a property to be verified, not assumed.
inline StateFamily build_ges_basis(int d) {
  if (d < 3) throw IndexOutOfRange("local dimension must be >= 3");
  StateFamily fam;
  fam.d = d;
  int L = num_layers(d);
  std::vector<Ket> fs;
  for (int l = 1; l <= L; ++l) fs.push_back(detail::f_state(d, l));
  fs.push_back(detail::f_center(d));
  double ff_sum = 0.0;
  for (const Ket& f : fs) ff_sum += f.squared_norm();

  for (int l = 1; l <= L; ++l) {
    std::vector<Ket> psit;
    for (int i = 1; i <= 8; ++i)
      psit.push_back(build_psi(d, l, i, +1).normalized());
    int m = d - 2 * (l - 1) - 1;
    const double r2 = std::sqrt(2.0);
    auto add = [&](int idx, const Ket& k) {
      fam.members.push_back(Member{
          "G" + std::to_string(idx) + "_l" + std::to_string(l), Role::GesBasis,
          l, "", k});
    };
    add(1, (psit[0] - psit[1]).scaled(1.0 / r2));
    add(2, (psit[2] - psit[3]).scaled(1.0 / r2));
    add(3, (psit[0] + psit[1] - psit[2] - psit[3]).scaled(0.5));
    add(4, (psit[4] - psit[5]).scaled(1.0 / r2));
    add(5, (psit[6] - psit[7]).scaled(1.0 / r2));
    add(6, (psit[4] + psit[5] - psit[6] - psit[7]).scaled(0.5));
    double den = std::sqrt(4.0 * m * m + 4.0);
    Ket g7 = ((psit[0] + psit[1] + psit[2] + psit[3]).scaled(m / den)) -
             ((psit[4] + psit[5] + psit[6] + psit[7]).scaled(1.0 / den));
    add(7, g7);
    // G8: Fourier mix over the L+1 F states, order L+1 root of unity.
    Ket g8(d);
    for (int t = 0; t <= L; ++t) {
      cplx w = std::polar(1.0, 2.0 * std::numbers::pi *
                                   static_cast<double>((static_cast<long>(l) * t) % (L + 1)) /
                                   (L + 1));
      g8 = g8 + fs[t].scaled(w);
    }
    add(8, g8.scaled(1.0 / std::sqrt(ff_sum)));
  }
  for (int l = 1; l <= L; ++l)
    fam.members.push_back(
        Member{"F_l" + std::to_string(l), Role::FState, l, "", fs[l - 1]});
  fam.members.push_back(Member{"F_center", Role::FState, 0, "", fs[L]});
  return fam;
}

// Fallback replacement for the G8 family: Gram-Schmidt over the differences
// of consecutive F states. Every difference is orthogonal to the stopper, so
// the result is an orthonormal basis of span{F} minus the stopper-overlap
// direction regardless of the F norms.
inline std::vector<Ket> build_fallback_g8(int d) {
  int L = num_layers(d);
  std::vector<Ket> fs;
  for (int l = 1; l <= L; ++l) fs.push_back(detail::f_state(d, l));
  fs.push_back(detail::f_center(d));
  std::vector<Ket> out;
  for (int t = 0; t < L; ++t) {
    Ket v = fs[t] - fs[t + 1];
    for (const Ket& u : out) v = v - u.scaled(inner(u, v));
    out.push_back(v.normalized());
  }
  return out;
}

// Explicit 8-state orthonormal basis of the d=3 complement, with the fixed
// closed-form coefficients.
inline StateFamily build_ges_basis_thm1() {
  const int d = 3;
  StateFamily fam;
  fam.d = d;
  std::vector<Ket> psit;
  for (int i = 1; i <= 8; ++i)
    psit.push_back(build_psi(d, 1, i, +1).normalized());
  Ket one111 = Ket::basis_state(d, 1, 1, 1, 1);
  const double r2 = std::sqrt(2.0);
  const double r5 = std::sqrt(5.0);
  auto add = [&](int idx, const Ket& k) {
    fam.members.push_back(
        Member{"G" + std::to_string(idx), Role::GesBasis, 1, "", k});
  };
  add(1, (psit[0] - psit[1]).scaled(1.0 / r2));
  add(2, (psit[2] - psit[3]).scaled(1.0 / r2));
  add(3, (psit[0] + psit[1] - psit[2] - psit[3]).scaled(0.5));
  add(4, (psit[4] - psit[5]).scaled(1.0 / r2));
  add(5, (psit[6] - psit[7]).scaled(1.0 / r2));
  add(6, (psit[4] + psit[5] - psit[6] - psit[7]).scaled(0.5));
  add(7, (psit[0] + psit[1] + psit[2] + psit[3]).scaled(1.0 / r5) -
             (psit[4] + psit[5] + psit[6] + psit[7]).scaled(1.0 / (2.0 * r5)));
  add(8, (psit[0] + psit[1] + psit[2] + psit[3]).scaled(1.0 / (18.0 * r5)) +
             (psit[4] + psit[5] + psit[6] + psit[7]).scaled(1.0 / (9.0 * r5)) -
             one111.scaled(4.0 * r5 / 9.0));
  return fam;
}

}  // namespace ubblab
