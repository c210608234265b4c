#pragma once

// Symbolic engine certifying that no rank-1 matrix exists among the
// coefficient-pattern matrices of the complement basis, for any assignment of
// the symbols that is orthogonal to the stopper and not identically zero.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ubblab/core.hpp"
#include "ubblab/families.hpp"
#include "ubblab/ket.hpp"

namespace ubblab {

// ---------------------------------------------------------------------------
// PatternMatrix: a grid of symbol ids from a finite alphabet. The optional
// reserved zero symbol marks cells not covered by any basis state.

struct PatternMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> cells;               // row-major symbol ids
  std::vector<std::string> alphabet;    // symbol id -> label
  std::vector<long> multiplicity;       // symbol id -> cell count
  int zero_symbol = -1;                 // reserved id, or -1 if fully covered

  int at(int r, int c) const { return cells[static_cast<std::size_t>(r) * cols + c]; }
};

// Pattern of the matricization of sum_s c_s |state_s> under the given row /
// column party orders. States must have 0/1 amplitudes and pairwise disjoint
// supports; uncovered cells get the reserved zero symbol.
inline PatternMatrix derive_pattern(const std::vector<Ket>& basis,
                                    const std::vector<std::string>& symbols,
                                    const std::vector<int>& row_parties,
                                    const std::vector<int>& col_parties) {
  if (basis.size() != symbols.size())
    throw DimensionMismatch("one symbol per basis state required");
  if (basis.empty()) throw EmptySubspace("empty pattern basis");
  int d = basis[0].d();
  PatternMatrix p;
  p.rows = 1;
  p.cols = 1;
  for (std::size_t i = 0; i < row_parties.size(); ++i) p.rows *= d;
  for (std::size_t i = 0; i < col_parties.size(); ++i) p.cols *= d;
  p.alphabet = symbols;
  p.cells.assign(static_cast<std::size_t>(p.rows) * p.cols, -1);
  for (std::size_t s = 0; s < basis.size(); ++s) {
    basis[s].require_same_d(basis[0]);
    for (const auto& [key, amp] : basis[s].terms()) {
      if (std::abs(amp - cplx(1.0)) > 1e-12)
        throw NonUnitAmplitude("pattern basis amplitudes must be exactly 1");
      auto idx = basis[s].decode(key);
      long r = 0, c = 0;
      for (int q : row_parties) r = r * d + idx[q - 1];
      for (int q : col_parties) c = c * d + idx[q - 1];
      int& cell = p.cells[static_cast<std::size_t>(r) * p.cols + c];
      if (cell != -1)
        throw AmbiguousCell("two basis states share computational index at (" +
                            std::to_string(r) + "," + std::to_string(c) + ")");
      cell = static_cast<int>(s);
    }
  }
  bool uncovered = false;
  for (int& cell : p.cells)
    if (cell == -1) uncovered = true;
  if (uncovered) {
    p.zero_symbol = static_cast<int>(p.alphabet.size());
    p.alphabet.push_back("0");
    for (int& cell : p.cells)
      if (cell == -1) cell = p.zero_symbol;
  }
  p.multiplicity.assign(p.alphabet.size(), 0);
  for (int cell : p.cells) ++p.multiplicity[cell];
  return p;
}

// Paper-convention party orders for the seven bipartitions (rows|cols).
inline std::pair<std::vector<int>, std::vector<int>> pattern_party_orders(
    const Bipartition& bp) {
  switch (bp.mask_a()) {
    case 0b0001: return {{1}, {2, 3, 4}};
    case 0b1101: return {{2}, {3, 4, 1}};
    case 0b1011: return {{3}, {4, 1, 2}};
    case 0b0111: return {{4}, {1, 2, 3}};
    case 0b0011: return {{1, 2}, {3, 4}};
    case 0b0101: return {{1, 3}, {2, 4}};
    case 0b1001: return {{1, 4}, {2, 3}};
  }
  throw IndexOutOfRange("unknown bipartition");
}

inline PatternMatrix derive_pattern(const std::vector<Ket>& basis,
                                    const std::vector<std::string>& symbols,
                                    const Bipartition& bp) {
  auto [rows, cols] = pattern_party_orders(bp);
  return derive_pattern(basis, symbols, rows, cols);
}

// ---------------------------------------------------------------------------
// Case analysis machinery

enum class SymbolStatus { Unknown, Zero, Nonzero };

struct TraceStep {
  std::string rule;       // "branch", "R1", "R2", "conflict", "close", "open"
  int r1 = -1, c1 = -1, r2 = -1, c2 = -1;  // cited minor, when applicable
  std::vector<int> syms;  // symbols involved (pattern ids)
  std::string note;
};

struct ProofOutcome {
  bool closed = false;
  long branches_explored = 0;
  std::vector<std::string> open_branches;
  std::vector<TraceStep> trace;
};

namespace detail {

// One deduplicated 2x2 minor equation lhs0*lhs1 = rhs0*rhs1 with a
// representative minor location.
struct MinorEquation {
  int lhs0, lhs1, rhs0, rhs1;
  int r1, c1, r2, c2;
};

inline std::vector<MinorEquation> minor_equations(const PatternMatrix& p) {
  std::set<std::array<int, 4>> seen;
  std::vector<MinorEquation> eqs;
  for (int r1 = 0; r1 < p.rows; ++r1)
    for (int r2 = r1 + 1; r2 < p.rows; ++r2)
      for (int c1 = 0; c1 < p.cols; ++c1)
        for (int c2 = c1 + 1; c2 < p.cols; ++c2) {
          int a = p.at(r1, c1), b = p.at(r1, c2);
          int c = p.at(r2, c1), e = p.at(r2, c2);
          std::array<int, 2> lhs{std::min(a, e), std::max(a, e)};
          std::array<int, 2> rhs{std::min(b, c), std::max(b, c)};
          if (lhs == rhs) continue;  // identically satisfied
          if (rhs < lhs) std::swap(lhs, rhs);
          std::array<int, 4> key{lhs[0], lhs[1], rhs[0], rhs[1]};
          if (seen.insert(key).second)
            eqs.push_back(MinorEquation{a, e, b, c, r1, c1, r2, c2});
        }
  return eqs;
}

// Union-find over symbols with a status on each class.
struct CaseState {
  std::vector<int> parent;
  std::vector<SymbolStatus> status;  // valid on roots

  explicit CaseState(std::size_t n)
      : parent(n), status(n, SymbolStatus::Unknown) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  SymbolStatus status_of(int x) { return status[find(x)]; }

  // false = contradiction
  bool set_status(int x, SymbolStatus st) {
    int r = find(x);
    if (status[r] == SymbolStatus::Unknown) {
      status[r] = st;
      return true;
    }
    return status[r] == st;
  }

  bool merge(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return true;
    SymbolStatus sx = status[rx], sy = status[ry];
    if ((sx == SymbolStatus::Zero && sy == SymbolStatus::Nonzero) ||
        (sx == SymbolStatus::Nonzero && sy == SymbolStatus::Zero))
      return false;
    if (ry < rx) std::swap(rx, ry);
    parent[ry] = rx;
    status[rx] = (sx == SymbolStatus::Unknown) ? sy : sx;
    return true;
  }
};

}  // namespace detail

// DFS over Zero/Nonzero symbol assignments with minor-equation propagation.
// Closed means: every branch reached a contradiction with either rank-1
// consistency or the side condition that the combination is orthogonal to the
// stopper yet not identically zero. Soundness over completeness: a leaf with
// two or more surviving nonzero classes (whether or not nontrivial product
// equations remain pending) is reported as an open branch, never closed.
inline ProofOutcome prove_no_rank1(const PatternMatrix& p,
                                   long max_branches = 1L << 20) {
  const auto eqs = detail::minor_equations(p);
  const int nsym = static_cast<int>(p.alphabet.size());
  ProofOutcome out;
  out.closed = true;

  // branch variable order: descending cell multiplicity
  std::vector<int> order;
  for (int s = 0; s < nsym; ++s)
    if (s != p.zero_symbol) order.push_back(s);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return p.multiplicity[a] > p.multiplicity[b];
  });

  auto propagate = [&](detail::CaseState& st,
                       std::vector<TraceStep>& trace) -> bool {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& eq : eqs) {
        SymbolStatus sl0 = st.status_of(eq.lhs0), sl1 = st.status_of(eq.lhs1);
        SymbolStatus sr0 = st.status_of(eq.rhs0), sr1 = st.status_of(eq.rhs1);
        bool lz = sl0 == SymbolStatus::Zero || sl1 == SymbolStatus::Zero;
        bool rz = sr0 == SymbolStatus::Zero || sr1 == SymbolStatus::Zero;
        bool lnz = sl0 == SymbolStatus::Nonzero && sl1 == SymbolStatus::Nonzero;
        bool rnz = sr0 == SymbolStatus::Nonzero && sr1 == SymbolStatus::Nonzero;
        if ((lz && rnz) || (rz && lnz)) {
          trace.push_back({"conflict", eq.r1, eq.c1, eq.r2, eq.c2,
                           {eq.lhs0, eq.lhs1, eq.rhs0, eq.rhs1},
                           "zero product equals nonzero product"});
          return false;
        }
        // R2: a vanished side forces the other product to vanish
        if (lz && !rz) {
          if (sr0 == SymbolStatus::Nonzero && sr1 == SymbolStatus::Unknown) {
            if (!st.set_status(eq.rhs1, SymbolStatus::Zero)) return false;
            trace.push_back({"R2", eq.r1, eq.c1, eq.r2, eq.c2,
                             {eq.rhs1}, "forced zero"});
            changed = true;
          } else if (sr1 == SymbolStatus::Nonzero &&
                     sr0 == SymbolStatus::Unknown) {
            if (!st.set_status(eq.rhs0, SymbolStatus::Zero)) return false;
            trace.push_back({"R2", eq.r1, eq.c1, eq.r2, eq.c2,
                             {eq.rhs0}, "forced zero"});
            changed = true;
          }
        } else if (rz && !lz) {
          if (sl0 == SymbolStatus::Nonzero && sl1 == SymbolStatus::Unknown) {
            if (!st.set_status(eq.lhs1, SymbolStatus::Zero)) return false;
            trace.push_back({"R2", eq.r1, eq.c1, eq.r2, eq.c2,
                             {eq.lhs1}, "forced zero"});
            changed = true;
          } else if (sl1 == SymbolStatus::Nonzero &&
                     sl0 == SymbolStatus::Unknown) {
            if (!st.set_status(eq.lhs0, SymbolStatus::Zero)) return false;
            trace.push_back({"R2", eq.r1, eq.c1, eq.r2, eq.c2,
                             {eq.lhs0}, "forced zero"});
            changed = true;
          }
        }
        if (lz || rz) continue;
        // R1: a shared nonzero factor cancels, equating the opposite pair
        auto try_merge = [&](int shared_a, int shared_b, int ma,
                             int mb) -> int {
          if (st.find(shared_a) != st.find(shared_b)) return 0;
          if (st.status_of(shared_a) != SymbolStatus::Nonzero) return 0;
          if (st.find(ma) == st.find(mb)) return 0;
          if (!st.merge(ma, mb)) return -1;
          trace.push_back({"R1", eq.r1, eq.c1, eq.r2, eq.c2,
                           {shared_a, shared_b, ma, mb}, "classes merged"});
          return 1;
        };
        for (auto [sa, sb, ma, mb] :
             {std::array<int, 4>{eq.lhs0, eq.rhs0, eq.lhs1, eq.rhs1},
              std::array<int, 4>{eq.lhs0, eq.rhs1, eq.lhs1, eq.rhs0},
              std::array<int, 4>{eq.lhs1, eq.rhs0, eq.lhs0, eq.rhs1},
              std::array<int, 4>{eq.lhs1, eq.rhs1, eq.lhs0, eq.rhs0}}) {
          int res = try_merge(sa, sb, ma, mb);
          if (res < 0) return false;
          if (res > 0) changed = true;
        }
      }
    }
    return true;
  };

  auto leaf_nonzero_classes = [&](detail::CaseState& st) {
    std::set<int> roots;
    for (int s = 0; s < nsym; ++s)
      if (s != p.zero_symbol && st.status_of(s) == SymbolStatus::Nonzero)
        roots.insert(st.find(s));
    return roots;
  };

  auto pending_equations = [&](detail::CaseState& st) {
    long pending = 0;
    for (const auto& eq : eqs) {
      SymbolStatus sl0 = st.status_of(eq.lhs0), sl1 = st.status_of(eq.lhs1);
      SymbolStatus sr0 = st.status_of(eq.rhs0), sr1 = st.status_of(eq.rhs1);
      bool lz = sl0 == SymbolStatus::Zero || sl1 == SymbolStatus::Zero;
      bool rz = sr0 == SymbolStatus::Zero || sr1 == SymbolStatus::Zero;
      if (lz && rz) continue;
      std::array<int, 2> lhs{st.find(eq.lhs0), st.find(eq.lhs1)};
      std::array<int, 2> rhs{st.find(eq.rhs0), st.find(eq.rhs1)};
      std::sort(lhs.begin(), lhs.end());
      std::sort(rhs.begin(), rhs.end());
      if (lhs != rhs) ++pending;
    }
    return pending;
  };

  std::function<void(detail::CaseState)> dfs = [&](detail::CaseState st) {
    if (!propagate(st, out.trace)) {
      out.trace.push_back({"close", -1, -1, -1, -1, {}, "contradiction"});
      return;
    }
    int next = -1;
    for (int s : order)
      if (st.status_of(s) == SymbolStatus::Unknown) {
        next = s;
        break;
      }
    if (next == -1) {
      auto roots = leaf_nonzero_classes(st);
      if (roots.size() <= 1) {
        // R3: at most one nonzero class contradicts stopper orthogonality
        // (or the state is identically zero, which is excluded).
        out.trace.push_back({"close", -1, -1, -1, -1, {},
                             roots.empty() ? "all symbols zero"
                                           : "single nonzero class"});
        return;
      }
      long pend = pending_equations(st);
      std::ostringstream desc;
      desc << roots.size() << " nonzero classes survive";
      if (pend > 0) desc << ", " << pend << " product equations pending";
      desc << "; assignment:";
      for (int s = 0; s < nsym; ++s) {
        if (s == p.zero_symbol) continue;
        desc << ' ' << p.alphabet[s]
             << (st.status_of(s) == SymbolStatus::Zero
                     ? "=0"
                     : "~" + p.alphabet[st.find(s)]);
      }
      out.open_branches.push_back(desc.str());
      out.closed = false;
      out.trace.push_back({"open", -1, -1, -1, -1, {}, desc.str()});
      return;
    }
    if (++out.branches_explored > max_branches)
      throw BranchBudgetExceeded("prover branch budget exceeded");
    for (SymbolStatus st_try : {SymbolStatus::Nonzero, SymbolStatus::Zero}) {
      detail::CaseState child = st;
      out.trace.push_back(
          {"branch", -1, -1, -1, -1, {next},
           p.alphabet[next] +
               (st_try == SymbolStatus::Nonzero ? " != 0" : " = 0")});
      if (!child.set_status(next, st_try)) {
        out.trace.push_back({"close", -1, -1, -1, -1, {}, "contradiction"});
        continue;
      }
      dfs(std::move(child));
    }
  };

  detail::CaseState root(p.alphabet.size());
  if (p.zero_symbol >= 0) root.set_status(p.zero_symbol, SymbolStatus::Zero);
  dfs(root);
  return out;
}

// Replays a proof trace against the pattern, verifying that every cited R1 /
// R2 / conflict step refers to a real minor whose cells carry the recorded
// symbols. Branch and close steps are structural and accepted as-is.
inline bool replay_trace(const PatternMatrix& p,
                         const std::vector<TraceStep>& trace) {
  for (const TraceStep& t : trace) {
    if (t.rule != "R1" && t.rule != "R2" && t.rule != "conflict") continue;
    if (t.r1 < 0 || t.r2 < 0 || t.c1 < 0 || t.c2 < 0) return false;
    if (t.r1 >= p.rows || t.r2 >= p.rows || t.c1 >= p.cols || t.c2 >= p.cols)
      return false;
    std::multiset<int> minor{p.at(t.r1, t.c1), p.at(t.r1, t.c2),
                             p.at(t.r2, t.c1), p.at(t.r2, t.c2)};
    for (int s : t.syms)
      if (minor.count(s) == 0) return false;
    if (t.rule == "R1") {
      // syms = {shared factor on diagonal, shared factor on antidiagonal,
      // merged pair}; the shared factors must sit on opposite products.
      if (t.syms.size() != 4) return false;
      std::multiset<int> diag{p.at(t.r1, t.c1), p.at(t.r2, t.c2)};
      std::multiset<int> anti{p.at(t.r1, t.c2), p.at(t.r2, t.c1)};
      bool shared_ok =
          (diag.count(t.syms[0]) > 0 && anti.count(t.syms[1]) > 0) ||
          (anti.count(t.syms[0]) > 0 && diag.count(t.syms[1]) > 0);
      if (!shared_ok) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Theorem-level symbolic unextendibility check

struct SymbolicEntry {
  std::string bipartition;
  ProofOutcome outcome;
};

struct SymbolicReport {
  int d = 0;
  std::vector<std::string> symbols;
  std::vector<SymbolicEntry> entries;

  bool all_closed() const {
    for (const auto& e : entries)
      if (!e.outcome.closed) return false;
    return true;
  }
};

// The complement-spanning basis used by the prover: the psi_+ states of all
// layers plus the center state, with one symbol each.
inline std::pair<std::vector<Ket>, std::vector<std::string>> prover_basis(int d) {
  std::vector<Ket> basis;
  std::vector<std::string> symbols;
  int L = num_layers(d);
  static const char* letters = "abcdefgh";
  for (int l = 1; l <= L; ++l)
    for (int i = 1; i <= 8; ++i) {
      basis.push_back(build_psi(d, l, i, +1));
      std::string s(1, letters[i - 1]);
      if (L > 1) s += "_" + std::to_string(l);
      symbols.push_back(s);
    }
  basis.push_back(center_state(d));
  symbols.push_back(d == 3 ? "k" : "p");
  return {basis, symbols};
}

inline SymbolicReport check_unextendibility_symbolic(int d,
                                                     long max_branches = 1L << 22) {
  auto [basis, symbols] = prover_basis(d);
  SymbolicReport rep;
  rep.d = d;
  rep.symbols = symbols;
  for (const Bipartition& bp : Bipartition::all()) {
    PatternMatrix p = derive_pattern(basis, symbols, bp);
    SymbolicEntry e;
    e.bipartition = bp.name();
    e.outcome = prove_no_rank1(p, max_branches);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace ubblab
