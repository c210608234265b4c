#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ubblab/prover.hpp"

using namespace ubblab;

namespace {

// Frozen qutrit coefficient patterns, one row per string, symbols a..h for the
// eight paired superposition states and k for |1111>.
struct FrozenPattern {
  std::vector<int> rows, cols;  // party orders
  std::vector<std::string> grid;
};

const std::vector<FrozenPattern>& frozen_patterns() {
  static const std::vector<FrozenPattern> v = {
      {{1},
       {2, 3, 4},
       {"accffcffceeeeeeffbeeeeeeffb",
        "ahhffgffgehhekgffgehhehhffb",
        "ahhggggggahhggggggdhhdhhddb"}},
      {{2},
       {3, 4, 1},
       {"aaachhchhffgffgcggffgffgcgg",
        "eeaehhehheegekgeggffgffgbgg",
        "eedehhehheedehhehhffdffdbbb"}},
      {{3},
       {4, 1, 2},
       {"aeeaeeaadceehhhhhhceehhhhhh",
        "feefeeggdfeefkhgghceegghggh",
        "ffffffggdffffffggdcbbggbggb"}},
      {{4},
       {1, 2, 3},
       {"affeefeefaffeefeefaggaggddd",
        "cffeefeefhffhkfhhfhgghgghhd",
        "ccceebeebhgghgghhbhgghgghhb"}},
      {{1, 2},
       {3, 4},
       {"accffcffc", "eeeeeeffb", "eeeeeeffb", "ahhffgffg", "ehhekgffg",
        "ehhehhffb", "ahhgggggg", "ahhgggggg", "dhhdhhddb"}},
      {{1, 3},
       {2, 4},
       {"acceeeeee", "ffceeeeee", "ffcffbffb", "ahhehhehh", "ffgekgehh",
        "ffgffgffb", "ahhahhdhh", "ggggggdhh", "ggggggddb"}},
      {{1, 4},
       {2, 3},
       {"affeefeef", "cffeefeef", "ccceebeeb", "affeefeef", "hffhkfhhf",
        "hgghgghhb", "aggaggddd", "hgghgghhd", "hgghgghhb"}},
  };
  return v;
}

int symbol_id(char c) { return c == 'k' ? 8 : c - 'a'; }

std::string trace_to_string(const std::vector<TraceStep>& trace) {
  std::ostringstream os;
  for (const TraceStep& t : trace) {
    os << t.rule << "@" << t.r1 << "," << t.c1 << "," << t.r2 << "," << t.c2
       << ":";
    for (int s : t.syms) os << s << " ";
    os << ";" << t.note << "\n";
  }
  return os.str();
}

}  // namespace

TEST_CASE("derived qutrit patterns match the frozen matrices") {
  auto [basis, symbols] = prover_basis(3);
  REQUIRE(symbols == std::vector<std::string>{"a", "b", "c", "d", "e", "f",
                                              "g", "h", "k"});
  for (const FrozenPattern& fp : frozen_patterns()) {
    PatternMatrix p = derive_pattern(basis, symbols, fp.rows, fp.cols);
    REQUIRE(p.rows == static_cast<int>(fp.grid.size()));
    REQUIRE(p.cols == static_cast<int>(fp.grid[0].size()));
    CHECK(p.zero_symbol == -1);  // the supports tile the whole space
    for (int r = 0; r < p.rows; ++r)
      for (int c = 0; c < p.cols; ++c) {
        INFO("rows " << fp.rows[0] << " cell (" << r << "," << c << ")");
        CHECK(p.at(r, c) == symbol_id(fp.grid[r][c]));
      }
    long total = 0;
    for (long m : p.multiplicity) total += m;
    CHECK(total == static_cast<long>(p.rows) * p.cols);
  }
}

TEST_CASE("bipartition orientation agrees with the explicit party orders") {
  auto [basis, symbols] = prover_basis(3);
  for (const Bipartition& bp : Bipartition::all()) {
    auto [rows, cols] = pattern_party_orders(bp);
    PatternMatrix a = derive_pattern(basis, symbols, rows, cols);
    PatternMatrix b = derive_pattern(basis, symbols, bp);
    CHECK(a.cells == b.cells);
  }
}

TEST_CASE("derive_pattern rejects bad bases") {
  Ket z = Ket::basis_state(3, 0, 0, 0, 0);
  Ket overlap = z + Ket::basis_state(3, 1, 1, 1, 1);
  CHECK_THROWS_AS(derive_pattern({z, overlap}, {"a", "b"}, Bipartition(1)),
                  AmbiguousCell);
  CHECK_THROWS_AS(derive_pattern({z.scaled(2.0)}, {"a"}, Bipartition(1)),
                  NonUnitAmplitude);
  CHECK_THROWS_AS(derive_pattern({z}, {"a", "b"}, Bipartition(1)),
                  DimensionMismatch);
}

TEST_CASE("uncovered cells receive the reserved zero symbol") {
  Ket z = Ket::basis_state(3, 0, 0, 0, 0);
  PatternMatrix p = derive_pattern({z}, {"a"}, Bipartition(1));
  REQUIRE(p.zero_symbol == 1);
  CHECK(p.alphabet[1] == "0");
  CHECK(p.multiplicity[0] == 1);
  CHECK(p.multiplicity[1] == 3 * 27 - 1);
}

TEST_CASE("hand-checkable 2x2 pattern closes") {
  PatternMatrix p;
  p.rows = p.cols = 2;
  p.cells = {0, 0, 0, 1};  // [[a, a], [a, b]]
  p.alphabet = {"a", "b"};
  p.multiplicity = {3, 1};
  ProofOutcome out = prove_no_rank1(p);
  CHECK(out.closed);
  CHECK(out.open_branches.empty());
}

TEST_CASE("a genuinely open pattern reports its branches") {
  PatternMatrix p;
  p.rows = p.cols = 2;
  p.cells = {0, 1, 1, 0};  // [[a, b], [b, a]]: a^2 = b^2 stays pending
  p.alphabet = {"a", "b"};
  p.multiplicity = {2, 2};
  ProofOutcome out = prove_no_rank1(p);
  CHECK_FALSE(out.closed);
  REQUIRE_FALSE(out.open_branches.empty());
  CHECK(out.open_branches[0].find("2 nonzero classes") != std::string::npos);
}

TEST_CASE("all seven qutrit patterns close, with replayable traces") {
  auto [basis, symbols] = prover_basis(3);
  for (const Bipartition& bp : Bipartition::all()) {
    PatternMatrix p = derive_pattern(basis, symbols, bp);
    ProofOutcome out = prove_no_rank1(p);
    INFO(bp.name());
    CHECK(out.closed);
    CHECK(replay_trace(p, out.trace));
  }
}

TEST_CASE("engine determinism") {
  auto [basis, symbols] = prover_basis(3);
  PatternMatrix p = derive_pattern(basis, symbols, Bipartition(0b0011));
  ProofOutcome a = prove_no_rank1(p);
  ProofOutcome b = prove_no_rank1(p);
  CHECK(a.branches_explored == b.branches_explored);
  CHECK(trace_to_string(a.trace) == trace_to_string(b.trace));
}

TEST_CASE("replay rejects a corrupted R1 citation") {
  auto [basis, symbols] = prover_basis(3);
  PatternMatrix p = derive_pattern(basis, symbols, Bipartition(0b0011));
  ProofOutcome out = prove_no_rank1(p);
  bool corrupted = false;
  for (TraceStep& t : out.trace) {
    if (t.rule == "R1") {
      t.syms[0] = 8;  // claim the shared factor was k
      t.syms[1] = 8;
      if (!replay_trace(p, out.trace)) corrupted = true;
      break;
    }
  }
  CHECK(corrupted);
}

TEST_CASE("branch budget is enforced") {
  auto [basis, symbols] = prover_basis(3);
  PatternMatrix p = derive_pattern(basis, symbols, Bipartition(1));
  CHECK_THROWS_AS(prove_no_rank1(p, 1), BranchBudgetExceeded);
}

TEST_CASE("patterns are consistent with numeric instantiation") {
  auto [basis, symbols] = prover_basis(3);
  SplitMix64 rng(31);
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
        CHECK(std::abs(m(r, c) - vals[p.at(r, c)]) < 1e-14);
  }
}

TEST_CASE("soundness spot-check: no empirical rank-1 counterexample") {
  auto [basis, symbols] = prover_basis(3);
  Ket stopper = build_stopper(3);
  Eigen::VectorXcd s(9);
  for (int i = 0; i < 9; ++i) s(i) = inner(basis[i], stopper);
  SplitMix64 rng(47);
  double min_ratio = 1.0;
  for (int trial = 0; trial < 10000; ++trial) {
    Eigen::VectorXcd c(9);
    for (int i = 0; i < 9; ++i) c(i) = rng.normal_complex();
    c -= s * (s.dot(c) / s.squaredNorm());  // <phi|S> = 0
    Ket phi(3);
    for (int i = 0; i < 9; ++i) phi = phi + basis[i].scaled(c(i));
    const Bipartition& bp =
        Bipartition::all()[trial % Bipartition::all().size()];
    Eigen::VectorXd sv = schmidt_values(phi, bp);
    min_ratio = std::min(min_ratio, sv(1) / sv(0));
  }
  CHECK(min_ratio > 1e-6);
}

TEST_CASE("symbolic unextendibility closes for d = 3, 4, 5") {
  for (int d : {3, 4, 5}) {
    SymbolicReport rep = check_unextendibility_symbolic(d);
    INFO("d = " << d);
    CHECK(rep.entries.size() == 7);
    CHECK(rep.all_closed());
  }
  CHECK(check_unextendibility_symbolic(4).symbols.back() == "p");
  CHECK(check_unextendibility_symbolic(5).symbols.size() == 17);
}
