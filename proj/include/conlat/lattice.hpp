#pragma once

// The lattice ℰ of all congruence lattices (or ℒ of all quasiorder
// lattices) on a finite set, built as the meet-closure of the lattices of
// single maps, with its order, covers, irreducibles, tolerances and
// modularity diagnostics.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conlat/bitset.hpp"
#include "conlat/galois.hpp"
#include "conlat/relations.hpp"

namespace conlat {

struct LatticeOptions {
  ScanOptions scan;
  int max_n_equivalence = 6;
  int max_n_quasiorder = 4;
  // The build stops with CapExceeded once the meet-closure grows past this.
  std::size_t max_elements = 250'000;
  // Dense meet/join tables, and with them tolerances and modularity checks,
  // exist only up to this many elements.
  std::size_t max_dense_elements = 2048;
};

class BigLattice {
 public:
  using index = std::size_t;

  static BigLattice build(Universe u, RelationKind kind, LatticeOptions const& options = {});

  // A lattice of subsets of `table` given explicitly. The family must contain
  // the full set and be closed under intersection; joins are taken as the
  // least member containing the union.
  static BigLattice from_masks(TablePtr table, std::vector<BitSet> masks,
                               LatticeOptions const& options = {});

  TablePtr const& table() const noexcept { return table_; }
  RelationKind kind() const noexcept { return table_->kind(); }
  int universe_size() const noexcept { return table_->universe_size(); }
  std::size_t size() const noexcept { return masks_.size(); }

  // Elements are ordered by (cardinality, mask), so the bottom comes first
  // and the top last.
  index bottom() const noexcept { return 0; }
  index top() const noexcept { return masks_.size() - 1; }
  BitSet const& mask(index i) const { return masks_.at(i); }
  RelationSet element(index i) const { return RelationSet(table_, masks_.at(i)); }
  std::optional<index> find(BitSet const& mask) const;

  bool leq(index a, index b) const { return masks_[a].is_subset_of(masks_[b]); }
  index meet(index a, index b) const;
  index join(index a, index b) const;
  // Least element containing the given set of relations.
  index closure(BitSet const& relations) const;

  std::vector<index> const& upper_covers(index i) const { return upper_.at(i); }
  std::vector<index> const& lower_covers(index i) const { return lower_.at(i); }
  bool covers(index lower, index upper) const;
  // All pairs (a, b) with a ≺ b, sorted.
  std::vector<std::pair<index, index>> cover_pairs() const;

  std::vector<index> atoms() const;
  std::vector<index> coatoms() const;
  std::vector<index> meet_irreducibles() const;
  std::vector<index> join_irreducibles() const;

  bool has_dense_tables() const noexcept { return !meet_table_.empty() || size() <= 1; }
  // Checks over all pairs or triples; need the dense tables.
  bool is_distributive() const;
  bool is_complemented() const;
  bool is_modular() const;

 private:
  BigLattice() = default;
  void finish(std::vector<BitSet> masks, std::vector<BitSet> generators,
              LatticeOptions const& options);
  void require_dense(char const* what) const;

  TablePtr table_;
  std::vector<BitSet> masks_;
  std::unordered_map<BitSet, index, BitSetHash> index_;
  // Meet-irreducible elements: every element is the meet of those above it.
  std::vector<BitSet> generators_;
  std::vector<std::vector<index>> upper_;
  std::vector<std::vector<index>> lower_;
  std::vector<std::uint32_t> meet_table_;
  std::vector<std::uint32_t> join_table_;
};

// A tolerance of a finite lattice. Because (x, y) ∈ T iff (x∧y, x∨y) ∈ T and
// the classes of comparable pairs above u form an interval [u, up(u)], T is
// stored as the map u ↦ up(u).
class Tolerance {
 public:
  Tolerance(BigLattice const& lattice, std::vector<BigLattice::index> up);

  static Tolerance diagonal(BigLattice const& lattice);

  bool contains(BigLattice::index x, BigLattice::index y) const;
  BigLattice::index up(BigLattice::index u) const { return up_.at(u); }
  bool is_full() const;
  bool is_diagonal() const;
  std::size_t pair_count() const;

  friend bool operator==(Tolerance const& a, Tolerance const& b) {
    return a.lattice_ == b.lattice_ && a.up_ == b.up_;
  }

 private:
  BigLattice const* lattice_;
  std::vector<BigLattice::index> up_;
};

// Least tolerance containing (x, y).
Tolerance tolerance_generated(BigLattice const& lattice, BigLattice::index x,
                              BigLattice::index y);

// Every nontrivial tolerance contains some cover pair a ≺ b, so the lattice is
// tolerance simple iff T(a, b) is full for all of them.
bool is_tolerance_simple(BigLattice const& lattice);

struct ModularityReport {
  // (bottom, a, c, b, top) with a < c, a ∨ b = top and c ∧ b = bottom.
  std::optional<std::array<BigLattice::index, 5>> pentagon;
  bool pentagon_from_known_witness = false;
  bool upper_semimodular = true;
  // (a, b) with a∧b ≺ a but not b ≺ a∨b.
  std::optional<std::pair<BigLattice::index, BigLattice::index>> upper_counterexample;
  bool lower_semimodular = true;
  // (a, b) with a ≺ a∨b but not a∧b ≺ b.
  std::optional<std::pair<BigLattice::index, BigLattice::index>> lower_counterexample;
  bool modular = true;
};

ModularityReport modularity_report(BigLattice const& lattice);

// The candidate pentagon {bottom, E_κ1, E_κ1 ∨ E_κ2, Con(f), top} for
// κ1 = [0,1,2], κ2 = [0,1][2,3] and f moving 0 to 3; needs n >= 4 and an
// equivalence lattice.
std::optional<std::array<BigLattice::index, 5>> known_pentagon(BigLattice const& lattice);
bool is_pentagon(BigLattice const& lattice, std::array<BigLattice::index, 5> const& p);

struct ExtremalSet {
  // Zero when no subset works (or the lattice has one element).
  int k = 0;
  std::vector<BigLattice::index> witness;
};

// Fewest coatoms meeting to the bottom; pairs are searched before triples.
ExtremalSet min_coatom_meet(BigLattice const& lattice, int max_k = 4);
// Fewest atoms joining to the top.
ExtremalSet min_atom_join(BigLattice const& lattice, int max_k = 4);

}  // namespace conlat
