#pragma once

// The End / Con / Quord Galois connection between unary maps and binary
// relations on a finite set, its closure operators, and the map
// Φ(Q) = Q ∩ Eq(A) from quasiorder lattices to congruence lattices.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conlat/bitset.hpp"
#include "conlat/relations.hpp"

namespace conlat {

struct ScanOptions {
  unsigned workers = 1;
  // Largest universe for which a full n^n scan is attempted.
  int max_scan_n = 7;
};

// A subset of a relation table.
class RelationSet {
 public:
  RelationSet() = default;
  RelationSet(TablePtr table, BitSet mask);

  static RelationSet empty(TablePtr table);
  static RelationSet all(TablePtr table);
  // {Δ, ∇}
  static RelationSet bounds(TablePtr table);
  static RelationSet of(TablePtr table, std::span<std::size_t const> indices);

  TablePtr const& table() const noexcept { return table_; }
  BitSet const& mask() const noexcept { return mask_; }
  RelationKind kind() const noexcept { return table_->kind(); }
  int universe_size() const noexcept { return table_->universe_size(); }

  bool contains(std::size_t i) const noexcept { return mask_.test(i); }
  bool contains(Partition const& p) const;
  std::size_t count() const noexcept { return mask_.count(); }
  std::vector<std::size_t> indices() const { return mask_.indices(); }
  std::vector<std::string> texts() const;

  bool is_subset_of(RelationSet const& other) const;
  RelationSet intersect(RelationSet const& other) const;
  RelationSet unite(RelationSet const& other) const;

  friend bool operator==(RelationSet const& a, RelationSet const& b) {
    return a.table_.get() == b.table_.get() && a.mask_ == b.mask_;
  }

 private:
  TablePtr table_;
  BitSet mask_;
};

// A set of unary maps kept sorted by image vector.
class Monoid {
 public:
  Monoid() = default;
  explicit Monoid(std::vector<UnaryMap> members);

  std::vector<UnaryMap> const& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(UnaryMap const& f) const;
  bool is_closed_under_composition() const;

  friend bool operator==(Monoid const&, Monoid const&) = default;

 private:
  std::vector<UnaryMap> members_;
};

// Relations of `table` preserved by every map in F (all of them when F is
// empty). con_of and quord_of insist on the matching table kind.
RelationSet invariants_of(std::span<UnaryMap const> maps, TablePtr const& table);
RelationSet con_of(std::span<UnaryMap const> maps, TablePtr const& table);
RelationSet quord_of(std::span<UnaryMap const> maps, TablePtr const& table);
RelationSet con_of(UnaryMap const& f, TablePtr const& table);
RelationSet quord_of(UnaryMap const& f, TablePtr const& table);

// Con(A, f) ⊆ Con(A, g) decided pointwise: (gx, gy) ∈ θ_f(x, y) for all x, y.
bool con_contained_by_principal(UnaryMap const& f, UnaryMap const& g);

// Every map A -> A preserving all relations of S, in lexicographic order.
Monoid end_of(RelationSet const& s, ScanOptions const& options = {});

// Invariants of End S: Con End S or Quord End S depending on the table kind.
RelationSet galois_closure(RelationSet const& s, ScanOptions const& options = {});
RelationSet con_closure(RelationSet const& e, ScanOptions const& options = {});
bool is_galois_closed(RelationSet const& s, ScanOptions const& options = {});

// Least closed set containing both; both inputs must be closed.
RelationSet join_in_E(RelationSet const& a, RelationSet const& b,
                      ScanOptions const& options = {});

// Φ restricted to one pair of tables: keeps the symmetric quasiorders and
// re-indexes them into the equivalence table.
class PhiMap {
 public:
  PhiMap(TablePtr quasiorders, TablePtr equivalences);

  TablePtr const& source() const noexcept { return source_; }
  TablePtr const& target() const noexcept { return target_; }
  BitSet apply(BitSet const& q) const;
  RelationSet operator()(RelationSet const& q) const;

 private:
  TablePtr source_;
  TablePtr target_;
  std::vector<std::pair<std::size_t, std::size_t>> symmetric_;
};

RelationSet phi(RelationSet const& q, TablePtr const& equivalences);

// All members of the family together with all their pairwise intersections,
// iterated to a fixpoint. Output sorted by (popcount, mask value).
// Throws CapExceeded once more than max_elements sets have been produced.
std::vector<BitSet> meet_closure(std::vector<BitSet> family,
                                 std::size_t max_elements = SIZE_MAX);
void sort_by_size(std::vector<BitSet>& masks);

// All closed sets containing the closed set c, sorted by (size, mask).
std::vector<RelationSet> filter_above(RelationSet const& c, ScanOptions const& options = {});

// Decides whether Con(A, f) is meet-irreducible in the lattice of all
// congruence lattices on A. Every closed set strictly above C = Con(A, f) is
// an intersection of lattices Con(A, g) strictly above C, so C is
// meet-irreducible iff the meet of those Con(A, g) is not C itself.
bool is_meet_irreducible(UnaryMap const& f, ScanOptions const& options = {});
bool is_meet_irreducible(UnaryMap const& f, TablePtr const& equivalences,
                         ScanOptions const& options = {});

// Con(A, f) for every f in A^A, indexed by UnaryMap::code(). Turns End and
// containment questions into mask tests; used by the exhaustive checks.
class CongruenceIndex {
 public:
  static constexpr int default_max_n = 6;

  explicit CongruenceIndex(TablePtr equivalences, ScanOptions const& options = {},
                           int max_n = default_max_n);

  TablePtr const& table() const noexcept { return table_; }
  int universe_size() const noexcept { return n_; }
  std::uint64_t map_count() const noexcept { return count_; }

  BitSet con(std::uint64_t code) const;
  RelationSet con_set(std::uint64_t code) const;
  // Con(A, f) ⊆ Con(A, g).
  bool contained(std::uint64_t f, std::uint64_t g) const noexcept;
  bool same(std::uint64_t f, std::uint64_t g) const noexcept;
  bool is_superset(std::uint64_t g, BitSet const& c) const noexcept;

  // Codes of End C for a mask C over the table.
  std::vector<std::uint64_t> end_of(BitSet const& c) const;
  bool is_meet_irreducible(std::uint64_t f) const;
  // Meet of all Con(A, g) strictly above Con(A, f); the full table when there
  // are none.
  BitSet meet_strictly_above(std::uint64_t f) const;

 private:
  std::span<std::uint64_t const> words(std::uint64_t code) const noexcept {
    return {masks_.data() + code * word_count_, word_count_};
  }

  TablePtr table_;
  int n_;
  std::uint64_t count_;
  std::size_t word_count_;
  std::vector<std::uint64_t> masks_;
};

}  // namespace conlat
