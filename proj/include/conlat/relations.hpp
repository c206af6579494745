#pragma once

// Equivalence relations, quasiorders and unary maps on the finite universe
// {0, ..., n-1}, plus the indexed tables of all relations of one kind.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conlat/error.hpp"

namespace conlat {

using element = int;

struct Universe {
  explicit Universe(int size);
  int n;
};

// Square boolean matrix, one 64-bit row per element; bit j of row i is the
// pair (i, j). Universes are limited to 64 elements here.
class BoolMatrix {
 public:
  static constexpr int max_size = 64;

  BoolMatrix() = default;
  explicit BoolMatrix(int n);

  static BoolMatrix identity(int n);

  int size() const noexcept { return n_; }
  bool test(element i, element j) const noexcept {
    return (rows_[static_cast<std::size_t>(i)] >> j) & 1U;
  }
  void set(element i, element j) noexcept {
    rows_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
  }
  std::uint64_t row(element i) const noexcept {
    return rows_[static_cast<std::size_t>(i)];
  }
  std::vector<std::uint64_t> const& rows() const noexcept { return rows_; }

  bool is_reflexive() const noexcept;
  bool is_symmetric() const noexcept;
  bool is_transitive() const noexcept;
  bool is_subset_of(BoolMatrix const& other) const noexcept;
  std::size_t pair_count() const noexcept;

  friend bool operator==(BoolMatrix const&, BoolMatrix const&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Smallest transitive relation containing m (Warshall, row-parallel).
BoolMatrix transitive_closure(BoolMatrix m);

// An equivalence relation stored as its restricted growth string: rgs[0] = 0
// and rgs[i] <= 1 + max(rgs[0..i-1]). Two partitions are equal iff their
// strings are, and the lexicographic order on strings is the table order.
class Partition {
 public:
  Partition() = default;

  static Partition from_rgs(std::vector<int> rgs);
  // Any labelling of the elements; labels are renumbered by first occurrence.
  static Partition from_labels(std::vector<int> const& labels);
  static Partition from_blocks(int n, std::vector<std::vector<element>> const& blocks);
  static Partition discrete(int n);  // Δ
  static Partition full(int n);      // ∇

  int size() const noexcept { return static_cast<int>(rgs_.size()); }
  std::vector<int> const& rgs() const noexcept { return rgs_; }
  int block_of(element x) const noexcept {
    return rgs_[static_cast<std::size_t>(x)];
  }
  bool contains(element x, element y) const noexcept {
    return block_of(x) == block_of(y);
  }
  int block_count() const noexcept;
  std::vector<std::vector<element>> blocks() const;

  bool is_discrete() const noexcept;
  bool is_full() const noexcept;
  // Inclusion of pair sets (this refines other).
  bool refines(Partition const& other) const noexcept;

  BoolMatrix to_matrix() const;

  friend bool operator==(Partition const&, Partition const&) = default;
  friend auto operator<=>(Partition const&, Partition const&) = default;

 private:
  explicit Partition(std::vector<int> rgs) : rgs_(std::move(rgs)) {}
  std::vector<int> rgs_;
};

// A reflexive and transitive relation.
class Quasiorder {
 public:
  Quasiorder() = default;

  static Quasiorder from_matrix(BoolMatrix m);
  static Quasiorder from_partition(Partition const& p);
  static Quasiorder discrete(int n);
  static Quasiorder full(int n);

  int size() const noexcept { return m_.size(); }
  bool contains(element x, element y) const noexcept { return m_.test(x, y); }
  BoolMatrix const& matrix() const noexcept { return m_; }
  bool is_symmetric() const noexcept { return m_.is_symmetric(); }
  // Defined only for symmetric quasiorders.
  Partition to_partition() const;

  // Row-major bit string, (0,0) most significant. Requires n <= 8.
  std::uint64_t lex_key() const;

  friend bool operator==(Quasiorder const&, Quasiorder const&) = default;
  friend bool operator<(Quasiorder const& a, Quasiorder const& b);

 private:
  explicit Quasiorder(BoolMatrix m) : m_(std::move(m)) {}
  BoolMatrix m_;
};

// A map A -> A given by its image vector.
class UnaryMap {
 public:
  UnaryMap() = default;
  explicit UnaryMap(std::vector<element> images);

  static UnaryMap identity(int n);
  static UnaryMap constant(int n, element c);
  // Inverse of code(): images read as base-n digits, images[0] most significant.
  static UnaryMap from_code(int n, std::uint64_t code);

  int size() const noexcept { return static_cast<int>(img_.size()); }
  element operator()(element x) const noexcept {
    return img_[static_cast<std::size_t>(x)];
  }
  std::vector<element> const& images() const noexcept { return img_; }
  std::uint64_t code() const noexcept;

  bool is_identity() const noexcept;
  bool is_constant() const noexcept;
  bool is_trivial() const noexcept { return is_identity() || is_constant(); }
  bool is_permutation() const noexcept;

  // (f.then(g))(x) = g(f(x)).
  UnaryMap then(UnaryMap const& g) const;
  UnaryMap power(unsigned k) const;

  friend bool operator==(UnaryMap const&, UnaryMap const&) = default;
  friend auto operator<=>(UnaryMap const&, UnaryMap const&) = default;

 private:
  std::vector<element> img_;
};

// n^n, or CapExceeded when it does not fit the scan counters.
std::uint64_t map_count(int n);

Partition partition_meet(Partition const& p, Partition const& q);
Partition partition_join(Partition const& p, Partition const& q);

bool preserves(UnaryMap const& f, Partition const& r);
bool preserves(UnaryMap const& f, Quasiorder const& r);

// θ_f(x, y): least f-invariant equivalence containing (x, y).
Partition principal_congruence(UnaryMap const& f, element x, element y);
// α_f(x, y): least f-invariant quasiorder containing (x, y).
Quasiorder principal_quasiorder(UnaryMap const& f, element x, element y);

enum class RelationKind { equivalence, quasiorder };

std::string_view to_string(RelationKind kind);
RelationKind parse_relation_kind(std::string_view text);

// Default caps; the hard limits are 12 elements for equivalence tables and
// 8 for quasiorder tables.
struct EnumerationCaps {
  int max_n_equivalence = 8;
  int max_n_quasiorder = 5;
};

// All relations of one kind on a universe, in canonical order, with a
// reverse index. Immutable after construction; shared through TablePtr.
class RelationTable {
 public:
  // Items must be pairwise distinct; they are stored in the given order.
  RelationTable(int n, std::vector<Partition> items);
  RelationTable(int n, std::vector<Quasiorder> items);

  RelationKind kind() const noexcept { return kind_; }
  int universe_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return rows_.size(); }

  // Valid for equivalence tables.
  Partition const& partition(std::size_t i) const { return partitions_.at(i); }
  // Valid for both kinds; equivalences are viewed as symmetric quasiorders.
  Quasiorder quasiorder(std::size_t i) const;
  BoolMatrix const& matrix(std::size_t i) const { return rows_[i]; }

  std::size_t index_of(Partition const& p) const;
  std::size_t index_of(Quasiorder const& q) const;
  bool contains(Partition const& p) const;

  std::size_t discrete_index() const noexcept { return discrete_; }
  std::size_t full_index() const noexcept { return full_; }

  // f ▷ items[i], using the table's compact storage.
  bool preserved_by(UnaryMap const& f, std::size_t i) const noexcept;
  bool preserved_by(std::span<element const> f, std::size_t i) const noexcept;

  std::string text(std::size_t i) const;

 private:
  void build_index();

  RelationKind kind_;
  int n_;
  std::vector<Partition> partitions_;
  std::vector<BoolMatrix> rows_;
  // Equivalences only: flat rgs labels and the first element of each block.
  std::vector<std::uint8_t> labels_;
  std::vector<std::uint8_t> block_first_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::size_t discrete_ = 0;
  std::size_t full_ = 0;
};

using TablePtr = std::shared_ptr<RelationTable const>;

TablePtr enumerate_relations(Universe u, RelationKind kind,
                             EnumerationCaps const& caps = {});

// Text forms. Maps: comma-separated images ("1,0,2"). Partitions: block
// notation with singletons omitted ("[0,1][2,3]"); Δ prints as "Δ".
UnaryMap parse_unary_map(std::string_view text, bool one_based = false);
std::string format_unary_map(UnaryMap const& f);
Partition parse_partition(std::string_view text, int n);
std::string format_partition(Partition const& p);
// Strict pairs of the relation, e.g. "{(0,1),(2,1)}"; Δ prints as "Δ".
std::string format_quasiorder(Quasiorder const& q);

}  // namespace conlat
