#include "conlat/galois.hpp"

#include <algorithm>
#include <unordered_set>

#include "conlat/parallel.hpp"

namespace conlat {

namespace {

void require_kind(TablePtr const& table, RelationKind kind, char const* what) {
  if (!table) {
    throw Error(std::string(what) + ": missing relation table");
  }
  if (table->kind() != kind) {
    throw Error(std::string(what) + ": expected a " + std::string(to_string(kind)) + " table");
  }
}

void require_same_table(RelationSet const& a, RelationSet const& b, char const* what) {
  if (a.table().get() != b.table().get()) {
    throw UniverseMismatch(std::string(what) + ": relation sets over different tables");
  }
}

BitSet invariant_mask(std::span<UnaryMap const> maps, RelationTable const& table) {
  BitSet mask(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    bool keep = true;
    for (auto const& f : maps) {
      if (!table.preserved_by(f, i)) {
        keep = false;
        break;
      }
    }
    if (keep) {
      mask.set(i);
    }
  }
  return mask;
}

}  // namespace

// RelationSet

RelationSet::RelationSet(TablePtr table, BitSet mask)
    : table_(std::move(table)), mask_(std::move(mask)) {
  if (!table_ || mask_.size() != table_->size()) {
    throw UniverseMismatch("mask length does not match relation table");
  }
}

RelationSet RelationSet::empty(TablePtr table) {
  auto const size = table->size();
  return RelationSet(std::move(table), BitSet(size));
}

RelationSet RelationSet::all(TablePtr table) {
  auto const size = table->size();
  return RelationSet(std::move(table), BitSet::full(size));
}

RelationSet RelationSet::bounds(TablePtr table) {
  BitSet mask(table->size());
  mask.set(table->discrete_index());
  mask.set(table->full_index());
  return RelationSet(std::move(table), std::move(mask));
}

RelationSet RelationSet::of(TablePtr table, std::span<std::size_t const> indices) {
  BitSet mask(table->size());
  for (auto i : indices) {
    if (i >= table->size()) {
      throw OutOfRange("relation index " + std::to_string(i) + " outside table");
    }
    mask.set(i);
  }
  return RelationSet(std::move(table), std::move(mask));
}

bool RelationSet::contains(Partition const& p) const {
  return table_->contains(p) && mask_.test(table_->index_of(p));
}

std::vector<std::string> RelationSet::texts() const {
  std::vector<std::string> out;
  mask_.for_each([&](std::size_t i) { out.push_back(table_->text(i)); });
  return out;
}

bool RelationSet::is_subset_of(RelationSet const& other) const {
  require_same_table(*this, other, "RelationSet::is_subset_of");
  return mask_.is_subset_of(other.mask_);
}

RelationSet RelationSet::intersect(RelationSet const& other) const {
  require_same_table(*this, other, "RelationSet::intersect");
  return RelationSet(table_, mask_ & other.mask_);
}

RelationSet RelationSet::unite(RelationSet const& other) const {
  require_same_table(*this, other, "RelationSet::unite");
  return RelationSet(table_, mask_ | other.mask_);
}

// Monoid

Monoid::Monoid(std::vector<UnaryMap> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Monoid::contains(UnaryMap const& f) const {
  return std::binary_search(members_.begin(), members_.end(), f);
}

bool Monoid::is_closed_under_composition() const {
  for (auto const& f : members_) {
    for (auto const& g : members_) {
      if (!contains(f.then(g))) {
        return false;
      }
    }
  }
  return true;
}

// Invariants

RelationSet invariants_of(std::span<UnaryMap const> maps, TablePtr const& table) {
  if (!table) {
    throw Error("invariants_of: missing relation table");
  }
  for (auto const& f : maps) {
    if (f.size() != table->universe_size()) {
      throw UniverseMismatch("map on " + std::to_string(f.size()) +
                             " elements used with a table over " +
                             std::to_string(table->universe_size()));
    }
  }
  return RelationSet(table, invariant_mask(maps, *table));
}

RelationSet con_of(std::span<UnaryMap const> maps, TablePtr const& table) {
  require_kind(table, RelationKind::equivalence, "con_of");
  return invariants_of(maps, table);
}

RelationSet quord_of(std::span<UnaryMap const> maps, TablePtr const& table) {
  require_kind(table, RelationKind::quasiorder, "quord_of");
  return invariants_of(maps, table);
}

RelationSet con_of(UnaryMap const& f, TablePtr const& table) {
  return con_of(std::span<UnaryMap const>(&f, 1), table);
}

RelationSet quord_of(UnaryMap const& f, TablePtr const& table) {
  return quord_of(std::span<UnaryMap const>(&f, 1), table);
}

bool con_contained_by_principal(UnaryMap const& f, UnaryMap const& g) {
  if (f.size() != g.size()) {
    throw UniverseMismatch("con_contained_by_principal: maps on different universes");
  }
  int const n = f.size();
  for (element x = 0; x < n; ++x) {
    for (element y = x + 1; y < n; ++y) {
      if (g(x) != g(y) && !principal_congruence(f, x, y).contains(g(x), g(y))) {
        return false;
      }
    }
  }
  return true;
}

// End

Monoid end_of(RelationSet const& s, ScanOptions const& options) {
  RelationTable const& table = *s.table();
  int const n = table.universe_size();
  if (n > options.max_scan_n) {
    throw CapExceeded("End scan capped at n=" + std::to_string(options.max_scan_n) +
                      ", requested n=" + std::to_string(n));
  }
  std::vector<std::size_t> const relations = s.indices();
  auto chunks = parallel_chunks<std::vector<UnaryMap>>(
      map_count(n), options.workers, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<UnaryMap> found;
        if (begin == end) {
          return found;
        }
        std::vector<element> img = UnaryMap::from_code(n, begin).images();
        // Most maps fail on the same few relations; test the last culprit first.
        std::size_t culprit = 0;
        for (std::uint64_t code = begin; code < end; ++code, advance_images(img, n)) {
          std::span<element const> const f(img);
          if (!relations.empty() && !table.preserved_by(f, relations[culprit])) {
            continue;
          }
          bool ok = true;
          for (std::size_t k = 0; k < relations.size(); ++k) {
            if (!table.preserved_by(f, relations[k])) {
              culprit = k;
              ok = false;
              break;
            }
          }
          if (ok) {
            found.emplace_back(img);
          }
        }
        return found;
      });
  std::vector<UnaryMap> members;
  for (auto& chunk : chunks) {
    members.insert(members.end(), std::make_move_iterator(chunk.begin()),
                   std::make_move_iterator(chunk.end()));
  }
  return Monoid(std::move(members));
}

RelationSet galois_closure(RelationSet const& s, ScanOptions const& options) {
  Monoid const m = end_of(s, options);
  return invariants_of(m.members(), s.table());
}

RelationSet con_closure(RelationSet const& e, ScanOptions const& options) {
  require_kind(e.table(), RelationKind::equivalence, "con_closure");
  return galois_closure(e, options);
}

bool is_galois_closed(RelationSet const& s, ScanOptions const& options) {
  return galois_closure(s, options) == s;
}

RelationSet join_in_E(RelationSet const& a, RelationSet const& b, ScanOptions const& options) {
  require_same_table(a, b, "join_in_E");
  if (!is_galois_closed(a, options) || !is_galois_closed(b, options)) {
    throw NotClosedInput("join_in_E: inputs must be Galois closed");
  }
  return galois_closure(a.unite(b), options);
}

// Φ

PhiMap::PhiMap(TablePtr quasiorders, TablePtr equivalences)
    : source_(std::move(quasiorders)), target_(std::move(equivalences)) {
  require_kind(source_, RelationKind::quasiorder, "PhiMap");
  require_kind(target_, RelationKind::equivalence, "PhiMap");
  if (source_->universe_size() != target_->universe_size()) {
    throw UniverseMismatch("PhiMap: tables over different universes");
  }
  for (std::size_t i = 0; i < source_->size(); ++i) {
    if (source_->matrix(i).is_symmetric()) {
      symmetric_.emplace_back(i, target_->index_of(source_->quasiorder(i).to_partition()));
    }
  }
}

BitSet PhiMap::apply(BitSet const& q) const {
  BitSet out(target_->size());
  for (auto [from, to] : symmetric_) {
    if (q.test(from)) {
      out.set(to);
    }
  }
  return out;
}

RelationSet PhiMap::operator()(RelationSet const& q) const {
  if (q.table().get() != source_.get()) {
    throw UniverseMismatch("PhiMap applied to a set over another table");
  }
  return RelationSet(target_, apply(q.mask()));
}

RelationSet phi(RelationSet const& q, TablePtr const& equivalences) {
  return PhiMap(q.table(), equivalences)(q);
}

// Meet closure and filters

void sort_by_size(std::vector<BitSet>& masks) {
  std::vector<std::pair<std::size_t, BitSet>> keyed;
  keyed.reserve(masks.size());
  for (auto& m : masks) {
    keyed.emplace_back(m.count(), std::move(m));
  }
  std::sort(keyed.begin(), keyed.end(), [](auto const& a, auto const& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  masks.clear();
  for (auto& [count, m] : keyed) {
    masks.push_back(std::move(m));
  }
}

std::vector<BitSet> meet_closure(std::vector<BitSet> family, std::size_t max_elements) {
  std::unordered_set<BitSet, BitSetHash> seen;
  std::vector<BitSet> generators;
  for (auto& m : family) {
    if (seen.insert(m).second) {
      generators.push_back(m);
    }
  }
  // Every intersection of members arises by intersecting with one generator
  // at a time, so closing under "element ∧ generator" reaches the fixpoint.
  std::vector<BitSet> elements = generators;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (auto const& g : generators) {
      BitSet m = elements[i] & g;
      if (seen.insert(m).second) {
        elements.push_back(std::move(m));
        if (elements.size() > max_elements) {
          throw CapExceeded("meet-closure exceeded " + std::to_string(max_elements) +
                            " elements");
        }
      }
    }
  }
  sort_by_size(elements);
  return elements;
}

std::vector<RelationSet> filter_above(RelationSet const& c, ScanOptions const& options) {
  Monoid const m = end_of(c, options);
  std::vector<BitSet> family;
  family.reserve(m.size() + 1);
  family.push_back(BitSet::full(c.table()->size()));
  for (auto const& g : m.members()) {
    family.push_back(invariant_mask(std::span<UnaryMap const>(&g, 1), *c.table()));
  }
  std::vector<RelationSet> out;
  for (auto& mask : meet_closure(std::move(family))) {
    out.emplace_back(c.table(), std::move(mask));
  }
  return out;
}

bool is_meet_irreducible(UnaryMap const& f, ScanOptions const& options) {
  if (f.size() > options.max_scan_n) {
    throw CapExceeded("meet-irreducibility scan capped at n=" +
                      std::to_string(options.max_scan_n));
  }
  return is_meet_irreducible(
      f, enumerate_relations(Universe(f.size()), RelationKind::equivalence), options);
}

bool is_meet_irreducible(UnaryMap const& f, TablePtr const& equivalences,
                         ScanOptions const& options) {
  require_kind(equivalences, RelationKind::equivalence, "is_meet_irreducible");
  RelationSet const c = con_of(f, equivalences);
  Monoid const end = end_of(c, options);
  BitSet meet = BitSet::full(equivalences->size());
  for (auto const& g : end.members()) {
    BitSet const cg = invariant_mask(std::span<UnaryMap const>(&g, 1), *equivalences);
    if (cg != c.mask()) {
      meet &= cg;
    }
  }
  return meet != c.mask();
}

// CongruenceIndex

CongruenceIndex::CongruenceIndex(TablePtr equivalences, ScanOptions const& options, int max_n)
    : table_(std::move(equivalences)) {
  require_kind(table_, RelationKind::equivalence, "CongruenceIndex");
  n_ = table_->universe_size();
  if (n_ > max_n) {
    throw CapExceeded("congruence index capped at n=" + std::to_string(max_n) +
                      ", requested n=" + std::to_string(n_));
  }
  count_ = conlat::map_count(n_);
  word_count_ = BitSet(table_->size()).word_count();
  masks_.assign(static_cast<std::size_t>(count_) * word_count_, 0);
  RelationTable const& table = *table_;
  parallel_chunks<char>(count_, options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    if (begin == end) {
      return char{0};
    }
    std::vector<element> img = UnaryMap::from_code(n_, begin).images();
    for (std::uint64_t code = begin; code < end; ++code, advance_images(img, n_)) {
      std::uint64_t* out = masks_.data() + code * word_count_;
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (table.preserved_by(std::span<element const>(img), i)) {
          out[i / 64] |= std::uint64_t{1} << (i % 64);
        }
      }
    }
    return char{0};
  });
}

BitSet CongruenceIndex::con(std::uint64_t code) const {
  BitSet out(table_->size());
  auto const src = words(code);
  std::copy(src.begin(), src.end(), out.words().begin());
  return out;
}

RelationSet CongruenceIndex::con_set(std::uint64_t code) const {
  return RelationSet(table_, con(code));
}

bool CongruenceIndex::contained(std::uint64_t f, std::uint64_t g) const noexcept {
  auto const a = words(f);
  auto const b = words(g);
  for (std::size_t w = 0; w < word_count_; ++w) {
    if ((a[w] & ~b[w]) != 0) {
      return false;
    }
  }
  return true;
}

bool CongruenceIndex::same(std::uint64_t f, std::uint64_t g) const noexcept {
  auto const a = words(f);
  auto const b = words(g);
  return std::equal(a.begin(), a.end(), b.begin());
}

bool CongruenceIndex::is_superset(std::uint64_t g, BitSet const& c) const noexcept {
  auto const a = c.words();
  auto const b = words(g);
  for (std::size_t w = 0; w < word_count_; ++w) {
    if ((a[w] & ~b[w]) != 0) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> CongruenceIndex::end_of(BitSet const& c) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t g = 0; g < count_; ++g) {
    if (is_superset(g, c)) {
      out.push_back(g);
    }
  }
  return out;
}

BitSet CongruenceIndex::meet_strictly_above(std::uint64_t f) const {
  BitSet meet = BitSet::full(table_->size());
  auto m = meet.words();
  for (std::uint64_t g = 0; g < count_; ++g) {
    if (g == f || !contained(f, g) || same(f, g)) {
      continue;
    }
    auto const cg = words(g);
    for (std::size_t w = 0; w < word_count_; ++w) {
      m[w] &= cg[w];
    }
  }
  return meet;
}

bool CongruenceIndex::is_meet_irreducible(std::uint64_t f) const {
  return meet_strictly_above(f) != con(f);
}

}  // namespace conlat
