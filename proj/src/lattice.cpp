#include "conlat/lattice.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

#include "conlat/parallel.hpp"

namespace conlat {

namespace {

using index = BigLattice::index;

// Distinct lattices Con(A, f) (or Quord(A, f)) over all maps f, sorted by
// (cardinality, mask).
std::vector<BitSet> single_map_lattices(RelationTable const& table, ScanOptions const& scan) {
  int const n = table.universe_size();
  auto chunks = parallel_chunks<std::vector<BitSet>>(
      map_count(n), scan.workers, [&](std::uint64_t begin, std::uint64_t end) {
        std::unordered_set<BitSet, BitSetHash> seen;
        std::vector<BitSet> found;
        if (begin == end) {
          return found;
        }
        std::vector<element> img = UnaryMap::from_code(n, begin).images();
        for (std::uint64_t code = begin; code < end; ++code, advance_images(img, n)) {
          BitSet mask(table.size());
          for (std::size_t i = 0; i < table.size(); ++i) {
            if (table.preserved_by(std::span<element const>(img), i)) {
              mask.set(i);
            }
          }
          if (seen.insert(mask).second) {
            found.push_back(std::move(mask));
          }
        }
        return found;
      });
  std::unordered_set<BitSet, BitSetHash> seen;
  std::vector<BitSet> distinct;
  for (auto& chunk : chunks) {
    for (auto& m : chunk) {
      if (seen.insert(m).second) {
        distinct.push_back(std::move(m));
      }
    }
  }
  sort_by_size(distinct);
  return distinct;
}

// Members of a size-sorted family that are not the intersection of the
// members strictly above them.
std::vector<BitSet> meet_irreducible_members(std::vector<BitSet> const& sorted) {
  std::vector<BitSet> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    auto const& g = sorted[i];
    BitSet above = BitSet::full(g.size());
    for (std::size_t j = i + 1; j < sorted.size() && above != g; ++j) {
      if (g.is_subset_of(sorted[j]) && sorted[j] != g) {
        above &= sorted[j];
      }
    }
    if (above != g) {
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace

// BigLattice

BigLattice BigLattice::build(Universe u, RelationKind kind, LatticeOptions const& options) {
  int const cap =
      kind == RelationKind::equivalence ? options.max_n_equivalence : options.max_n_quasiorder;
  if (u.n > cap) {
    throw CapExceeded("lattice of " + std::string(to_string(kind)) + " lattices capped at n=" +
                      std::to_string(cap) + ", requested n=" + std::to_string(u.n));
  }
  EnumerationCaps caps;
  caps.max_n_equivalence = std::max(caps.max_n_equivalence, options.max_n_equivalence);
  caps.max_n_quasiorder = std::max(caps.max_n_quasiorder, options.max_n_quasiorder);
  BigLattice lattice;
  lattice.table_ = enumerate_relations(u, kind, caps);
  auto const singles = single_map_lattices(*lattice.table_, options.scan);
  auto generators = meet_irreducible_members(singles);
  std::vector<BitSet> family = generators;
  family.push_back(BitSet::full(lattice.table_->size()));
  auto masks = meet_closure(std::move(family), options.max_elements);
  lattice.finish(std::move(masks), std::move(generators), options);
  return lattice;
}

BigLattice BigLattice::from_masks(TablePtr table, std::vector<BitSet> masks,
                                  LatticeOptions const& options) {
  BigLattice lattice;
  lattice.table_ = std::move(table);
  std::unordered_set<BitSet, BitSetHash> seen;
  std::vector<BitSet> distinct;
  bool has_full = false;
  for (auto& m : masks) {
    if (m.size() != lattice.table_->size()) {
      throw UniverseMismatch("mask length does not match relation table");
    }
    has_full = has_full || m == BitSet::full(m.size());
    if (seen.insert(m).second) {
      distinct.push_back(std::move(m));
    }
  }
  if (!has_full) {
    throw Error("lattice family must contain the full set");
  }
  for (auto const& a : distinct) {
    for (auto const& b : distinct) {
      if (!seen.count(a & b)) {
        throw Error("lattice family is not closed under intersection");
      }
    }
  }
  sort_by_size(distinct);
  auto generators = meet_irreducible_members(distinct);
  lattice.finish(std::move(distinct), std::move(generators), options);
  return lattice;
}

void BigLattice::finish(std::vector<BitSet> masks, std::vector<BitSet> generators,
                        LatticeOptions const& options) {
  masks_ = std::move(masks);
  generators_ = std::move(generators);
  sort_by_size(masks_);
  index_.reserve(masks_.size());
  for (index i = 0; i < masks_.size(); ++i) {
    index_.emplace(masks_[i], i);
  }

  // The upper covers of x are the minimal sets among closure(x ∪ {r}), r ∉ x.
  std::size_t const width = table_->size();
  upper_.assign(masks_.size(), {});
  lower_.assign(masks_.size(), {});
  std::vector<BitSet> step(width);
  for (index i = 0; i < masks_.size(); ++i) {
    BitSet const& x = masks_[i];
    std::vector<std::size_t> outside;
    for (std::size_t r = 0; r < width; ++r) {
      if (!x.test(r)) {
        outside.push_back(r);
        step[r] = BitSet::full(width);
      }
    }
    for (auto const& g : generators_) {
      if (!x.is_subset_of(g)) {
        continue;
      }
      for (auto r : outside) {
        if (g.test(r)) {
          step[r] &= g;
        }
      }
    }
    std::vector<index> candidates;
    for (auto r : outside) {
      candidates.push_back(index_.at(step[r]));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (auto c : candidates) {
      bool minimal = true;
      for (auto d : candidates) {
        if (d != c && masks_[d].is_subset_of(masks_[c])) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        upper_[i].push_back(c);
        lower_[c].push_back(i);
      }
    }
  }

  if (masks_.size() <= options.max_dense_elements && masks_.size() > 1) {
    auto const size = masks_.size();
    meet_table_.resize(size * size);
    join_table_.resize(size * size);
    for (index a = 0; a < size; ++a) {
      for (index b = a; b < size; ++b) {
        auto const m = static_cast<std::uint32_t>(index_.at(masks_[a] & masks_[b]));
        auto const j = static_cast<std::uint32_t>(closure(masks_[a] | masks_[b]));
        meet_table_[a * size + b] = meet_table_[b * size + a] = m;
        join_table_[a * size + b] = join_table_[b * size + a] = j;
      }
    }
  }
}

std::optional<BigLattice::index> BigLattice::find(BitSet const& mask) const {
  auto it = index_.find(mask);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

BigLattice::index BigLattice::meet(index a, index b) const {
  if (!meet_table_.empty()) {
    return meet_table_[a * size() + b];
  }
  return index_.at(masks_.at(a) & masks_.at(b));
}

BigLattice::index BigLattice::join(index a, index b) const {
  if (!join_table_.empty()) {
    return join_table_[a * size() + b];
  }
  return closure(masks_.at(a) | masks_.at(b));
}

BigLattice::index BigLattice::closure(BitSet const& relations) const {
  BitSet acc = BitSet::full(table_->size());
  for (auto const& g : generators_) {
    if (relations.is_subset_of(g)) {
      acc &= g;
    }
  }
  return index_.at(acc);
}

bool BigLattice::covers(index lower, index upper) const {
  auto const& up = upper_.at(lower);
  return std::find(up.begin(), up.end(), upper) != up.end();
}

std::vector<std::pair<BigLattice::index, BigLattice::index>> BigLattice::cover_pairs() const {
  std::vector<std::pair<index, index>> out;
  for (index i = 0; i < size(); ++i) {
    for (auto j : upper_[i]) {
      out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<BigLattice::index> BigLattice::atoms() const {
  return size() > 1 ? upper_[bottom()] : std::vector<index>{};
}

std::vector<BigLattice::index> BigLattice::coatoms() const {
  return size() > 1 ? lower_[top()] : std::vector<index>{};
}

std::vector<BigLattice::index> BigLattice::meet_irreducibles() const {
  std::vector<index> out;
  for (index i = 0; i < size(); ++i) {
    if (upper_[i].size() == 1) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<BigLattice::index> BigLattice::join_irreducibles() const {
  std::vector<index> out;
  for (index i = 0; i < size(); ++i) {
    if (lower_[i].size() == 1) {
      out.push_back(i);
    }
  }
  return out;
}

void BigLattice::require_dense(char const* what) const {
  if (!has_dense_tables()) {
    throw CapExceeded(std::string(what) + ": lattice with " + std::to_string(size()) +
                      " elements exceeds the dense-table limit");
  }
}

bool BigLattice::is_distributive() const {
  require_dense("is_distributive");
  for (index a = 0; a < size(); ++a) {
    for (index b = 0; b < size(); ++b) {
      for (index c = 0; c < size(); ++c) {
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
          return false;
        }
      }
    }
  }
  return true;
}

bool BigLattice::is_complemented() const {
  require_dense("is_complemented");
  for (index a = 0; a < size(); ++a) {
    bool found = false;
    for (index b = 0; b < size() && !found; ++b) {
      found = meet(a, b) == bottom() && join(a, b) == top();
    }
    if (!found) {
      return false;
    }
  }
  return true;
}

bool BigLattice::is_modular() const {
  require_dense("is_modular");
  for (index a = 0; a < size(); ++a) {
    for (index c = 0; c < size(); ++c) {
      if (a == c || !leq(a, c)) {
        continue;
      }
      for (index b = 0; b < size(); ++b) {
        if (join(a, meet(b, c)) != meet(join(a, b), c)) {
          return false;
        }
      }
    }
  }
  return true;
}

// Tolerance

Tolerance::Tolerance(BigLattice const& lattice, std::vector<BigLattice::index> up)
    : lattice_(&lattice), up_(std::move(up)) {
  if (up_.size() != lattice.size()) {
    throw Error("tolerance map has the wrong length");
  }
}

Tolerance Tolerance::diagonal(BigLattice const& lattice) {
  std::vector<index> up(lattice.size());
  for (index i = 0; i < up.size(); ++i) {
    up[i] = i;
  }
  return Tolerance(lattice, std::move(up));
}

bool Tolerance::contains(index x, index y) const {
  return lattice_->leq(lattice_->join(x, y), up_.at(lattice_->meet(x, y)));
}

bool Tolerance::is_full() const { return up_[lattice_->bottom()] == lattice_->top(); }

bool Tolerance::is_diagonal() const {
  for (index i = 0; i < up_.size(); ++i) {
    if (up_[i] != i) {
      return false;
    }
  }
  return true;
}

std::size_t Tolerance::pair_count() const {
  std::size_t count = 0;
  for (index x = 0; x < up_.size(); ++x) {
    for (index y = 0; y < up_.size(); ++y) {
      count += contains(x, y) ? 1 : 0;
    }
  }
  return count;
}

Tolerance tolerance_generated(BigLattice const& lattice, index x, index y) {
  if (!lattice.has_dense_tables()) {
    throw CapExceeded("tolerances need dense tables; lattice has " +
                      std::to_string(lattice.size()) + " elements");
  }
  std::size_t const size = lattice.size();
  if (x >= size || y >= size) {
    throw OutOfRange("lattice element index outside lattice");
  }
  std::vector<index> up(size);
  for (index i = 0; i < size; ++i) {
    up[i] = i;
  }
  std::vector<bool> queued(size, false);
  std::deque<index> work;
  auto raise = [&](index u, index v) {
    index const next = lattice.join(up[u], v);
    if (next != up[u]) {
      up[u] = next;
      if (!queued[u]) {
        queued[u] = true;
        work.push_back(u);
      }
    }
  };
  raise(lattice.meet(x, y), lattice.join(x, y));
  while (!work.empty()) {
    index const u = work.front();
    work.pop_front();
    queued[u] = false;
    index const top_u = up[u];
    // Convexity: (w, up(u)) ∈ T for every w in [u, up(u)].
    for (index w = 0; w < size; ++w) {
      if (lattice.leq(u, w) && lattice.leq(w, top_u)) {
        raise(w, top_u);
      }
    }
    // Compatibility with meets and joins of the generating pairs.
    for (index v = 0; v < size; ++v) {
      raise(lattice.meet(u, v), lattice.meet(top_u, up[v]));
      raise(lattice.join(u, v), lattice.join(top_u, up[v]));
    }
  }
  return Tolerance(lattice, std::move(up));
}

bool is_tolerance_simple(BigLattice const& lattice) {
  for (auto [a, b] : lattice.cover_pairs()) {
    if (!tolerance_generated(lattice, a, b).is_full()) {
      return false;
    }
  }
  return true;
}

// Modularity

std::optional<std::array<index, 5>> known_pentagon(BigLattice const& lattice) {
  int const n = lattice.universe_size();
  if (lattice.kind() != RelationKind::equivalence || n < 4) {
    return std::nullopt;
  }
  auto const& table = *lattice.table();
  auto atom_of = [&](Partition const& kappa) {
    BitSet m(table.size());
    m.set(table.discrete_index());
    m.set(table.full_index());
    m.set(table.index_of(kappa));
    return lattice.closure(m);
  };
  index const a = atom_of(parse_partition("[0,1,2]", n));
  index const c = lattice.join(a, atom_of(parse_partition("[0,1][2,3]", n)));
  std::vector<element> img(static_cast<std::size_t>(n));
  for (element x = 0; x < n; ++x) {
    img[static_cast<std::size_t>(x)] = x == 0 ? 3 : x;
  }
  auto const b = lattice.find(con_of(UnaryMap(img), lattice.table()).mask());
  if (!b) {
    return std::nullopt;
  }
  return std::array<index, 5>{lattice.bottom(), a, c, *b, lattice.top()};
}

bool is_pentagon(BigLattice const& lattice, std::array<index, 5> const& p) {
  auto const [bottom, a, c, b, top] = p;
  std::array<index, 5> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return false;
  }
  return bottom == lattice.bottom() && top == lattice.top() && lattice.leq(a, c) &&
         lattice.join(a, b) == top && lattice.join(c, b) == top &&
         lattice.meet(a, b) == bottom && lattice.meet(c, b) == bottom;
}

ModularityReport modularity_report(BigLattice const& lattice) {
  if (!lattice.has_dense_tables()) {
    throw CapExceeded("modularity report needs dense tables; lattice has " +
                      std::to_string(lattice.size()) + " elements");
  }
  ModularityReport report;
  if (auto known = known_pentagon(lattice); known && is_pentagon(lattice, *known)) {
    report.pentagon = known;
    report.pentagon_from_known_witness = true;
  } else {
    // For each b: some a with a ∨ b = 1 below some c with c ∧ b = 0.
    for (index b = 0; b < lattice.size() && !report.pentagon; ++b) {
      if (b == lattice.bottom() || b == lattice.top()) {
        continue;
      }
      std::vector<index> lows;
      std::vector<index> highs;
      for (index x = 0; x < lattice.size(); ++x) {
        if (x != lattice.top() && lattice.join(x, b) == lattice.top()) {
          lows.push_back(x);
        }
        if (x != lattice.bottom() && lattice.meet(x, b) == lattice.bottom()) {
          highs.push_back(x);
        }
      }
      for (auto a : lows) {
        for (auto c : highs) {
          if (a != c && lattice.leq(a, c)) {
            report.pentagon = std::array<index, 5>{lattice.bottom(), a, c, b, lattice.top()};
            break;
          }
        }
        if (report.pentagon) {
          break;
        }
      }
    }
  }

  for (auto [m, a] : lattice.cover_pairs()) {
    for (index b = 0; b < lattice.size() && report.upper_semimodular; ++b) {
      if (lattice.meet(a, b) == m && !lattice.covers(b, lattice.join(a, b))) {
        report.upper_semimodular = false;
        report.upper_counterexample = std::pair{a, b};
      }
    }
    if (!report.upper_semimodular) {
      break;
    }
  }
  for (auto [a, j] : lattice.cover_pairs()) {
    for (index b = 0; b < lattice.size() && report.lower_semimodular; ++b) {
      if (lattice.join(a, b) == j && !lattice.covers(lattice.meet(a, b), b)) {
        report.lower_semimodular = false;
        report.lower_counterexample = std::pair{a, b};
      }
    }
    if (!report.lower_semimodular) {
      break;
    }
  }
  report.modular = report.pentagon ? false : lattice.is_modular();
  return report;
}

// Extremal coatom and atom sets

namespace {

// Lexicographically first k-subset of `pool` whose fold satisfies `done`,
// trying k = 1, 2, ... up to max_k.
ExtremalSet smallest_subset(std::vector<index> const& pool, int max_k,
                            std::function<BitSet(BitSet const&, index)> const& fold,
                            BitSet const& start, std::function<bool(BitSet const&)> const& done) {
  ExtremalSet result;
  std::vector<index> chosen;
  std::function<bool(std::size_t, BitSet const&, int)> search =
      [&](std::size_t from, BitSet const& acc, int left) {
        if (left == 0) {
          return done(acc);
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
          chosen.push_back(pool[i]);
          if (search(i + 1, fold(acc, pool[i]), left - 1)) {
            return true;
          }
          chosen.pop_back();
        }
        return false;
      };
  for (int k = 1; k <= max_k; ++k) {
    chosen.clear();
    if (search(0, start, k)) {
      result.k = k;
      result.witness = chosen;
      return result;
    }
  }
  return result;
}

}  // namespace

ExtremalSet min_coatom_meet(BigLattice const& lattice, int max_k) {
  if (lattice.size() <= 1) {
    return {};
  }
  BitSet const& bottom = lattice.mask(lattice.bottom());
  return smallest_subset(
      lattice.coatoms(), max_k,
      [&](BitSet const& acc, index c) { return acc & lattice.mask(c); },
      BitSet::full(lattice.table()->size()), [&](BitSet const& acc) { return acc == bottom; });
}

ExtremalSet min_atom_join(BigLattice const& lattice, int max_k) {
  if (lattice.size() <= 1) {
    return {};
  }
  BitSet const& top = lattice.mask(lattice.top());
  return smallest_subset(
      lattice.atoms(), max_k,
      [&](BitSet const& acc, index a) { return acc | lattice.mask(a); },
      BitSet(lattice.table()->size()),
      [&](BitSet const& acc) { return lattice.mask(lattice.closure(acc)) == top; });
}

}  // namespace conlat
