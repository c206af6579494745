#include "conlat/relations.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

namespace conlat {

namespace {

void require_same_size(int a, int b, char const* what) {
  if (a != b) {
    throw UniverseMismatch(std::string(what) + ": universe sizes " + std::to_string(a) +
                           " and " + std::to_string(b) + " differ");
  }
}

void require_element(int n, element x, char const* what) {
  if (x < 0 || x >= n) {
    throw OutOfRange(std::string(what) + ": element " + std::to_string(x) +
                     " outside 0.." + std::to_string(n - 1));
  }
}

struct UnionFind {
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<int> labels() {
    std::vector<int> out(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) {
      out[i] = find(static_cast<int>(i));
    }
    return out;
  }
  std::vector<int> parent;
};

std::uint64_t partition_key(std::vector<int> const& rgs) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    key |= static_cast<std::uint64_t>(rgs[i]) << (4 * i);
  }
  return key;
}

constexpr int max_equivalence_table = 12;
constexpr int max_quasiorder_table = 8;

void enumerate_rgs(std::vector<int>& rgs, std::size_t i, int max_label,
                   std::vector<Partition>& out) {
  if (i == rgs.size()) {
    out.push_back(Partition::from_rgs(rgs));
    return;
  }
  for (int v = 0; v <= max_label + 1; ++v) {
    rgs[i] = v;
    enumerate_rgs(rgs, i + 1, std::max(max_label, v), out);
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

constexpr std::string_view delta_text = "Δ";

}  // namespace

Universe::Universe(int size) : n(size) {
  if (size < 1) {
    throw OutOfRange("universe size must be at least 1, got " + std::to_string(size));
  }
}

// BoolMatrix

BoolMatrix::BoolMatrix(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > max_size) {
    throw OutOfRange("matrix size " + std::to_string(n) + " outside 0..64");
  }
}

BoolMatrix BoolMatrix::identity(int n) {
  BoolMatrix m(n);
  for (element i = 0; i < n; ++i) {
    m.set(i, i);
  }
  return m;
}

bool BoolMatrix::is_reflexive() const noexcept {
  for (element i = 0; i < n_; ++i) {
    if (!test(i, i)) {
      return false;
    }
  }
  return true;
}

bool BoolMatrix::is_symmetric() const noexcept {
  for (element i = 0; i < n_; ++i) {
    for (element j = i + 1; j < n_; ++j) {
      if (test(i, j) != test(j, i)) {
        return false;
      }
    }
  }
  return true;
}

bool BoolMatrix::is_transitive() const noexcept {
  for (element i = 0; i < n_; ++i) {
    std::uint64_t reach = 0;
    std::uint64_t r = row(i);
    while (r != 0) {
      reach |= row(std::countr_zero(r));
      r &= r - 1;
    }
    if ((reach & ~row(i)) != 0) {
      return false;
    }
  }
  return true;
}

bool BoolMatrix::is_subset_of(BoolMatrix const& other) const noexcept {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if ((rows_[i] & ~other.rows_[i]) != 0) {
      return false;
    }
  }
  return true;
}

std::size_t BoolMatrix::pair_count() const noexcept {
  std::size_t c = 0;
  for (auto r : rows_) {
    c += static_cast<std::size_t>(std::popcount(r));
  }
  return c;
}

BoolMatrix transitive_closure(BoolMatrix m) {
  int const n = m.size();
  std::vector<std::uint64_t> rows = m.rows();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if ((rows[static_cast<std::size_t>(i)] >> k) & 1U) {
        rows[static_cast<std::size_t>(i)] |= rows[static_cast<std::size_t>(k)];
      }
    }
  }
  BoolMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if ((rows[static_cast<std::size_t>(i)] >> j) & 1U) {
        out.set(i, j);
      }
    }
  }
  return out;
}

// Partition

Partition Partition::from_rgs(std::vector<int> rgs) {
  int max_label = -1;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (rgs[i] < 0 || rgs[i] > max_label + 1) {
      throw OutOfRange("not a restricted growth string at position " + std::to_string(i));
    }
    max_label = std::max(max_label, rgs[i]);
  }
  return Partition(std::move(rgs));
}

Partition Partition::from_labels(std::vector<int> const& labels) {
  std::unordered_map<int, int> renumber;
  std::vector<int> rgs(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = renumber.try_emplace(labels[i], static_cast<int>(renumber.size()));
    rgs[i] = it->second;
  }
  return Partition(std::move(rgs));
}

Partition Partition::from_blocks(int n, std::vector<std::vector<element>> const& blocks) {
  Universe const u(n);
  std::vector<int> labels(static_cast<std::size_t>(u.n));
  std::iota(labels.begin(), labels.end(), 0);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (auto const& block : blocks) {
    for (auto x : block) {
      require_element(n, x, "Partition::from_blocks");
      if (seen[static_cast<std::size_t>(x)]) {
        throw OutOfRange("element " + std::to_string(x) + " listed twice");
      }
      seen[static_cast<std::size_t>(x)] = true;
      labels[static_cast<std::size_t>(x)] = n + block.front();
    }
  }
  return from_labels(labels);
}

Partition Partition::discrete(int n) {
  std::vector<int> rgs(static_cast<std::size_t>(Universe(n).n));
  std::iota(rgs.begin(), rgs.end(), 0);
  return Partition(std::move(rgs));
}

Partition Partition::full(int n) {
  return Partition(std::vector<int>(static_cast<std::size_t>(Universe(n).n), 0));
}

int Partition::block_count() const noexcept {
  return rgs_.empty() ? 0 : *std::max_element(rgs_.begin(), rgs_.end()) + 1;
}

std::vector<std::vector<element>> Partition::blocks() const {
  std::vector<std::vector<element>> out(static_cast<std::size_t>(block_count()));
  for (element x = 0; x < size(); ++x) {
    out[static_cast<std::size_t>(block_of(x))].push_back(x);
  }
  return out;
}

bool Partition::is_discrete() const noexcept { return block_count() == size(); }

bool Partition::is_full() const noexcept { return block_count() <= 1; }

bool Partition::refines(Partition const& other) const noexcept {
  std::vector<int> image(rgs_.size(), -1);
  for (std::size_t x = 0; x < rgs_.size(); ++x) {
    auto& slot = image[static_cast<std::size_t>(rgs_[x])];
    if (slot == -1) {
      slot = other.rgs_[x];
    } else if (slot != other.rgs_[x]) {
      return false;
    }
  }
  return true;
}

BoolMatrix Partition::to_matrix() const {
  BoolMatrix m(size());
  for (element x = 0; x < size(); ++x) {
    for (element y = 0; y < size(); ++y) {
      if (contains(x, y)) {
        m.set(x, y);
      }
    }
  }
  return m;
}

// Quasiorder

Quasiorder Quasiorder::from_matrix(BoolMatrix m) {
  if (!m.is_reflexive() || !m.is_transitive()) {
    throw Error("matrix is not reflexive and transitive");
  }
  return Quasiorder(std::move(m));
}

Quasiorder Quasiorder::from_partition(Partition const& p) {
  return Quasiorder(p.to_matrix());
}

Quasiorder Quasiorder::discrete(int n) { return Quasiorder(BoolMatrix::identity(Universe(n).n)); }

Quasiorder Quasiorder::full(int n) {
  return from_partition(Partition::full(n));
}

Partition Quasiorder::to_partition() const {
  if (!is_symmetric()) {
    throw Error("quasiorder is not symmetric");
  }
  std::vector<int> labels(static_cast<std::size_t>(size()));
  for (element x = 0; x < size(); ++x) {
    labels[static_cast<std::size_t>(x)] = std::countr_zero(m_.row(x));
  }
  return Partition::from_labels(labels);
}

std::uint64_t Quasiorder::lex_key() const {
  int const n = size();
  if (n > 8) {
    throw CapExceeded("lex_key needs at most 8 elements");
  }
  std::uint64_t key = 0;
  int const last = n * n - 1;
  for (element i = 0; i < n; ++i) {
    for (element j = 0; j < n; ++j) {
      if (contains(i, j)) {
        key |= std::uint64_t{1} << (last - (i * n + j));
      }
    }
  }
  return key;
}

bool operator<(Quasiorder const& a, Quasiorder const& b) {
  for (element i = 0; i < a.size(); ++i) {
    for (element j = 0; j < a.size(); ++j) {
      bool const x = a.contains(i, j);
      bool const y = b.contains(i, j);
      if (x != y) {
        return y;
      }
    }
  }
  return false;
}

// UnaryMap

UnaryMap::UnaryMap(std::vector<element> images) : img_(std::move(images)) {
  int const n = static_cast<int>(img_.size());
  Universe const u(n);
  for (auto v : img_) {
    require_element(u.n, v, "UnaryMap");
  }
}

UnaryMap UnaryMap::identity(int n) {
  std::vector<element> img(static_cast<std::size_t>(Universe(n).n));
  std::iota(img.begin(), img.end(), 0);
  return UnaryMap(std::move(img));
}

UnaryMap UnaryMap::constant(int n, element c) {
  require_element(Universe(n).n, c, "UnaryMap::constant");
  return UnaryMap(std::vector<element>(static_cast<std::size_t>(n), c));
}

UnaryMap UnaryMap::from_code(int n, std::uint64_t code) {
  auto const total = map_count(n);
  if (code >= total) {
    throw OutOfRange("map code " + std::to_string(code) + " exceeds n^n");
  }
  std::vector<element> img(static_cast<std::size_t>(n));
  for (std::size_t i = img.size(); i-- > 0;) {
    img[i] = static_cast<element>(code % static_cast<std::uint64_t>(n));
    code /= static_cast<std::uint64_t>(n);
  }
  return UnaryMap(std::move(img));
}

std::uint64_t UnaryMap::code() const noexcept {
  std::uint64_t c = 0;
  auto const n = static_cast<std::uint64_t>(img_.size());
  for (auto v : img_) {
    c = c * n + static_cast<std::uint64_t>(v);
  }
  return c;
}

bool UnaryMap::is_identity() const noexcept {
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (img_[i] != static_cast<element>(i)) {
      return false;
    }
  }
  return true;
}

bool UnaryMap::is_constant() const noexcept {
  return std::all_of(img_.begin(), img_.end(), [&](element v) { return v == img_.front(); });
}

bool UnaryMap::is_permutation() const noexcept {
  std::vector<bool> seen(img_.size(), false);
  for (auto v : img_) {
    if (seen[static_cast<std::size_t>(v)]) {
      return false;
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

UnaryMap UnaryMap::then(UnaryMap const& g) const {
  require_same_size(size(), g.size(), "UnaryMap::then");
  std::vector<element> img(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) {
    img[i] = g(img_[i]);
  }
  return UnaryMap(std::move(img));
}

UnaryMap UnaryMap::power(unsigned k) const {
  UnaryMap result = identity(size());
  for (unsigned i = 0; i < k; ++i) {
    result = result.then(*this);
  }
  return result;
}

std::uint64_t map_count(int n) {
  if (n < 1 || n > 15) {
    throw CapExceeded("n^n scan supports 1..15 elements, got " + std::to_string(n));
  }
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::uint64_t>(n);
  }
  return total;
}

// Lattice operations on Eq(A)

Partition partition_meet(Partition const& p, Partition const& q) {
  require_same_size(p.size(), q.size(), "partition_meet");
  std::vector<int> labels(static_cast<std::size_t>(p.size()));
  for (element x = 0; x < p.size(); ++x) {
    labels[static_cast<std::size_t>(x)] = p.block_of(x) * p.size() + q.block_of(x);
  }
  return Partition::from_labels(labels);
}

Partition partition_join(Partition const& p, Partition const& q) {
  require_same_size(p.size(), q.size(), "partition_join");
  UnionFind uf(p.size());
  for (element x = 0; x < p.size(); ++x) {
    for (element y = x + 1; y < p.size(); ++y) {
      if (p.contains(x, y) || q.contains(x, y)) {
        uf.unite(x, y);
      }
    }
  }
  return Partition::from_labels(uf.labels());
}

// Preservation and principal relations

bool preserves(UnaryMap const& f, Partition const& r) {
  require_same_size(f.size(), r.size(), "preserves");
  std::vector<int> first(static_cast<std::size_t>(r.size()), -1);
  for (element x = 0; x < r.size(); ++x) {
    auto& rep = first[static_cast<std::size_t>(r.block_of(x))];
    if (rep == -1) {
      rep = x;
    } else if (!r.contains(f(x), f(rep))) {
      return false;
    }
  }
  return true;
}

bool preserves(UnaryMap const& f, Quasiorder const& r) {
  require_same_size(f.size(), r.size(), "preserves");
  for (element x = 0; x < r.size(); ++x) {
    for (element y = 0; y < r.size(); ++y) {
      if (r.contains(x, y) && !r.contains(f(x), f(y))) {
        return false;
      }
    }
  }
  return true;
}

Partition principal_congruence(UnaryMap const& f, element x, element y) {
  int const n = f.size();
  require_element(n, x, "principal_congruence");
  require_element(n, y, "principal_congruence");
  UnionFind uf(n);
  std::vector<bool> visited(static_cast<std::size_t>(n * n), false);
  while (!visited[static_cast<std::size_t>(x * n + y)]) {
    visited[static_cast<std::size_t>(x * n + y)] = true;
    uf.unite(x, y);
    x = f(x);
    y = f(y);
  }
  return Partition::from_labels(uf.labels());
}

Quasiorder principal_quasiorder(UnaryMap const& f, element x, element y) {
  int const n = f.size();
  require_element(n, x, "principal_quasiorder");
  require_element(n, y, "principal_quasiorder");
  BoolMatrix m = BoolMatrix::identity(n);
  while (!m.test(x, y)) {
    m.set(x, y);
    x = f(x);
    y = f(y);
  }
  return Quasiorder::from_matrix(transitive_closure(std::move(m)));
}

std::string_view to_string(RelationKind kind) {
  return kind == RelationKind::equivalence ? "eq" : "quord";
}

RelationKind parse_relation_kind(std::string_view text) {
  if (text == "eq" || text == "equivalence") {
    return RelationKind::equivalence;
  }
  if (text == "quord" || text == "quasiorder") {
    return RelationKind::quasiorder;
  }
  throw ParseError("unknown relation kind '" + std::string(text) + "'", 0);
}

// RelationTable

RelationTable::RelationTable(int n, std::vector<Partition> items)
    : kind_(RelationKind::equivalence), n_(Universe(n).n), partitions_(std::move(items)) {
  if (n_ > max_equivalence_table) {
    throw CapExceeded("equivalence tables support at most 12 elements");
  }
  rows_.reserve(partitions_.size());
  labels_.reserve(partitions_.size() * static_cast<std::size_t>(n_));
  block_first_.reserve(partitions_.size() * static_cast<std::size_t>(n_));
  for (auto const& p : partitions_) {
    require_same_size(n_, p.size(), "RelationTable");
    rows_.push_back(p.to_matrix());
    std::vector<std::uint8_t> first(static_cast<std::size_t>(n_), 0);
    std::vector<bool> have(static_cast<std::size_t>(n_), false);
    for (element x = 0; x < n_; ++x) {
      auto const b = static_cast<std::size_t>(p.block_of(x));
      labels_.push_back(static_cast<std::uint8_t>(b));
      if (!have[b]) {
        have[b] = true;
        first[b] = static_cast<std::uint8_t>(x);
      }
    }
    block_first_.insert(block_first_.end(), first.begin(), first.end());
  }
  build_index();
}

RelationTable::RelationTable(int n, std::vector<Quasiorder> items)
    : kind_(RelationKind::quasiorder), n_(Universe(n).n) {
  if (n_ > max_quasiorder_table) {
    throw CapExceeded("quasiorder tables support at most 8 elements");
  }
  rows_.reserve(items.size());
  for (auto& q : items) {
    require_same_size(n_, q.size(), "RelationTable");
    rows_.push_back(q.matrix());
  }
  build_index();
}

void RelationTable::build_index() {
  BoolMatrix const discrete = BoolMatrix::identity(n_);
  BoolMatrix const full = Partition::full(n_).to_matrix();
  bool have_discrete = false;
  bool have_full = false;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint64_t const key = kind_ == RelationKind::equivalence
                                  ? partition_key(partitions_[i].rgs())
                                  : Quasiorder::from_matrix(rows_[i]).lex_key();
    if (!index_.emplace(key, i).second) {
      throw Error("duplicate relation in table at position " + std::to_string(i));
    }
    if (rows_[i] == discrete) {
      discrete_ = i;
      have_discrete = true;
    }
    if (rows_[i] == full) {
      full_ = i;
      have_full = true;
    }
  }
  if (!have_discrete || !have_full) {
    throw Error("relation table must contain Δ and ∇");
  }
}

Quasiorder RelationTable::quasiorder(std::size_t i) const {
  return Quasiorder::from_matrix(rows_.at(i));
}

std::size_t RelationTable::index_of(Partition const& p) const {
  if (kind_ == RelationKind::quasiorder) {
    return index_of(Quasiorder::from_partition(p));
  }
  require_same_size(n_, p.size(), "RelationTable::index_of");
  auto it = index_.find(partition_key(p.rgs()));
  if (it == index_.end()) {
    throw OutOfRange("partition not in table");
  }
  return it->second;
}

std::size_t RelationTable::index_of(Quasiorder const& q) const {
  require_same_size(n_, q.size(), "RelationTable::index_of");
  if (kind_ == RelationKind::equivalence) {
    return index_of(q.to_partition());
  }
  auto it = index_.find(q.lex_key());
  if (it == index_.end()) {
    throw OutOfRange("quasiorder not in table");
  }
  return it->second;
}

bool RelationTable::contains(Partition const& p) const {
  if (p.size() != n_) {
    return false;
  }
  if (kind_ == RelationKind::quasiorder) {
    return index_.count(Quasiorder::from_partition(p).lex_key()) != 0;
  }
  return index_.count(partition_key(p.rgs())) != 0;
}

bool RelationTable::preserved_by(UnaryMap const& f, std::size_t i) const noexcept {
  return preserved_by(std::span<element const>(f.images()), i);
}

bool RelationTable::preserved_by(std::span<element const> f, std::size_t i) const noexcept {
  auto const n = static_cast<std::size_t>(n_);
  if (kind_ == RelationKind::equivalence) {
    std::uint8_t const* lab = labels_.data() + i * n;
    std::uint8_t const* first = block_first_.data() + i * n;
    for (std::size_t x = 1; x < n; ++x) {
      auto const rep = first[lab[x]];
      if (lab[static_cast<std::size_t>(f[x])] != lab[static_cast<std::size_t>(f[rep])]) {
        return false;
      }
    }
    return true;
  }
  BoolMatrix const& m = rows_[i];
  for (std::size_t x = 0; x < n; ++x) {
    std::uint64_t r = m.row(static_cast<element>(x));
    std::uint64_t const target = m.row(f[x]);
    while (r != 0) {
      auto const y = static_cast<std::size_t>(std::countr_zero(r));
      if (((target >> f[y]) & 1U) == 0) {
        return false;
      }
      r &= r - 1;
    }
  }
  return true;
}

std::string RelationTable::text(std::size_t i) const {
  if (kind_ == RelationKind::equivalence) {
    return format_partition(partitions_.at(i));
  }
  return format_quasiorder(quasiorder(i));
}

TablePtr enumerate_relations(Universe u, RelationKind kind, EnumerationCaps const& caps) {
  int const n = u.n;
  if (kind == RelationKind::equivalence) {
    int const cap = std::min(caps.max_n_equivalence, max_equivalence_table);
    if (n > cap) {
      throw CapExceeded("equivalence enumeration capped at n=" + std::to_string(cap) +
                        ", requested n=" + std::to_string(n));
    }
    std::vector<Partition> items;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    enumerate_rgs(rgs, 1, 0, items);
    return std::make_shared<RelationTable const>(n, std::move(items));
  }
  int const cap = std::min(caps.max_n_quasiorder, max_quasiorder_table);
  if (n > cap) {
    throw CapExceeded("quasiorder enumeration capped at n=" + std::to_string(cap) +
                      ", requested n=" + std::to_string(n));
  }
  std::vector<std::pair<int, int>> off_diagonal;
  for (element i = 0; i < n; ++i) {
    for (element j = 0; j < n; ++j) {
      if (i != j) {
        off_diagonal.emplace_back(i, j);
      }
    }
  }
  std::vector<Quasiorder> items;
  std::uint64_t const limit = std::uint64_t{1} << off_diagonal.size();
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    BoolMatrix m = BoolMatrix::identity(n);
    for (std::size_t k = 0; k < off_diagonal.size(); ++k) {
      if ((bits >> k) & 1U) {
        m.set(off_diagonal[k].first, off_diagonal[k].second);
      }
    }
    if (m.is_transitive()) {
      items.push_back(Quasiorder::from_matrix(std::move(m)));
    }
  }
  std::sort(items.begin(), items.end(),
            [](Quasiorder const& a, Quasiorder const& b) { return a.lex_key() < b.lex_key(); });
  return std::make_shared<RelationTable const>(n, std::move(items));
}

// Text forms

UnaryMap parse_unary_map(std::string_view text, bool one_based) {
  std::vector<element> img;
  std::vector<std::size_t> starts;
  std::size_t pos = 0;
  while (true) {
    std::size_t const comma = text.find(',', pos);
    std::size_t const end = comma == std::string_view::npos ? text.size() : comma;
    std::string_view token = text.substr(pos, end - pos);
    std::size_t lead = 0;
    while (lead < token.size() && token[lead] == ' ') {
      ++lead;
    }
    token = trim(token);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("expected an integer image", pos + lead);
    }
    if (one_based) {
      --value;
    }
    if (value < 0) {
      throw ParseError("image out of range", pos + lead);
    }
    img.push_back(value);
    starts.push_back(pos + lead);
    if (comma == std::string_view::npos) {
      break;
    }
    pos = comma + 1;
  }
  int const n = static_cast<int>(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (img[i] >= n) {
      throw ParseError("image " + std::to_string(one_based ? img[i] + 1 : img[i]) +
                           " out of range for " + std::to_string(n) + " elements",
                       starts[i]);
    }
  }
  return UnaryMap(std::move(img));
}

std::string format_unary_map(UnaryMap const& f) {
  std::string out;
  for (element x = 0; x < f.size(); ++x) {
    if (x != 0) {
      out += ',';
    }
    out += std::to_string(f(x));
  }
  return out;
}

Partition parse_partition(std::string_view text, int n) {
  Universe const u(n);
  std::string_view const body = trim(text);
  if (body.empty() || body == delta_text) {
    return Partition::discrete(u.n);
  }
  std::size_t const base = static_cast<std::size_t>(body.data() - text.data());
  std::vector<std::vector<element>> blocks;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < body.size() && body[i] == ' ') {
      ++i;
    }
  };
  while (true) {
    skip_space();
    if (i == body.size()) {
      break;
    }
    if (body[i] != '[') {
      throw ParseError("expected '['", base + i);
    }
    ++i;
    std::vector<element> block;
    while (true) {
      skip_space();
      int value = 0;
      auto [ptr, ec] = std::from_chars(body.data() + i, body.data() + body.size(), value);
      if (ec != std::errc()) {
        throw ParseError("expected an element", base + i);
      }
      if (value < 0 || value >= n) {
        throw ParseError("element out of range", base + i);
      }
      if (seen[static_cast<std::size_t>(value)]) {
        throw ParseError("element listed twice", base + i);
      }
      seen[static_cast<std::size_t>(value)] = true;
      block.push_back(value);
      i = static_cast<std::size_t>(ptr - body.data());
      skip_space();
      if (i < body.size() && body[i] == ',') {
        ++i;
        continue;
      }
      if (i < body.size() && body[i] == ']') {
        ++i;
        break;
      }
      throw ParseError("expected ',' or ']'", base + i);
    }
    blocks.push_back(std::move(block));
  }
  return Partition::from_blocks(n, blocks);
}

std::string format_partition(Partition const& p) {
  std::string out;
  for (auto const& block : p.blocks()) {
    if (block.size() < 2) {
      continue;
    }
    out += '[';
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (k != 0) {
        out += ',';
      }
      out += std::to_string(block[k]);
    }
    out += ']';
  }
  return out.empty() ? std::string(delta_text) : out;
}

std::string format_quasiorder(Quasiorder const& q) {
  std::string out;
  for (element x = 0; x < q.size(); ++x) {
    for (element y = 0; y < q.size(); ++y) {
      if (x != y && q.contains(x, y)) {
        out += out.empty() ? "{" : ",";
        out += '(' + std::to_string(x) + ',' + std::to_string(y) + ')';
      }
    }
  }
  return out.empty() ? std::string(delta_text) : out + "}";
}

}  // namespace conlat
