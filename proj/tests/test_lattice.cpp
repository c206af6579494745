#include <doctest.h>

#include <random>
#include <map>
#include <set>

#include "conlat/classify.hpp"
#include "conlat/lattice.hpp"
#include "oracles.hpp"

using namespace conlat;

namespace {

using index = BigLattice::index;

TablePtr eq_table(int n) { return enumerate_relations(Universe(n), RelationKind::equivalence); }

BigLattice const& lattice_E(int n) {
  static std::map<int, BigLattice> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, BigLattice::build(Universe(n), RelationKind::equivalence)).first;
  }
  return it->second;
}

BitSet bits(std::size_t width, std::initializer_list<std::size_t> members) {
  BitSet b(width);
  for (auto i : members) {
    b.set(i);
  }
  return b;
}

// Abstract lattices realised as intersection-closed families over a 5-item table.
BigLattice pentagon_lattice() {
  auto t = eq_table(3);
  return BigLattice::from_masks(t, {bits(5, {}), bits(5, {1}), bits(5, {1, 2}), bits(5, {3}),
                                    BitSet::full(5)});
}

BigLattice diamond_lattice() {
  auto t = eq_table(3);
  return BigLattice::from_masks(
      t, {bits(5, {}), bits(5, {1}), bits(5, {2}), bits(5, {3}), BitSet::full(5)});
}

BigLattice chain2_lattice() {
  auto t = eq_table(3);
  return BigLattice::from_masks(t, {bits(5, {}), BitSet::full(5)});
}

// Least tolerance by the literal pair worklist: start from the diagonal and
// the generating pair, add componentwise meets and joins until stable.
std::set<std::pair<index, index>> tolerance_by_pairs(BigLattice const& l, index x, index y) {
  std::set<std::pair<index, index>> t;
  for (index i = 0; i < l.size(); ++i) {
    t.insert({i, i});
  }
  t.insert({x, y});
  t.insert({y, x});
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<index, index>> const current(t.begin(), t.end());
    for (auto [a, b] : current) {
      for (auto [c, d] : current) {
        grew |= t.insert({l.meet(a, c), l.meet(b, d)}).second;
        grew |= t.insert({l.join(a, c), l.join(b, d)}).second;
      }
    }
  }
  return t;
}

void check_tolerances_against_pairs(BigLattice const& l) {
  for (index x = 0; x < l.size(); ++x) {
    for (index y = 0; y < l.size(); ++y) {
      auto const fast = tolerance_generated(l, x, y);
      auto const slow = tolerance_by_pairs(l, x, y);
      CHECK(fast.pair_count() == slow.size());
      for (auto [a, b] : slow) {
        CHECK(fast.contains(a, b));
      }
    }
  }
}

bool simple_by_all_pairs(BigLattice const& l) {
  for (index x = 0; x < l.size(); ++x) {
    for (index y = 0; y < l.size(); ++y) {
      if (x != y && !tolerance_generated(l, x, y).is_full()) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("small lattices of congruence lattices") {
  CHECK(BigLattice::build(Universe(1), RelationKind::equivalence).size() == 1);
  auto const e2 = BigLattice::build(Universe(2), RelationKind::equivalence);
  CHECK(e2.size() == 1);
  CHECK(e2.atoms().empty());
  CHECK(min_coatom_meet(e2).k == 0);

  auto const& e3 = lattice_E(3);
  CHECK(e3.size() == 8);
  CHECK(e3.atoms().size() == 3);
  CHECK(e3.coatoms().size() == 3);
  CHECK(e3.meet_irreducibles() == e3.coatoms());
  CHECK(e3.join_irreducibles() == e3.atoms());
  CHECK(e3.is_distributive());
  CHECK(e3.is_complemented());
  CHECK(e3.is_modular());
  for (auto c : e3.coatoms()) {
    CHECK(e3.mask(c).count() == 4);
  }
  CHECK(e3.mask(e3.bottom()).count() == 2);
}

TEST_CASE("built E equals the set of all closures") {
  for (int n = 3; n <= 4; ++n) {
    auto const& lattice = lattice_E(n);
    auto t = lattice.table();
    std::set<std::vector<std::size_t>> closures;
    std::vector<std::size_t> nontrivial;
    for (std::size_t i = 0; i < t->size(); ++i) {
      if (i != t->discrete_index() && i != t->full_index()) {
        nontrivial.push_back(i);
      }
    }
    CongruenceIndex const con(t);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << nontrivial.size()); ++s) {
      BitSet m = RelationSet::bounds(t).mask();
      for (std::size_t k = 0; k < nontrivial.size(); ++k) {
        if ((s >> k) & 1U) {
          m.set(nontrivial[k]);
        }
      }
      BitSet c = BitSet::full(t->size());
      for (auto g : con.end_of(m)) {
        c &= con.con(g);
      }
      closures.insert(c.indices());
    }
    std::set<std::vector<std::size_t>> built;
    for (index i = 0; i < lattice.size(); ++i) {
      built.insert(lattice.mask(i).indices());
    }
    CHECK(built == closures);
  }
  CHECK(lattice_E(4).size() == 303);
}

TEST_CASE("elements of E are closed sublattices of Eq(A)") {
  auto const& lattice = lattice_E(4);
  auto t = lattice.table();
  for (index i = 0; i < lattice.size(); ++i) {
    auto const e = lattice.element(i);
    CHECK(e.contains(t->discrete_index()));
    CHECK(e.contains(t->full_index()));
    for (auto a : e.indices()) {
      for (auto b : e.indices()) {
        CHECK(e.contains(partition_meet(t->partition(a), t->partition(b))));
        CHECK(e.contains(partition_join(t->partition(a), t->partition(b))));
      }
    }
    if (i % 7 == 0) {
      CHECK(con_closure(e) == e);
    }
  }
}

TEST_CASE("covers are the transitive reduction of inclusion") {
  auto const& lattice = lattice_E(4);
  for (index a = 0; a < lattice.size(); ++a) {
    for (index b = 0; b < lattice.size(); ++b) {
      bool cover = a != b && lattice.leq(a, b);
      for (index c = 0; c < lattice.size() && cover; ++c) {
        if (c != a && c != b && lattice.leq(a, c) && lattice.leq(c, b)) {
          cover = false;
        }
      }
      CHECK(lattice.covers(a, b) == cover);
    }
  }
}

TEST_CASE("meet and join agree with intersection and Galois closure") {
  auto const& lattice = lattice_E(4);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<index> pick(0, lattice.size() - 1);
  for (int k = 0; k < 300; ++k) {
    index const a = pick(rng);
    index const b = pick(rng);
    CHECK(lattice.mask(lattice.meet(a, b)) == (lattice.mask(a) & lattice.mask(b)));
    CHECK(lattice.element(lattice.join(a, b)) == join_in_E(lattice.element(a), lattice.element(b)));
  }
}

TEST_CASE("atoms are exactly the three-element lattices") {
  for (int n = 3; n <= 4; ++n) {
    auto const& lattice = lattice_E(n);
    auto t = lattice.table();
    std::set<std::vector<std::size_t>> expected;
    for (std::size_t k = 0; k < t->size(); ++k) {
      if (k != t->discrete_index() && k != t->full_index()) {
        auto m = RelationSet::bounds(t).mask();
        m.set(k);
        expected.insert(m.indices());
      }
    }
    std::set<std::vector<std::size_t>> got;
    for (auto a : lattice.atoms()) {
      got.insert(lattice.mask(a).indices());
    }
    CHECK(got == expected);
    CHECK(lattice.join_irreducibles() == lattice.atoms());
  }
  CHECK(lattice_E(4).atoms().size() == 13);
}

TEST_CASE("coatoms are the lattices of typed maps") {
  for (int n = 3; n <= 4; ++n) {
    auto const& lattice = lattice_E(n);
    std::set<std::vector<std::size_t>> typed;
    for (auto const& img : oracle::all_maps(n)) {
      UnaryMap const f(img);
      auto const t = type_of(f).tag;
      if (t == Type::type_i || t == Type::type_ii || t == Type::type_iii) {
        typed.insert(con_of(f, lattice.table()).indices());
      }
    }
    std::set<std::vector<std::size_t>> got;
    for (auto c : lattice.coatoms()) {
      got.insert(lattice.mask(c).indices());
    }
    CHECK(got == typed);
  }
}

TEST_CASE("structural meet-irreducibles match the single-map test") {
  for (int n = 3; n <= 4; ++n) {
    auto const& lattice = lattice_E(n);
    CongruenceIndex const con(lattice.table());
    std::set<std::vector<std::size_t>> expected;
    for (std::uint64_t f = 0; f < con.map_count(); ++f) {
      if (con.is_meet_irreducible(f)) {
        expected.insert(con.con(f).indices());
      }
    }
    std::set<std::vector<std::size_t>> got;
    for (auto m : lattice.meet_irreducibles()) {
      got.insert(lattice.mask(m).indices());
    }
    CHECK(got == expected);
  }
}

TEST_CASE("tolerances match the pair-worklist fixpoint") {
  check_tolerances_against_pairs(lattice_E(3));
  check_tolerances_against_pairs(pentagon_lattice());
  check_tolerances_against_pairs(diamond_lattice());
  check_tolerances_against_pairs(chain2_lattice());
}

TEST_CASE("tolerance generation basics") {
  auto const& e3 = lattice_E(3);
  for (index x = 0; x < e3.size(); ++x) {
    CHECK(tolerance_generated(e3, x, x).is_diagonal());
  }
  CHECK(tolerance_generated(e3, e3.bottom(), e3.top()).is_full());
  CHECK_FALSE(is_tolerance_simple(e3));
  CHECK(is_tolerance_simple(chain2_lattice()));
  CHECK(is_tolerance_simple(pentagon_lattice()) == simple_by_all_pairs(pentagon_lattice()));
  CHECK(is_tolerance_simple(diamond_lattice()) == simple_by_all_pairs(diamond_lattice()));
  CHECK(is_tolerance_simple(e3) == simple_by_all_pairs(e3));
}

TEST_CASE("tolerance identity T(x∧y, y) = T(x, x∨y)") {
  auto const& e3 = lattice_E(3);
  for (index x = 0; x < e3.size(); ++x) {
    for (index y = 0; y < e3.size(); ++y) {
      CHECK(tolerance_generated(e3, e3.meet(x, y), y) == tolerance_generated(e3, x, e3.join(x, y)));
    }
  }
  auto const& e4 = lattice_E(4);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<index> pick(0, e4.size() - 1);
  for (int k = 0; k < 40; ++k) {
    index const x = pick(rng);
    index const y = pick(rng);
    CHECK(tolerance_generated(e4, e4.meet(x, y), y) == tolerance_generated(e4, x, e4.join(x, y)));
  }
}

TEST_CASE("E(4) is tolerance simple and far from modular") {
  auto const& e4 = lattice_E(4);
  CHECK(is_tolerance_simple(e4));
  auto const report = modularity_report(e4);
  REQUIRE(report.pentagon.has_value());
  CHECK(report.pentagon_from_known_witness);
  CHECK(is_pentagon(e4, *report.pentagon));
  CHECK_FALSE(report.modular);
  CHECK_FALSE(report.upper_semimodular);
  REQUIRE(report.upper_counterexample.has_value());
  auto const [ua, ub] = *report.upper_counterexample;
  CHECK(e4.covers(e4.meet(ua, ub), ua));
  CHECK_FALSE(e4.covers(ub, e4.join(ua, ub)));
  CHECK_FALSE(report.lower_semimodular);
  REQUIRE(report.lower_counterexample.has_value());
  auto const [la, lb] = *report.lower_counterexample;
  CHECK(e4.covers(la, e4.join(la, lb)));
  CHECK_FALSE(e4.covers(e4.meet(la, lb), lb));

  auto const e3 = modularity_report(lattice_E(3));
  CHECK_FALSE(e3.pentagon.has_value());
  CHECK(e3.modular);
  CHECK(e3.upper_semimodular);
  CHECK(e3.lower_semimodular);

  auto const n5 = modularity_report(pentagon_lattice());
  CHECK(n5.pentagon.has_value());
  CHECK_FALSE(n5.modular);
  auto const m3 = modularity_report(diamond_lattice());
  CHECK_FALSE(m3.pentagon.has_value());
  CHECK(m3.modular);
}

TEST_CASE("coatom meets and atom joins") {
  CHECK(min_coatom_meet(lattice_E(3)).k == 3);
  CHECK(min_coatom_meet(lattice_E(4)).k == 3);
  CHECK(min_atom_join(lattice_E(3)).k == 3);
  // No three nontrivial equivalences on four points are preserved only by
  // trivial maps, so four atoms are needed.
  auto const four = min_atom_join(lattice_E(4));
  CHECK(four.k == 4);
  BitSet acc(lattice_E(4).table()->size());
  for (auto a : four.witness) {
    acc |= lattice_E(4).mask(a);
  }
  CHECK(con_closure(RelationSet(lattice_E(4).table(), acc)) == RelationSet::all(lattice_E(4).table()));
}

TEST_CASE("E(5)") {
  auto const& e5 = lattice_E(5);
  CHECK(e5.size() == 39397);
  CHECK(e5.atoms().size() == 50);
  CHECK_FALSE(e5.has_dense_tables());
  CHECK_THROWS_AS(modularity_report(e5), CapExceeded);
  auto const pair = min_coatom_meet(e5);
  CHECK(pair.k == 2);
  auto t = e5.table();
  auto const f = e5.find(con_of(UnaryMap({0, 0, 0, 1, 2}), t).mask());
  auto const g = e5.find(con_of(UnaryMap({3, 4, 2, 2, 2}), t).mask());
  REQUIRE(f.has_value());
  REQUIRE(g.has_value());
  auto const coatoms = e5.coatoms();
  CHECK(std::count(coatoms.begin(), coatoms.end(), *f) == 1);
  CHECK(std::count(coatoms.begin(), coatoms.end(), *g) == 1);
  CHECK(e5.meet(*f, *g) == e5.bottom());
  CHECK(min_atom_join(e5).k == 3);
}

TEST_CASE("lattice of quasiorder lattices and the map Φ") {
  for (int n = 2; n <= 3; ++n) {
    auto const l = BigLattice::build(Universe(n), RelationKind::quasiorder);
    auto const& e = n == 3 ? lattice_E(3) : BigLattice::build(Universe(2), RelationKind::equivalence);
    PhiMap const phi_map(l.table(), e.table());
    std::set<std::vector<std::size_t>> image;
    for (index q = 0; q < l.size(); ++q) {
      auto const p = phi_map.apply(l.mask(q));
      REQUIRE(e.find(p).has_value());
      image.insert(p.indices());
      for (index r = 0; r < l.size(); ++r) {
        CHECK(phi_map.apply(l.mask(l.meet(q, r))) == (p & phi_map.apply(l.mask(r))));
      }
    }
    CHECK(image.size() == e.size());
    CHECK(phi_map.apply(l.mask(l.top())) == e.mask(e.top()));
  }
}

TEST_CASE("caps") {
  CHECK_THROWS_AS(BigLattice::build(Universe(7), RelationKind::equivalence), CapExceeded);
  CHECK_THROWS_AS(BigLattice::build(Universe(5), RelationKind::quasiorder), CapExceeded);
  LatticeOptions tight;
  tight.max_elements = 100;
  CHECK_THROWS_AS(BigLattice::build(Universe(4), RelationKind::equivalence, tight), CapExceeded);
  CHECK_THROWS_AS(BigLattice::from_masks(eq_table(3), {bits(5, {1}), bits(5, {2}), BitSet::full(5)}),
                  Error);
}
