#include <doctest.h>

#include "conlat/classify.hpp"
#include "conlat/galois.hpp"
#include "oracles.hpp"

using namespace conlat;

namespace {

TablePtr eq_table(int n) { return enumerate_relations(Universe(n), RelationKind::equivalence); }

bool acyclic_by_iteration(oracle::Map const& f) {
  // Acyclic iff f^n is idempotent and every point of its image is fixed by f.
  auto g = f;
  for (std::size_t k = 1; k < f.size(); ++k) {
    g = oracle::compose(g, f);
  }
  for (auto v : g) {
    if (f[static_cast<std::size_t>(v)] != v) {
      return false;
    }
  }
  return true;
}

bool distinct(std::initializer_list<int> xs) {
  std::set<int> const s(xs);
  return s.size() == xs.size();
}

// Direct pattern search over all assignments of the named elements, pruned
// as soon as one defining equation fails.
std::optional<std::array<int, 6>> brute_d0a(oracle::Map const& f) {
  int const n = static_cast<int>(f.size());
  auto const at = [&](int x) { return f[static_cast<std::size_t>(x)]; };
  for (int a0 = 0; a0 < n; ++a0) {
    if (at(a0) != a0) continue;
    for (int a1 = 0; a1 < n; ++a1) {
      if (at(a1) != a0) continue;
      for (int a2 = 0; a2 < n; ++a2) {
        if (at(a2) != a1) continue;
        for (int b0 = 0; b0 < n; ++b0) {
          if (at(b0) != b0) continue;
          for (int b1 = 0; b1 < n; ++b1) {
            if (at(b1) != b0) continue;
            for (int b2 = 0; b2 < n; ++b2) {
              if (at(b2) == b1 && distinct({a0, a1, a2, b0, b1, b2})) {
                return std::array<int, 6>{a0, a1, a2, b0, b1, b2};
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

// Named elements 0, 1, 2, 1', 2'.
std::optional<std::array<int, 5>> brute_d0b(oracle::Map const& f, bool connected) {
  if (!connected) {
    return std::nullopt;
  }
  int const n = static_cast<int>(f.size());
  auto const at = [&](int x) { return f[static_cast<std::size_t>(x)]; };
  for (int a0 = 0; a0 < n; ++a0) {
    if (at(a0) != a0) continue;
    for (int a1 = 0; a1 < n; ++a1) {
      if (at(a1) != a0) continue;
      for (int a2 = 0; a2 < n; ++a2) {
        if (at(a2) != a1) continue;
        for (int b1 = 0; b1 < n; ++b1) {
          if (at(b1) != a0) continue;
          for (int b2 = 0; b2 < n; ++b2) {
            if (at(b2) == b1 && distinct({a0, a1, a2, b1, b2})) {
              return std::array<int, 5>{a0, a1, a2, b1, b2};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("profile examples") {
  auto const id = profile(UnaryMap::identity(3));
  CHECK(id.is_trivial);
  CHECK(id.is_permutation);
  CHECK(id.cycle_lengths == std::vector<int>{1, 1, 1});

  auto const p = profile(UnaryMap({0, 0, 1, 1}));
  CHECK(p.is_acyclic);
  CHECK(p.components.size() == 1);
  CHECK(p.depth == std::vector<int>{0, 1, 2, 2});
  CHECK(p.max_depth == 2);

  auto const q = profile(UnaryMap({1, 0, 3, 2}));
  CHECK(q.is_permutation);
  CHECK(q.order == 2);
  REQUIRE(q.prime_power.has_value());
  CHECK(*q.prime_power == std::pair{2, 1});
  CHECK(q.cycle_lengths == std::vector<int>{2, 2});
  CHECK(is_prime_power_permutation(q));

  auto const m = profile(UnaryMap({1, 2, 1}));
  CHECK_FALSE(m.is_acyclic);
  CHECK_FALSE(m.is_permutation);
  CHECK(m.depth == std::vector<int>{-1, -1, -1});

  auto const six = profile(UnaryMap({1, 2, 0, 4, 3, 5}));
  CHECK(six.order == 6);
  CHECK_FALSE(six.prime_power.has_value());
}

TEST_CASE("profile agrees with iteration oracles") {
  for (int n = 1; n <= 5; ++n) {
    for (auto const& img : oracle::all_maps(n)) {
      auto const p = profile(UnaryMap(img));
      CHECK(p.is_acyclic == acyclic_by_iteration(img));
      int total = 0;
      for (auto const& c : p.components) {
        total += static_cast<int>(c.size());
      }
      CHECK(total == n);
      if (p.is_acyclic) {
        for (int x = 0; x < n; ++x) {
          int const t = p.depth[static_cast<std::size_t>(x)];
          UnaryMap const f(img);
          CHECK(f.power(static_cast<unsigned>(t))(x) == f.power(static_cast<unsigned>(t + 1))(x));
          if (t > 0) {
            CHECK(f.power(static_cast<unsigned>(t - 1))(x) != f.power(static_cast<unsigned>(t))(x));
          }
        }
      }
    }
  }
}

TEST_CASE("type examples") {
  CHECK(type_of(UnaryMap({0, 0, 2})).tag == Type::type_i);
  CHECK(type_of(UnaryMap({2, 2, 0})).tag == Type::uncharacterized);
  auto const t2 = type_of(UnaryMap({0, 0, 1, 0}));
  CHECK(t2.tag == Type::type_ii);
  CHECK(t2.constant == 0);
  CHECK(t2.kernel_size == 3);
  auto const t3 = type_of(UnaryMap({1, 0, 3, 2}));
  CHECK(t3.tag == Type::type_iii);
  CHECK(t3.prime == 2);
  CHECK(type_of(UnaryMap({1, 0, 2})).tag == Type::uncharacterized);
  CHECK(type_of(UnaryMap::constant(3, 1)).tag == Type::trivial);
  CHECK(type_of(UnaryMap({0, 0, 1, 3, 3, 4})).tag == Type::cond_a);
  CHECK(type_of(UnaryMap({0, 0, 1, 0, 3})).tag == Type::type_ii);
  CHECK(type_of(UnaryMap({0, 0, 1, 0, 3, 2})).tag == Type::cond_b);
}

TEST_CASE("types follow their defining equations") {
  for (int n = 1; n <= 5; ++n) {
    for (auto const& img : oracle::all_maps(n)) {
      UnaryMap const f(img);
      auto const t = type_of(f);
      auto const ff = oracle::compose(img, img);
      bool const nontrivial = !oracle::is_trivial(img);
      bool const idempotent = ff == img;
      bool square_const = true;
      for (auto v : ff) {
        square_const = square_const && v == ff[0];
      }
      int kernel = 0;
      for (auto v : img) {
        kernel += v == ff[0] ? 1 : 0;
      }
      bool type3 = false;
      for (int p : {2, 3, 5}) {
        auto fp = img;
        for (int k = 1; k < p; ++k) {
          fp = oracle::compose(fp, img);
        }
        bool const is_id = fp == UnaryMap::identity(n).images();
        auto const cyc = profile(f).cycle_lengths;
        type3 = type3 || (is_id && std::count(cyc.begin(), cyc.end(), p) >= 2);
      }
      if (!nontrivial) {
        CHECK(t.tag == Type::trivial);
      } else if (idempotent) {
        CHECK(t.tag == Type::type_i);
      } else if (square_const && kernel >= 3) {
        CHECK(t.tag == Type::type_ii);
      } else if (type3) {
        CHECK(t.tag == Type::type_iii);
      } else {
        CHECK(t.tag != Type::type_i);
        CHECK(t.tag != Type::type_ii);
        CHECK(t.tag != Type::type_iii);
      }
    }
  }
}

TEST_CASE("hat examples") {
  CHECK(hat(UnaryMap({0, 0, 2})) == UnaryMap({0, 1, 0}));
  CHECK(hat(UnaryMap({0, 0, 1, 0})) == UnaryMap({1, 1, 0, 1}));
  CHECK(hat(UnaryMap({1, 0, 3, 2})) == UnaryMap({1, 0, 3, 2}));
}

TEST_CASE("hat is an involution preserving Con") {
  for (int n = 1; n <= 5; ++n) {
    auto t = eq_table(n);
    for (auto const& img : oracle::all_maps(n)) {
      UnaryMap const f(img);
      auto const h = hat(f);
      CHECK(hat(h) == f);
      CHECK(con_of(f, t) == con_of(h, t));
    }
  }
}

TEST_CASE("essential triples") {
  CHECK(essential_triples(UnaryMap({0, 0, 2})) == std::vector<Triple>{{1, 0, 2}});
  CHECK(essential_triples(UnaryMap({0, 0, 1, 0})) == std::vector<Triple>{{2, 0, 1}});
  CHECK(essential_triples(UnaryMap::identity(3)).empty());
  CHECK(essential_triples(UnaryMap({1, 0, 3, 2})).empty());
}

TEST_CASE("D0 witnesses") {
  auto const a = cond_D0(UnaryMap({0, 0, 1, 3, 3, 4}));
  REQUIRE(a.has_value());
  CHECK(a->variant == 'a');
  CHECK(a->elements == std::array<element, 6>{0, 1, 2, 3, 4, 5});
  auto const b = cond_D0(UnaryMap({0, 0, 1, 0, 3}));
  REQUIRE(b.has_value());
  CHECK(b->variant == 'b');
  CHECK(b->elements == std::array<element, 6>{0, 1, 2, 0, 3, 4});
  CHECK_FALSE(cond_D0(UnaryMap({0, 0, 2})).has_value());
  CHECK_THROWS_AS(cond_D0(UnaryMap({1, 0, 2})), NotAcyclic);
}

TEST_CASE("D0 agrees with the pattern-search oracle") {
  for (int n = 3; n <= 6; ++n) {
    for (auto const& img : oracle::all_maps(n)) {
      if (!acyclic_by_iteration(img)) {
        continue;
      }
      auto const p = profile(UnaryMap(img));
      auto const got = cond_D0(UnaryMap(img));
      auto const a = brute_d0a(img);
      auto const b = brute_d0b(img, p.components.size() == 1);
      CHECK(!(a && b));
      if (a) {
        REQUIRE(got.has_value());
        CHECK(got->variant == 'a');
        CHECK(std::equal(a->begin(), a->end(), got->elements.begin()));
      } else if (b) {
        REQUIRE(got.has_value());
        CHECK(got->variant == 'b');
        std::array<element, 6> const expected{(*b)[0], (*b)[1], (*b)[2], (*b)[0], (*b)[3], (*b)[4]};
        CHECK(got->elements == expected);
      } else {
        CHECK_FALSE(got.has_value());
      }
    }
  }
}

TEST_CASE("reduction witnesses") {
  auto const tr = reduction_witnesses(UnaryMap({1, 0, 2}));
  CHECK(tr.which == ReductionCase::transposition);
  CHECK(tr.g1 == UnaryMap({0, 0, 2}));
  CHECK(tr.g2 == UnaryMap({1, 1, 2}));

  auto const c1 = reduction_witnesses(UnaryMap({0, 0, 1, 3, 3}));
  CHECK(c1.which == ReductionCase::several_components);
  CHECK(c1.g1 == UnaryMap({0, 0, 1, 0, 0}));
  CHECK(c1.g2 == UnaryMap({0, 0, 0, 3, 3}));

  auto const c2b = reduction_witnesses(UnaryMap({0, 0, 1, 2}));
  CHECK(c2b.which == ReductionCase::long_tail);
  CHECK(c2b.g1 == UnaryMap({0, 0, 1, 1}));
  CHECK(c2b.g2 == UnaryMap({0, 0, 0, 2}));

  auto const c2a = reduction_witnesses(UnaryMap({0, 0, 1, 1}));
  CHECK(c2a.which == ReductionCase::single_tail);
  CHECK(c2a.g1 == UnaryMap({0, 1, 1, 1}));
  CHECK(c2a.g2 == UnaryMap({0, 1, 0, 0}));

  CHECK_THROWS_AS(reduction_witnesses(UnaryMap({0, 0, 2})), NotApplicable);
  CHECK_THROWS_AS(reduction_witnesses(UnaryMap({1, 0, 3, 2})), NotApplicable);
  CHECK_THROWS_AS(reduction_witnesses(UnaryMap({1, 0})), NotApplicable);
  CHECK_THROWS_AS(reduction_witnesses(UnaryMap({1, 2, 1})), NotApplicable);
}

TEST_CASE("every constructed reduction splits Con strictly") {
  for (int n = 3; n <= 5; ++n) {
    auto t = eq_table(n);
    for (auto const& img : oracle::all_maps(n)) {
      UnaryMap const f(img);
      std::optional<Reduction> r;
      try {
        r = reduction_witnesses(f);
      } catch (NotApplicable const&) {
        continue;
      }
      auto const cf = con_of(f, t);
      auto const c1 = con_of(r->g1, t);
      auto const c2 = con_of(r->g2, t);
      CHECK(cf.is_subset_of(c1));
      CHECK(cf.is_subset_of(c2));
      CHECK(cf != c1);
      CHECK(cf != c2);
      CHECK(c1.intersect(c2) == cf);
    }
  }
}

TEST_CASE("predictions match the brute-force test on small universes") {
  CHECK(predicted_meet_irreducible(UnaryMap({1, 0, 3, 2})) == Prediction::yes);
  CHECK(predicted_meet_irreducible(UnaryMap({1, 0, 2})) == Prediction::no);
  CHECK(predicted_meet_irreducible(UnaryMap({1, 2, 1})) == Prediction::unknown);
  for (int n = 3; n <= 4; ++n) {
    auto t = eq_table(n);
    for (auto const& img : oracle::all_maps(n)) {
      UnaryMap const f(img);
      auto const predicted = predicted_meet_irreducible(f);
      if (predicted == Prediction::unknown || f.is_trivial()) {
        continue;
      }
      CHECK(is_meet_irreducible(f, t) == (predicted == Prediction::yes));
    }
  }
}
