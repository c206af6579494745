#include "conlat/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <set>

#include "conlat/classify.hpp"
#include "conlat/error.hpp"
#include "conlat/galois.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "?";
}

namespace {

// Largest universe on which anything is verified at all; beyond it the
// results stand on their proofs alone.
constexpr int desk_scale_n = 6;
// Pair budget for the sampled containment check.
constexpr std::uint64_t containment_samples = 400'000;
constexpr std::size_t containment_pool = 256;

using json = nlohmann::json;
using elem = BigLattice::index;

struct Outcome {
  Status status;
  json details;
};

Outcome pass(json details) { return {Status::pass, std::move(details)}; }
Outcome fail(json details) { return {Status::fail, std::move(details)}; }

// Thrown inside a check to report it as skipped.
struct Skip {
  json details;
};

Skip cap_skip(std::string message) {
  return Skip{{{"reason", "cap"}, {"message", std::move(message)}}};
}

std::string map_text(int n, std::uint64_t code) {
  return format_unary_map(UnaryMap::from_code(n, code));
}

json relation_texts(RelationTable const& table, BitSet const& mask) {
  json out = json::array();
  mask.for_each([&](std::size_t i) { out.push_back(table.text(i)); });
  return out;
}

bool is_typed(Type t) { return t == Type::type_i || t == Type::type_ii || t == Type::type_iii; }

bool is_transposition(FunctionProfile const& p) {
  return p.is_permutation &&
         std::count(p.cycle_lengths.begin(), p.cycle_lengths.end(), 2) == 1 &&
         std::count(p.cycle_lengths.begin(), p.cycle_lengths.end(), 1) ==
             static_cast<std::ptrdiff_t>(p.cycle_lengths.size()) - 1;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

}  // namespace

struct Verifier::State {
  RunConfig config;
  TablePtr eq;
  std::unique_ptr<CongruenceIndex> con;
  std::optional<BigLattice> e_lattice;
  std::optional<std::string> e_error;
  std::optional<BigLattice> l_lattice;
  std::optional<std::string> l_error;

  int n() const { return config.n; }
  ScanOptions scan() const { return {config.workers, desk_scale_n + 1}; }

  LatticeOptions lattice_options() const {
    LatticeOptions o;
    o.scan = scan();
    o.max_n_equivalence = config.max_n_equivalence;
    o.max_n_quasiorder = config.max_n_quasiorder;
    return o;
  }

  TablePtr const& equivalences() {
    if (!eq) {
      eq = enumerate_relations(Universe(n()), RelationKind::equivalence);
    }
    return eq;
  }

  CongruenceIndex const& index() {
    if (!con) {
      con = std::make_unique<CongruenceIndex>(equivalences(), scan());
    }
    return *con;
  }

  // A failed build is remembered so that later checks skip at once.
  BigLattice const& lattice_E() {
    if (e_error) {
      throw cap_skip(*e_error);
    }
    if (!e_lattice) {
      try {
        e_lattice.emplace(
            BigLattice::build(Universe(n()), RelationKind::equivalence, lattice_options()));
      } catch (CapExceeded const& ex) {
        e_error = ex.what();
        throw cap_skip(*e_error);
      }
    }
    return *e_lattice;
  }

  BigLattice const& lattice_L() {
    if (l_error) {
      throw cap_skip(*l_error);
    }
    if (!l_lattice) {
      try {
        l_lattice.emplace(
            BigLattice::build(Universe(n()), RelationKind::quasiorder, lattice_options()));
      } catch (CapExceeded const& ex) {
        l_error = ex.what();
        throw cap_skip(*l_error);
      }
    }
    return *l_lattice;
  }

  BigLattice const& dense_E() {
    auto const& e = lattice_E();
    if (!e.has_dense_tables()) {
      throw cap_skip("lattice has " + std::to_string(e.size()) +
                     " elements, beyond the dense-table limit for tolerance and "
                     "modularity checks");
    }
    return e;
  }

  // Some map generating the coatom, for readable witnesses.
  std::string generator_of(BitSet const& mask) {
    auto const& idx = index();
    for (std::uint64_t c = 0; c < idx.map_count(); ++c) {
      if (idx.con(c) == mask) {
        return map_text(n(), c);
      }
    }
    return "";
  }

  std::optional<std::string> reduction_problem(std::uint64_t f, Reduction const& r) {
    auto const& idx = index();
    BitSet const c = idx.con(f);
    BitSet const c1 = idx.con(r.g1.code());
    BitSet const c2 = idx.con(r.g2.code());
    if ((c1 & c2) != c) {
      return "Con(f) differs from Con(g1) ∩ Con(g2)";
    }
    if (c1 == c || c2 == c) {
      return "a containment is not strict";
    }
    return std::nullopt;
  }

  Outcome atoms();
  Outcome coatoms();
  Outcome unique_coatom_fn();
  Outcome meet_irr_perm();
  Outcome meet_irr_acyclic();
  Outcome filter_chain();
  Outcome end_con_quord();
  Outcome residual_phi();
  Outcome coatom_meet();
  Outcome atom_join();
  Outcome tolerance_simple();
  Outcome non_modular();
  Outcome containment_criterion();
  Outcome hat_involution();
  Outcome boolean_n3();
};

Outcome Verifier::State::atoms() {
  auto const& e = lattice_E();
  auto const& t = *e.table();
  std::set<BitSet> expected;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k != t.discrete_index() && k != t.full_index()) {
      BitSet m = RelationSet::bounds(e.table()).mask();
      m.set(k);
      expected.insert(m);
    }
  }
  auto const atoms = e.atoms();
  std::set<BitSet> got;
  for (auto a : atoms) {
    got.insert(e.mask(a));
    if (!expected.contains(e.mask(a))) {
      return fail({{"atom_not_of_form_bounds_plus_one", relation_texts(t, e.mask(a))}});
    }
  }
  for (auto const& m : expected) {
    if (!got.contains(m)) {
      return fail({{"missing_atom", relation_texts(t, m)}});
    }
  }
  auto const ji = e.join_irreducibles();
  for (auto j : ji) {
    if (!std::binary_search(atoms.begin(), atoms.end(), j)) {
      return fail({{"join_irreducible_not_atom", relation_texts(t, e.mask(j))}});
    }
  }
  return pass({{"elements", e.size()},
               {"atoms", atoms.size()},
               {"join_irreducibles", ji.size()},
               {"search_space", e.size()}});
}

Outcome Verifier::State::coatoms() {
  auto const& e = lattice_E();
  auto const& t = *e.table();
  auto const& idx = index();
  std::set<BitSet> typed;
  std::uint64_t typed_count = 0;
  for (std::uint64_t c = 0; c < idx.map_count(); ++c) {
    if (is_typed(type_of(UnaryMap::from_code(n(), c)).tag)) {
      ++typed_count;
      auto const m = idx.con(c);
      if (typed.insert(m).second) {
        auto const at = e.find(m);
        auto const cs = e.coatoms();
        if (!at || !std::binary_search(cs.begin(), cs.end(), *at)) {
          return fail({{"typed_map_not_coatom", map_text(n(), c)},
                       {"con", relation_texts(t, m)}});
        }
      }
    }
  }
  auto const cs = e.coatoms();
  for (auto c : cs) {
    if (!typed.contains(e.mask(c))) {
      return fail({{"coatom_without_typed_map", relation_texts(t, e.mask(c))}});
    }
  }
  json details = {{"coatoms", cs.size()}, {"typed_maps", typed_count}, {"search_space", idx.map_count()}};
  if (n() > config.max_n_quasiorder) {
    details["phi_cross_check"] = "skipped (cap)";
    return pass(std::move(details));
  }
  auto const& l = lattice_L();
  PhiMap const phi(l.table(), e.table());
  std::set<BitSet> images;
  for (auto q : l.coatoms()) {
    images.insert(phi.apply(l.mask(q)));
  }
  if (images != typed) {
    for (auto const& m : images) {
      if (!typed.contains(m)) {
        return fail({{"phi_image_of_coatom_not_coatom", relation_texts(t, m)}});
      }
    }
    for (auto const& m : typed) {
      if (!images.contains(m)) {
        return fail({{"coatom_not_phi_image", relation_texts(t, m)}});
      }
    }
  }
  details["phi_cross_check"] = "pass";
  return pass(std::move(details));
}

Outcome Verifier::State::unique_coatom_fn() {
  auto const& idx = index();
  struct Typed {
    std::uint64_t code;
    std::set<std::uint64_t> allowed;
  };
  std::vector<Typed> typed;
  for (std::uint64_t c = 0; c < idx.map_count(); ++c) {
    UnaryMap const f = UnaryMap::from_code(n(), c);
    auto const tag = type_of(f);
    if (!is_typed(tag.tag)) {
      continue;
    }
    Typed entry{c, {c}};
    if (tag.tag == Type::type_iii) {
      for (int i = 2; i < tag.prime; ++i) {
        entry.allowed.insert(f.power(static_cast<unsigned>(i)).code());
      }
    } else {
      entry.allowed.insert(hat(f).code());
    }
    typed.push_back(std::move(entry));
  }
  std::uint64_t contained = 0;
  for (auto const& f : typed) {
    for (auto const& g : typed) {
      if (!idx.contained(f.code, g.code)) {
        continue;
      }
      ++contained;
      if (!f.allowed.contains(g.code) || !idx.same(f.code, g.code)) {
        return fail({{"f", map_text(n(), f.code)},
                     {"g", map_text(n(), g.code)},
                     {"problem", "Con(f) ⊆ Con(g) but g is neither f, f̂ nor a power of f"}});
      }
    }
  }
  return pass({{"typed_maps", typed.size()},
               {"contained_pairs", contained},
               {"search_space", typed.size() * typed.size()}});
}

Outcome Verifier::State::meet_irr_perm() {
  auto const& idx = index();
  std::uint64_t perms = 0;
  std::uint64_t irreducible = 0;
  std::uint64_t reductions = 0;
  for (std::uint64_t c = 0; c < idx.map_count(); ++c) {
    UnaryMap const f = UnaryMap::from_code(n(), c);
    if (!f.is_permutation() || f.is_identity()) {
      continue;
    }
    ++perms;
    auto const p = profile(f);
    bool const expected = is_prime_power_permutation(p);
    bool const actual = idx.is_meet_irreducible(c);
    bool const predicted = predicted_meet_irreducible(f) == Prediction::yes;
    if (actual != expected || predicted != actual) {
      return fail({{"f", map_text(n(), c)},
                   {"meet_irreducible", actual},
                   {"prime_power_with_two_maximal_cycles", expected},
                   {"predicted", predicted}});
    }
    irreducible += actual ? 1 : 0;
    if (is_transposition(p)) {
      auto const r = reduction_witnesses(f);
      if (auto problem = reduction_problem(c, r)) {
        return fail({{"f", map_text(n(), c)},
                     {"g1", format_unary_map(r.g1)},
                     {"g2", format_unary_map(r.g2)},
                     {"problem", *problem}});
      }
      ++reductions;
    }
  }
  return pass({{"permutations", perms},
               {"meet_irreducible", irreducible},
               {"transpositions_reduced", reductions},
               {"search_space", perms}});
}

Outcome Verifier::State::meet_irr_acyclic() {
  auto const& idx = index();
  std::uint64_t acyclic = 0;
  std::uint64_t irreducible = 0;
  std::uint64_t reductions = 0;
  for (std::uint64_t c = 0; c < idx.map_count(); ++c) {
    UnaryMap const f = UnaryMap::from_code(n(), c);
    if (f.is_trivial()) {
      continue;
    }
    auto const p = profile(f);
    if (!p.is_acyclic) {
      continue;
    }
    ++acyclic;
    auto const tag = type_of(f).tag;
    bool const expected = tag == Type::type_i || tag == Type::type_ii ||
                          tag == Type::cond_a || tag == Type::cond_b;
    bool const actual = idx.is_meet_irreducible(c);
    bool const predicted = predicted_meet_irreducible(f) == Prediction::yes;
    if (actual != expected || predicted != actual) {
      return fail({{"f", map_text(n(), c)},
                   {"meet_irreducible", actual},
                   {"type", std::string(to_string(tag))},
                   {"predicted", predicted}});
    }
    if (actual) {
      ++irreducible;
      continue;
    }
    Reduction r;
    try {
      r = reduction_witnesses(f);
    } catch (NotApplicable const&) {
      return fail({{"f", map_text(n(), c)}, {"problem", "reducible but no reduction witness"}});
    }
    if (auto problem = reduction_problem(c, r)) {
      return fail({{"f", map_text(n(), c)},
                   {"case", std::string(to_string(r.which))},
                   {"g1", format_unary_map(r.g1)},
                   {"g2", format_unary_map(r.g2)},
                   {"problem", *problem}});
    }
    ++reductions;
  }
  return pass({{"acyclic_maps", acyclic},
               {"meet_irreducible", irreducible},
               {"reductions_checked", reductions},
               {"search_space", acyclic}});
}

Outcome Verifier::State::filter_chain() {
  auto const& idx = index();
  auto const& t = *equivalences();
  std::uint64_t eligible = 0;
  std::size_t longest = 0;
  for (std::uint64_t c = 0; c < idx.map_count(); ++c) {
    UnaryMap const f = UnaryMap::from_code(n(), c);
    if (!f.is_permutation() || !is_prime_power_permutation(profile(f))) {
      continue;
    }
    ++eligible;
    BitSet const base = idx.con(c);
    // Closed sets above Con(f) are exactly the meets of Con(g), g ∈ End Con(f).
    std::vector<BitSet> family{BitSet::full(t.size())};
    for (auto g : idx.end_of(base)) {
      family.push_back(idx.con(g));
    }
    auto const filter = meet_closure(std::move(family));
    std::set<BitSet> powers;
    UnaryMap g = f;
    while (!g.is_identity()) {
      powers.insert(idx.con(g.code()));
      g = g.then(f);
    }
    auto report = [&](std::string problem) {
      json members = json::array();
      for (auto const& m : filter) {
        members.push_back(relation_texts(t, m));
      }
      return fail({{"f", map_text(n(), c)}, {"filter", members}, {"problem", std::move(problem)}});
    };
    for (std::size_t i = 0; i + 1 < filter.size(); ++i) {
      if (!filter[i].is_subset_of(filter[i + 1])) {
        return report("filter is not a chain");
      }
      if (!powers.contains(filter[i])) {
        return report("member is not Con(f^k) for any k");
      }
    }
    longest = std::max(longest, filter.size());
  }
  return pass({{"eligible_permutations", eligible},
               {"longest_chain", longest},
               {"search_space", eligible * idx.map_count()}});
}

Outcome Verifier::State::end_con_quord() {
  TablePtr quord;
  try {
    quord = enumerate_relations(Universe(n()), RelationKind::quasiorder);
  } catch (CapExceeded const& ex) {
    throw cap_skip(ex.what());
  }
  auto const& eq_table = equivalences();
  std::uint64_t eligible = 0;
  for (std::uint64_t c = 0; c < map_count(n()); ++c) {
    UnaryMap const f = UnaryMap::from_code(n(), c);
    if (!f.is_permutation() || !is_prime_power_permutation(profile(f))) {
      continue;
    }
    ++eligible;
    Monoid const via_con = end_of(con_of(f, eq_table), scan());
    Monoid const via_quord = end_of(quord_of(f, quord), scan());
    if (!(via_con == via_quord)) {
      json extra = json::array();
      for (auto const& h : via_con.members()) {
        if (!via_quord.contains(h)) {
          extra.push_back(format_unary_map(h));
        }
      }
      return fail({{"f", map_text(n(), c)},
                   {"end_con_size", via_con.size()},
                   {"end_quord_size", via_quord.size()},
                   {"in_end_con_only", extra}});
    }
  }
  return pass({{"eligible_permutations", eligible},
               {"search_space", eligible * map_count(n())}});
}

Outcome Verifier::State::residual_phi() {
  if (n() > config.max_n_quasiorder) {
    throw cap_skip("quasiorder lattices capped at n=" + std::to_string(config.max_n_quasiorder));
  }
  auto const& l = lattice_L();
  auto const& e = lattice_E();
  auto const& lt = *l.table();
  auto const& et = *e.table();
  PhiMap const phi(l.table(), e.table());
  std::vector<BitSet> image(l.size());
  std::vector<bool> hit(e.size(), false);
  for (elem q = 0; q < l.size(); ++q) {
    image[q] = phi.apply(l.mask(q));
    auto const at = e.find(image[q]);
    if (!at) {
      return fail({{"quasiorder_lattice", relation_texts(lt, l.mask(q))},
                   {"problem", "Φ(Q) is not a congruence lattice"}});
    }
    hit[*at] = true;
  }
  for (elem m = 0; m < e.size(); ++m) {
    if (!hit[m]) {
      return fail({{"not_in_image", relation_texts(et, e.mask(m))}, {"problem", "Φ not surjective"}});
    }
  }
  if (image[l.top()] != e.mask(e.top())) {
    return fail({{"problem", "Φ does not preserve the top"}});
  }
  // Every element is a meet of meet-irreducibles, so checking all elements
  // against them covers every pair by induction.
  auto const mis = l.meet_irreducibles();
  for (elem q = 0; q < l.size(); ++q) {
    for (auto m : mis) {
      if (image[l.meet(q, m)] != (image[q] & image[m])) {
        return fail({{"q", relation_texts(lt, l.mask(q))},
                     {"r", relation_texts(lt, l.mask(m))},
                     {"problem", "Φ does not preserve this meet"}});
      }
    }
  }
  for (elem q = 0; q + 1 < l.size(); ++q) {
    if (image[q] == e.mask(e.top())) {
      return fail({{"q", relation_texts(lt, l.mask(q))},
                   {"problem", "Φ(Q) = Eq(A) for a proper Q"}});
    }
  }
  auto const lc = l.coatoms();
  for (auto a : lc) {
    for (auto b : lc) {
      if (image[a].is_subset_of(image[b]) && image[a] != image[b]) {
        return fail({{"q", relation_texts(lt, l.mask(a))},
                     {"r", relation_texts(lt, l.mask(b))},
                     {"problem", "Φ(Q) ⊊ Φ(Q') for coatoms Q, Q'"}});
      }
    }
  }
  for (auto m : e.coatoms()) {
    bool lifted = std::any_of(lc.begin(), lc.end(), [&](elem q) { return image[q] == e.mask(m); });
    if (!lifted) {
      return fail({{"coatom", relation_texts(et, e.mask(m))},
                   {"problem", "no coatom of the quasiorder lattice maps onto it"}});
    }
  }
  return pass({{"quasiorder_lattices", l.size()},
               {"congruence_lattices", e.size()},
               {"meet_pairs", l.size() * mis.size()},
               {"search_space", l.size()}});
}

Outcome Verifier::State::coatom_meet() {
  auto const& e = lattice_E();
  auto const r = min_coatom_meet(e);
  int const expected = n() <= 4 ? 3 : 2;
  json witness = json::array();
  for (auto c : r.witness) {
    witness.push_back(generator_of(e.mask(c)));
  }
  json details = {{"k", r.k},
                  {"expected_k", expected},
                  {"witness_generators", witness},
                  {"coatoms", e.coatoms().size()}};
  bool ok = r.k == expected;
  if (n() == 5) {
    UnaryMap const f({0, 0, 0, 1, 2});
    UnaryMap const g({3, 4, 2, 2, 2});
    auto const fi = e.find(con_of(f, e.table()).mask());
    auto const gi = e.find(con_of(g, e.table()).mask());
    auto const cs = e.coatoms();
    bool const valid = fi && gi && std::binary_search(cs.begin(), cs.end(), *fi) &&
                       std::binary_search(cs.begin(), cs.end(), *gi) &&
                       e.meet(*fi, *gi) == e.bottom();
    details["known_pair"] = {{"f", format_unary_map(f)}, {"g", format_unary_map(g)}, {"valid", valid}};
    ok = ok && valid;
  }
  return ok ? pass(std::move(details)) : fail(std::move(details));
}

Outcome Verifier::State::atom_join() {
  auto const& e = lattice_E();
  auto const& t = *e.table();
  auto const atoms = e.atoms();
  auto const r = min_atom_join(e);
  json witness = json::array();
  for (auto a : r.witness) {
    e.mask(a).for_each([&](std::size_t i) {
      if (i != t.discrete_index() && i != t.full_index()) {
        witness.push_back(t.text(i));
      }
    });
  }
  json details = {{"k", r.k}, {"claimed_k_at_most", 3}, {"atoms", atoms.size()}, {"witness_kappas", witness}};
  if (r.k >= 1 && r.k <= 3) {
    return pass(std::move(details));
  }
  details["triples_checked"] = binomial(atoms.size(), 3);
  details["problem"] = "no three atoms join to Eq(A)";
  return fail(std::move(details));
}

Outcome Verifier::State::tolerance_simple() {
  auto const& e = dense_E();
  bool const expected = n() >= 4;
  bool const actual = is_tolerance_simple(e);
  json details = {{"tolerance_simple", actual},
                  {"expected", expected},
                  {"cover_pairs", e.cover_pairs().size()},
                  {"search_space", e.cover_pairs().size()}};
  if (!actual) {
    for (auto [a, b] : e.cover_pairs()) {
      if (!tolerance_generated(e, a, b).is_full()) {
        details["non_full_cover"] = {relation_texts(*e.table(), e.mask(a)),
                                     relation_texts(*e.table(), e.mask(b))};
        break;
      }
    }
  }
  bool agree = true;
  if (e.size() <= 64) {
    bool all_pairs = true;
    for (elem x = 0; x < e.size() && all_pairs; ++x) {
      for (elem y = x + 1; y < e.size() && all_pairs; ++y) {
        all_pairs = tolerance_generated(e, x, y).is_full();
      }
    }
    details["full_pair_method"] = all_pairs;
    agree = all_pairs == actual;
  }
  return actual == expected && agree ? pass(std::move(details)) : fail(std::move(details));
}

Outcome Verifier::State::non_modular() {
  auto const& e = dense_E();
  auto const& t = *e.table();
  auto const rep = modularity_report(e);
  if (n() == 3) {
    json details = {{"modular", rep.modular}, {"expected_modular", true}};
    return rep.modular && !rep.pentagon ? pass(std::move(details)) : fail(std::move(details));
  }
  json details = {{"modular", rep.modular},
                  {"upper_semimodular", rep.upper_semimodular},
                  {"lower_semimodular", rep.lower_semimodular}};
  bool ok = true;
  if (rep.pentagon && is_pentagon(e, *rep.pentagon) && (*rep.pentagon)[0] == e.bottom() &&
      (*rep.pentagon)[4] == e.top()) {
    json p = json::array();
    for (auto x : *rep.pentagon) {
      p.push_back(relation_texts(t, e.mask(x)));
    }
    details["pentagon"] = std::move(p);
    details["pentagon_is_known_witness"] = rep.pentagon_from_known_witness;
  } else {
    ok = false;
    details["problem"] = "no pentagon through bottom and top";
  }
  if (rep.upper_counterexample) {
    auto [a, b] = *rep.upper_counterexample;
    ok = ok && e.covers(e.meet(a, b), a) && !e.covers(b, e.join(a, b));
    details["upper_counterexample"] = {relation_texts(t, e.mask(a)), relation_texts(t, e.mask(b))};
  } else {
    ok = false;
  }
  if (rep.lower_counterexample) {
    auto [a, b] = *rep.lower_counterexample;
    ok = ok && e.covers(a, e.join(a, b)) && !e.covers(e.meet(a, b), b);
    details["lower_counterexample"] = {relation_texts(t, e.mask(a)), relation_texts(t, e.mask(b))};
  } else {
    ok = false;
  }
  return ok ? pass(std::move(details)) : fail(std::move(details));
}

Outcome Verifier::State::containment_criterion() {
  auto const& idx = index();
  int const k = n();
  std::uint64_t const count = idx.map_count();
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < k; ++x) {
    for (int y = x + 1; y < k; ++y) {
      pairs.emplace_back(x, y);
    }
  }
  // rgs of θ_f(x, y) for every f and every pair x < y.
  std::vector<std::uint8_t> theta(count * pairs.size() * static_cast<std::size_t>(k));
  for (std::uint64_t c = 0; c < count; ++c) {
    UnaryMap const f = UnaryMap::from_code(k, c);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto const theta_p = principal_congruence(f, pairs[p].first, pairs[p].second);
      auto const& rgs = theta_p.rgs();
      std::copy(rgs.begin(), rgs.end(), theta.begin() + static_cast<std::ptrdiff_t>((c * pairs.size() + p) * k));
    }
  }
  std::vector<std::vector<element>> images(count);
  for (std::uint64_t c = 0; c < count; ++c) {
    images[c] = UnaryMap::from_code(k, c).images();
  }
  auto criterion = [&](std::uint64_t f, std::uint64_t g) {
    auto const& gi = images[g];
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto const* labels = &theta[(f * pairs.size() + p) * static_cast<std::size_t>(k)];
      if (labels[gi[pairs[p].first]] != labels[gi[pairs[p].second]]) {
        return false;
      }
    }
    return true;
  };
  std::uint64_t checked = 0;
  std::uint64_t contained = 0;
  auto test = [&](std::uint64_t f, std::uint64_t g) -> std::optional<Outcome> {
    ++checked;
    bool const direct = idx.contained(f, g);
    contained += direct ? 1 : 0;
    if (direct != criterion(f, g)) {
      return fail({{"f", map_text(k, f)}, {"g", map_text(k, g)}, {"contained", direct}});
    }
    return std::nullopt;
  };
  bool const sampled = k >= desk_scale_n;
  if (!sampled) {
    for (std::uint64_t f = 0; f < count; ++f) {
      for (std::uint64_t g = 0; g < count; ++g) {
        if (auto o = test(f, g)) {
          return *o;
        }
      }
    }
  } else {
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, count - 1);
    // Half the samples pair a pooled f with a map of its own End, so that
    // positive instances are exercised too.
    std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> pool;
    for (std::size_t i = 0; i < containment_pool; ++i) {
      std::uint64_t const f = pick(rng);
      pool.emplace_back(f, idx.end_of(idx.con(f)));
    }
    for (std::uint64_t s = 0; s < containment_samples; ++s) {
      std::uint64_t f = pick(rng);
      std::uint64_t g = pick(rng);
      if (s % 2 == 1) {
        auto const& [pf, end] = pool[f % pool.size()];
        f = pf;
        g = end[g % end.size()];
      }
      if (auto o = test(f, g)) {
        return *o;
      }
    }
  }
  return pass({{"mode", sampled ? "sampled" : "exhaustive"},
               {"contained_pairs", contained},
               {"search_space", checked}});
}

Outcome Verifier::State::hat_involution() {
  auto const& idx = index();
  std::uint64_t checked = 0;
  for (std::uint64_t c = 0; c < idx.map_count(); ++c) {
    UnaryMap const f = UnaryMap::from_code(n(), c);
    auto const tag = type_of(f).tag;
    if (tag != Type::type_i && tag != Type::type_ii) {
      continue;
    }
    ++checked;
    UnaryMap const h = hat(f);
    if (type_of(h).tag != tag || !(hat(h) == f) || !idx.same(c, h.code())) {
      return fail({{"f", map_text(n(), c)}, {"hat", format_unary_map(h)}});
    }
  }
  return pass({{"maps", checked}, {"search_space", idx.map_count()}});
}

Outcome Verifier::State::boolean_n3() {
  auto const& e = dense_E();
  json details = {{"elements", e.size()},
                  {"atoms", e.atoms().size()},
                  {"distributive", e.is_distributive()},
                  {"complemented", e.is_complemented()},
                  {"modular", e.is_modular()},
                  {"tolerance_simple", is_tolerance_simple(e)}};
  bool const ok = e.size() == 8 && e.atoms().size() == 3 && details["distributive"] == true &&
                  details["complemented"] == true && details["modular"] == true &&
                  details["tolerance_simple"] == false;
  return ok ? pass(std::move(details)) : fail(std::move(details));
}

namespace {

using CheckFn = Outcome (Verifier::State::*)();

struct Entry {
  std::string_view id;
  CheckFn fn;
};

constexpr Entry registry[] = {
    {"atoms", &Verifier::State::atoms},
    {"coatoms", &Verifier::State::coatoms},
    {"unique-coatom-fn", &Verifier::State::unique_coatom_fn},
    {"meet-irr-perm", &Verifier::State::meet_irr_perm},
    {"meet-irr-acyclic", &Verifier::State::meet_irr_acyclic},
    {"filter-chain", &Verifier::State::filter_chain},
    {"end-con-quord", &Verifier::State::end_con_quord},
    {"residual-phi", &Verifier::State::residual_phi},
    {"coatom-meet", &Verifier::State::coatom_meet},
    {"atom-join", &Verifier::State::atom_join},
    {"tolerance-simple", &Verifier::State::tolerance_simple},
    {"non-modular", &Verifier::State::non_modular},
    {"containment-criterion", &Verifier::State::containment_criterion},
    {"hat-involution", &Verifier::State::hat_involution},
    {"boolean-n3", &Verifier::State::boolean_n3},
};

}  // namespace

std::vector<std::string> const& check_ids() {
  static std::vector<std::string> const ids = [] {
    std::vector<std::string> out;
    for (auto const& e : registry) {
      out.emplace_back(e.id);
    }
    return out;
  }();
  return ids;
}

Verifier::Verifier(RunConfig config) : state_(std::make_unique<State>()) {
  state_->config = config;
}

Verifier::~Verifier() = default;

RunConfig const& Verifier::config() const noexcept { return state_->config; }

CheckResult Verifier::run(std::string_view id) {
  auto const* entry = std::find_if(std::begin(registry), std::end(registry),
                                   [&](Entry const& e) { return e.id == id; });
  if (entry == std::end(registry)) {
    throw UnknownCheckId("unknown check id '" + std::string(id) + "'");
  }
  auto const& cfg = state_->config;
  CheckResult result{std::string(id), cfg.n, Status::skipped, json::object(), 0};
  auto const start = std::chrono::steady_clock::now();
  if (id == "boolean-n3" && cfg.n != 3) {
    result.details = {{"reason", "stated for n = 3 only"}};
  } else if (cfg.n < 3) {
    result.details = {{"reason", "stated for n >= 3 only"}};
  } else if (cfg.n > cfg.max_n_equivalence || cfg.n > desk_scale_n) {
    result.details = {{"reason", "cap"},
                      {"message", "n=" + std::to_string(cfg.n) + " exceeds the cap n=" +
                                      std::to_string(std::min(cfg.max_n_equivalence, desk_scale_n))}};
  } else {
    try {
      auto outcome = (state_.get()->*(entry->fn))();
      result.status = outcome.status;
      result.details = std::move(outcome.details);
    } catch (Skip const& s) {
      result.details = s.details;
    } catch (CapExceeded const& ex) {
      result.details = cap_skip(ex.what()).details;
    }
  }
  if (result.status == Status::skipped && cfg.n > desk_scale_n) {
    result.details["claim"] = "proof-backed, unverified";
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CheckResult> Verifier::run(std::vector<std::string> const& ids) {
  for (auto const& id : ids) {
    if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end()) {
      throw UnknownCheckId("unknown check id '" + id + "'");
    }
  }
  std::vector<CheckResult> out;
  out.reserve(ids.size());
  for (auto const& id : ids) {
    out.push_back(run(id));
  }
  return out;
}

nlohmann::json report_json(RunConfig const& config, std::vector<CheckResult> const& results) {
  json checks = json::array();
  std::size_t counts[3] = {0, 0, 0};
  for (auto const& r : results) {
    json entry = {{"id", r.id},
                  {"n", r.n},
                  {"status", std::string(to_string(r.status))},
                  {"details", r.details}};
    if (config.timings) {
      entry["seconds"] = r.seconds;
    }
    checks.push_back(std::move(entry));
    ++counts[static_cast<int>(r.status)];
  }
  return {{"schema", 1},
          {"n", config.n},
          {"seed", config.seed},
          {"caps", {{"max_n_eq", config.max_n_equivalence}, {"max_n_quord", config.max_n_quasiorder}}},
          {"checks", std::move(checks)},
          {"summary", {{"pass", counts[0]}, {"fail", counts[1]}, {"skipped", counts[2]}}}};
}

int exit_code(std::vector<CheckResult> const& results) {
  return std::any_of(results.begin(), results.end(),
                     [](CheckResult const& r) { return r.status == Status::fail; })
             ? 1
             : 0;
}

}  // namespace conlat
