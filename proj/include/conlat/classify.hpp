#pragma once

// Structural classification of unary maps: functional-graph profile, the
// coatom types I/II/III, the companion map f̂, essential triples, the depth
// conditions D0(a)/(b) for acyclic maps, and explicit ∧-reductions.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "conlat/relations.hpp"

namespace conlat {

struct FunctionProfile {
  UnaryMap f;
  bool is_trivial = false;
  bool is_permutation = false;
  // Lengths of all cycles of the functional graph, fixed points included,
  // in ascending order.
  std::vector<int> cycle_lengths;
  // Order of the permutation; 0 for non-permutations.
  std::uint64_t order = 0;
  // (p, m) when order = p^m with m >= 1.
  std::optional<std::pair<int, int>> prime_power;
  bool is_acyclic = false;
  std::vector<element> fixed_points;
  // Connected components of the functional graph, each sorted, ordered by
  // least element.
  std::vector<std::vector<element>> components;
  // t_f(x) = min{k : f^k x = f^{k+1} x}; -1 when x never reaches a fixed point.
  std::vector<int> depth;
  // Largest defined depth, -1 when none is defined.
  int max_depth = -1;
};

FunctionProfile profile(UnaryMap const& f);

enum class Type { trivial, type_i, type_ii, type_iii, cond_a, cond_b, uncharacterized };

std::string_view to_string(Type t);

// Named elements of D0(a) as (0, 1, 2, 0', 1', 2'). For D0(b) the fourth
// entry repeats 0, since both depth-2 paths end in the single fixed point.
struct D0Witness {
  char variant = 'a';
  std::array<element, 6> elements{};
};

struct TypeTag {
  Type tag = Type::uncharacterized;
  // Type II: the constant value of f² and the size of its preimage under f.
  element constant = -1;
  int kernel_size = 0;
  // Type III: the prime p with f^p = id.
  int prime = 0;
  std::optional<D0Witness> d0;
};

// First match in the order trivial, I, II, III, D0(a), D0(b); the depth
// conditions are only tried for acyclic maps. D0(a) needs two fixed points
// and D0(b) needs a single component, so at most one of them holds.
TypeTag type_of(UnaryMap const& f);

UnaryMap hat(UnaryMap const& f);

struct Triple {
  element x;
  element z;
  element y;
  friend bool operator==(Triple const&, Triple const&) = default;
  friend auto operator<=>(Triple const&, Triple const&) = default;
};

// Empty unless f is of type I or II.
std::vector<Triple> essential_triples(UnaryMap const& f);

// Lexicographically first witness of D0(a), else of D0(b). Throws NotAcyclic.
std::optional<D0Witness> cond_D0(UnaryMap const& f);

enum class ReductionCase { transposition, several_components, single_tail, long_tail };

std::string_view to_string(ReductionCase c);

// Con(A, f) = Con(A, g1) ∩ Con(A, g2) with both containments strict.
struct Reduction {
  ReductionCase which;
  UnaryMap g1;
  UnaryMap g2;
};

// The explicit pair for a transposition on at least three elements, or for an
// acyclic map that is neither of type I/II nor satisfies D0. Throws
// NotApplicable for every other map.
Reduction reduction_witnesses(UnaryMap const& f);

enum class Prediction { yes, no, unknown };

std::string_view to_string(Prediction p);

// ∧-irreducibility of Con(A, f) as far as the classification theorems decide
// it: permutations and acyclic maps only.
Prediction predicted_meet_irreducible(UnaryMap const& f);

// Permutation of order p^m with at least two cycles of length p^m.
bool is_prime_power_permutation(FunctionProfile const& p);

}  // namespace conlat
