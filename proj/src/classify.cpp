#include "conlat/classify.hpp"

#include <algorithm>
#include <numeric>

namespace conlat {

namespace {

bool is_prime(int p) {
  if (p < 2) {
    return false;
  }
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) {
      return false;
    }
  }
  return true;
}

std::optional<std::pair<int, int>> as_prime_power(std::uint64_t v) {
  if (v < 2) {
    return std::nullopt;
  }
  std::uint64_t p = 2;
  while (v % p != 0) {
    ++p;
  }
  int m = 0;
  while (v % p == 0) {
    v /= p;
    ++m;
  }
  if (v != 1) {
    return std::nullopt;
  }
  return std::pair{static_cast<int>(p), m};
}

int find(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    x = parent[static_cast<std::size_t>(x)] =
        parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
  }
  return x;
}

// Maps with f² = f.
bool is_idempotent(UnaryMap const& f) {
  for (element x = 0; x < f.size(); ++x) {
    if (f(f(x)) != f(x)) {
      return false;
    }
  }
  return true;
}

// The value of f² when it is constant.
std::optional<element> square_constant(UnaryMap const& f) {
  element const c = f(f(0));
  for (element x = 1; x < f.size(); ++x) {
    if (f(f(x)) != c) {
      return std::nullopt;
    }
  }
  return c;
}

int preimage_size(UnaryMap const& f, element c) {
  int k = 0;
  for (element x = 0; x < f.size(); ++x) {
    k += f(x) == c ? 1 : 0;
  }
  return k;
}

// Distinct (a0, a1, a2) with f a0 = a0, f a1 = a0, f a2 = a1, in
// lexicographic order.
std::vector<std::array<element, 3>> depth_two_chains(UnaryMap const& f) {
  std::vector<std::array<element, 3>> out;
  for (element a0 = 0; a0 < f.size(); ++a0) {
    if (f(a0) != a0) {
      continue;
    }
    for (element a1 = 0; a1 < f.size(); ++a1) {
      if (a1 == a0 || f(a1) != a0) {
        continue;
      }
      for (element a2 = 0; a2 < f.size(); ++a2) {
        if (a2 != a0 && a2 != a1 && f(a2) == a1) {
          out.push_back({a0, a1, a2});
        }
      }
    }
  }
  return out;
}

}  // namespace

FunctionProfile profile(UnaryMap const& f) {
  int const n = f.size();
  FunctionProfile p;
  p.f = f;
  p.is_trivial = f.is_trivial();
  p.is_permutation = f.is_permutation();

  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (element x = 0; x < n; ++x) {
    // x lies on a cycle iff it returns to itself within n steps.
    element y = f(x);
    int len = 1;
    while (y != x && len <= n) {
      y = f(y);
      ++len;
    }
    if (y != x || seen[static_cast<std::size_t>(x)]) {
      continue;
    }
    for (element z = x, k = 0; k < len; z = f(z), ++k) {
      seen[static_cast<std::size_t>(z)] = true;
    }
    p.cycle_lengths.push_back(len);
    if (len == 1) {
      p.fixed_points.push_back(x);
    }
  }
  std::sort(p.cycle_lengths.begin(), p.cycle_lengths.end());
  p.is_acyclic = std::all_of(p.cycle_lengths.begin(), p.cycle_lengths.end(),
                             [](int len) { return len == 1; });

  if (p.is_permutation) {
    p.order = 1;
    for (int len : p.cycle_lengths) {
      p.order = std::lcm(p.order, static_cast<std::uint64_t>(len));
    }
    p.prime_power = as_prime_power(p.order);
  }

  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (element x = 0; x < n; ++x) {
    int const a = find(parent, x);
    int const b = find(parent, f(x));
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (element x = 0; x < n; ++x) {
    int const root = find(parent, x);
    if (slot[static_cast<std::size_t>(root)] < 0) {
      slot[static_cast<std::size_t>(root)] = static_cast<int>(p.components.size());
      p.components.emplace_back();
    }
    p.components[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(x);
  }

  p.depth.assign(static_cast<std::size_t>(n), -1);
  for (element x = 0; x < n; ++x) {
    element y = x;
    for (int k = 0; k <= n; ++k, y = f(y)) {
      if (f(y) == y) {
        p.depth[static_cast<std::size_t>(x)] = k;
        p.max_depth = std::max(p.max_depth, k);
        break;
      }
    }
  }
  return p;
}

bool is_prime_power_permutation(FunctionProfile const& p) {
  if (!p.is_permutation || !p.prime_power) {
    return false;
  }
  auto const longest = static_cast<int>(p.order);
  return std::count(p.cycle_lengths.begin(), p.cycle_lengths.end(), longest) >= 2;
}

std::string_view to_string(Type t) {
  switch (t) {
    case Type::trivial:
      return "trivial";
    case Type::type_i:
      return "I";
    case Type::type_ii:
      return "II";
    case Type::type_iii:
      return "III";
    case Type::cond_a:
      return "D0(a)";
    case Type::cond_b:
      return "D0(b)";
    case Type::uncharacterized:
      return "uncharacterized";
  }
  return "?";
}

std::string_view to_string(ReductionCase c) {
  switch (c) {
    case ReductionCase::transposition:
      return "transposition";
    case ReductionCase::several_components:
      return "several-components";
    case ReductionCase::single_tail:
      return "single-tail";
    case ReductionCase::long_tail:
      return "long-tail";
  }
  return "?";
}

std::string_view to_string(Prediction p) {
  switch (p) {
    case Prediction::yes:
      return "yes";
    case Prediction::no:
      return "no";
    case Prediction::unknown:
      return "unknown";
  }
  return "?";
}

TypeTag type_of(UnaryMap const& f) {
  TypeTag tag;
  if (f.is_trivial()) {
    tag.tag = Type::trivial;
    return tag;
  }
  if (is_idempotent(f)) {
    tag.tag = Type::type_i;
    return tag;
  }
  if (auto c = square_constant(f)) {
    int const k = preimage_size(f, *c);
    if (k >= 3) {
      tag.tag = Type::type_ii;
      tag.constant = *c;
      tag.kernel_size = k;
      return tag;
    }
  }
  if (f.is_permutation()) {
    auto const p = profile(f);
    for (int q = 2; q <= f.size(); ++q) {
      if (is_prime(q) && f.power(static_cast<unsigned>(q)).is_identity() &&
          std::count(p.cycle_lengths.begin(), p.cycle_lengths.end(), q) >= 2) {
        tag.tag = Type::type_iii;
        tag.prime = q;
        return tag;
      }
    }
  }
  if (profile(f).is_acyclic) {
    if (auto w = cond_D0(f)) {
      tag.tag = w->variant == 'a' ? Type::cond_a : Type::cond_b;
      tag.d0 = w;
      return tag;
    }
  }
  tag.tag = Type::uncharacterized;
  return tag;
}

UnaryMap hat(UnaryMap const& f) {
  int const n = f.size();
  auto const t = type_of(f);
  if (t.tag == Type::type_i) {
    auto const p = profile(f);
    std::vector<std::vector<element>> big;
    for (auto const& c : p.components) {
      if (c.size() >= 2) {
        big.push_back(c);
      }
    }
    if (big.size() == 1) {
      element const z = f(big.front().front());
      std::vector<element> img(static_cast<std::size_t>(n));
      for (element x = 0; x < n; ++x) {
        img[static_cast<std::size_t>(x)] = f(x) == x ? z : x;
      }
      return UnaryMap(std::move(img));
    }
  } else if (t.tag == Type::type_ii) {
    element const z = t.constant;
    element u = -1;
    bool two_values = true;
    for (element x = 0; x < n; ++x) {
      if (f(x) == z) {
        continue;
      }
      if (u >= 0 && f(x) != u) {
        two_values = false;
      }
      u = f(x);
    }
    if (two_values && u >= 0) {
      std::vector<element> img(static_cast<std::size_t>(n));
      for (element x = 0; x < n; ++x) {
        img[static_cast<std::size_t>(x)] = f(x) == u ? z : u;
      }
      return UnaryMap(std::move(img));
    }
  }
  return f;
}

std::vector<Triple> essential_triples(UnaryMap const& f) {
  auto const t = type_of(f).tag;
  std::vector<Triple> out;
  if (t != Type::type_i && t != Type::type_ii) {
    return out;
  }
  int const n = f.size();
  for (element x = 0; x < n; ++x) {
    for (element z = 0; z < n; ++z) {
      for (element y = 0; y < n; ++y) {
        if (x == z || x == y || y == z || f(z) != z) {
          continue;
        }
        bool const fits = t == Type::type_i ? f(x) == z && f(y) == y : f(x) == y && f(y) == z;
        if (fits) {
          out.push_back({x, z, y});
        }
      }
    }
  }
  return out;
}

std::optional<D0Witness> cond_D0(UnaryMap const& f) {
  auto const p = profile(f);
  if (!p.is_acyclic) {
    throw NotAcyclic("D0 conditions need an acyclic map, got " + format_unary_map(f));
  }
  auto const chains = depth_two_chains(f);
  for (auto const& c : chains) {
    for (auto const& d : chains) {
      std::array<element, 6> const w{c[0], c[1], c[2], d[0], d[1], d[2]};
      std::array<element, 6> sorted = w;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
        return D0Witness{'a', w};
      }
    }
  }
  if (p.components.size() == 1) {
    for (auto const& c : chains) {
      for (auto const& d : chains) {
        if (d[0] == c[0] && d[1] != c[1]) {
          return D0Witness{'b', {c[0], c[1], c[2], d[0], d[1], d[2]}};
        }
      }
    }
  }
  return std::nullopt;
}

Reduction reduction_witnesses(UnaryMap const& f) {
  int const n = f.size();
  auto const p = profile(f);
  auto const not_applicable = [&] {
    return NotApplicable("no explicit reduction for " + format_unary_map(f));
  };
  if (p.is_trivial) {
    throw not_applicable();
  }
  std::vector<element> g1(static_cast<std::size_t>(n));
  std::vector<element> g2(static_cast<std::size_t>(n));

  if (p.is_permutation) {
    bool const transposition =
        n >= 3 && std::count(p.cycle_lengths.begin(), p.cycle_lengths.end(), 2) == 1 &&
        std::count(p.cycle_lengths.begin(), p.cycle_lengths.end(), 1) == n - 2;
    if (!transposition) {
      throw not_applicable();
    }
    element a = 0;
    while (f(a) == a) {
      ++a;
    }
    element const b = f(a);
    for (element x = 0; x < n; ++x) {
      bool const moved = x == a || x == b;
      g1[static_cast<std::size_t>(x)] = moved ? a : x;
      g2[static_cast<std::size_t>(x)] = moved ? b : x;
    }
    return {ReductionCase::transposition, UnaryMap(g1), UnaryMap(g2)};
  }

  if (!p.is_acyclic) {
    throw not_applicable();
  }
  auto const t = type_of(f).tag;
  if (t != Type::uncharacterized) {
    throw not_applicable();
  }
  auto const depth = [&](element x) { return p.depth[static_cast<std::size_t>(x)]; };

  if (p.components.size() >= 2) {
    // Without D0(a) exactly one component reaches depth 2.
    std::vector<bool> in_k(static_cast<std::size_t>(n), false);
    element zero = -1;
    for (auto const& comp : p.components) {
      bool const deep = std::any_of(comp.begin(), comp.end(),
                                    [&](element x) { return depth(x) >= 2; });
      if (!deep) {
        continue;
      }
      for (element x : comp) {
        in_k[static_cast<std::size_t>(x)] = true;
        if (f(x) == x) {
          zero = x;
        }
      }
    }
    for (element x = 0; x < n; ++x) {
      bool const k = in_k[static_cast<std::size_t>(x)];
      g1[static_cast<std::size_t>(x)] = k ? f(x) : zero;
      g2[static_cast<std::size_t>(x)] = k ? zero : f(x);
    }
    return {ReductionCase::several_components, UnaryMap(g1), UnaryMap(g2)};
  }

  element const zero = p.fixed_points.front();
  // Without D0(b) every element of depth 2 has the same image.
  element one = -1;
  for (element x = 0; x < n; ++x) {
    if (depth(x) == 2) {
      one = f(x);
      break;
    }
  }
  if (p.max_depth == 2) {
    for (element x = 0; x < n; ++x) {
      g1[static_cast<std::size_t>(x)] = x == zero ? zero : one;
      g2[static_cast<std::size_t>(x)] = x == one ? one : zero;
    }
    return {ReductionCase::single_tail, UnaryMap(g1), UnaryMap(g2)};
  }
  for (element x = 0; x < n; ++x) {
    g1[static_cast<std::size_t>(x)] = depth(x) >= 2 ? one : zero;
    g2[static_cast<std::size_t>(x)] = depth(x) == 2 ? zero : f(x);
  }
  return {ReductionCase::long_tail, UnaryMap(g1), UnaryMap(g2)};
}

Prediction predicted_meet_irreducible(UnaryMap const& f) {
  if (f.is_trivial()) {
    return Prediction::no;
  }
  auto const p = profile(f);
  if (p.is_permutation) {
    return is_prime_power_permutation(p) ? Prediction::yes : Prediction::no;
  }
  if (p.is_acyclic) {
    auto const t = type_of(f).tag;
    bool const irreducible =
        t == Type::type_i || t == Type::type_ii || t == Type::cond_a || t == Type::cond_b;
    return irreducible ? Prediction::yes : Prediction::no;
  }
  return Prediction::unknown;
}

}  // namespace conlat
