#pragma once

// Independent brute-force models used as test oracles. Relations are plain
// sets of pairs and maps are plain vectors; nothing here touches the
// library's compact encodings.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pairs = std::set<std::pair<int, int>>;
using Map = std::vector<int>;

inline std::vector<Map> all_maps(int n) {
  std::vector<Map> out;
  Map f(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(f);
    int i = n - 1;
    while (i >= 0 && ++f[static_cast<std::size_t>(i)] == n) {
      f[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) {
      return out;
    }
  }
}

inline bool is_transitive(Pairs const& r) {
  for (auto [a, b] : r) {
    for (auto [c, d] : r) {
      if (b == c && !r.count({a, d})) {
        return false;
      }
    }
  }
  return true;
}

inline bool is_symmetric(Pairs const& r) {
  for (auto [a, b] : r) {
    if (!r.count({b, a})) {
      return false;
    }
  }
  return true;
}

inline Pairs diagonal(int n) {
  Pairs r;
  for (int i = 0; i < n; ++i) {
    r.insert({i, i});
  }
  return r;
}

inline Pairs full(int n) {
  Pairs r;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r.insert({i, j});
    }
  }
  return r;
}

// Every reflexive transitive relation, found by filtering all reflexive
// relations.
inline std::vector<Pairs> quasiorders(int n) {
  std::vector<std::pair<int, int>> off;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) {
        off.emplace_back(i, j);
      }
    }
  }
  std::vector<Pairs> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << off.size()); ++bits) {
    Pairs r = diagonal(n);
    for (std::size_t k = 0; k < off.size(); ++k) {
      if ((bits >> k) & 1U) {
        r.insert(off[k]);
      }
    }
    if (is_transitive(r)) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<Pairs> equivalences(int n) {
  std::vector<Pairs> out;
  for (auto& q : quasiorders(n)) {
    if (is_symmetric(q)) {
      out.push_back(q);
    }
  }
  return out;
}

// Equivalences from "same label" over all labellings, deduplicated.
inline std::set<Pairs> equivalences_by_labels(int n) {
  std::set<Pairs> out;
  for (auto const& labels : all_maps(n)) {
    Pairs r;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) {
          r.insert({i, j});
        }
      }
    }
    out.insert(std::move(r));
  }
  return out;
}

inline bool preserves(Map const& f, Pairs const& r) {
  for (auto [x, y] : r) {
    if (!r.count({f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]})) {
      return false;
    }
  }
  return true;
}

inline Pairs intersect(Pairs const& a, Pairs const& b) {
  Pairs out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

inline bool subset(Pairs const& a, Pairs const& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Least member of `family` preserved by f and containing (x, y): the
// intersection of all such members.
inline Pairs least_invariant(std::vector<Pairs> const& family, Map const& f, int x, int y,
                             int n) {
  Pairs out = full(n);
  for (auto const& r : family) {
    if (r.count({x, y}) && preserves(f, r)) {
      out = intersect(out, r);
    }
  }
  return out;
}

inline Map compose(Map const& f, Map const& g) {  // x -> g(f(x))
  Map h(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    h[x] = g[static_cast<std::size_t>(f[x])];
  }
  return h;
}

inline bool is_trivial(Map const& f) {
  bool identity = true;
  bool constant = true;
  for (std::size_t x = 0; x < f.size(); ++x) {
    identity = identity && f[x] == static_cast<int>(x);
    constant = constant && f[x] == f[0];
  }
  return identity || constant;
}

}  // namespace oracle
