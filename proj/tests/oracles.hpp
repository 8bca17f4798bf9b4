// Brute-force reference computations written against plain containers. Tests
// compare library results against these rather than against the library.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long long>;

inline Vec sorted_unique(Vec v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline Vec sumset(const Vec& a, const Vec& b) {
  std::set<long long> out;
  for (long long x : a)
    for (long long y : b) out.insert(x + y);
  return {out.begin(), out.end()};
}

inline Vec diffset(const Vec& a, const Vec& b) {
  std::set<long long> out;
  for (long long x : a)
    for (long long y : b) out.insert(x - y);
  return {out.begin(), out.end()};
}

// Consecutive gaps all equal.
inline bool is_ap(const Vec& a) {
  for (std::size_t i = 2; i < a.size(); ++i)
    if (a[i] - a[i - 1] != a[1] - a[0]) return false;
  return true;
}

// Shortest AP containing a, by trying every difference that could work.
inline long long shortest_ap_length(const Vec& a) {
  const long long span = a.back() - a.front();
  if (span == 0) return 1;
  long long best = span + 1;
  for (long long d = 1; d <= span; ++d) {
    bool ok = true;
    for (long long x : a) ok = ok && (x - a.front()) % d == 0;
    if (ok) best = std::min(best, span / d + 1);
  }
  return best;
}

inline Vec intersect(const Vec& a, const Vec& b) {
  Vec out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset(const Vec& a, const Vec& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline Vec closure_step(const Vec& x, const Vec& a) {
  std::set<long long> out;
  for (long long p : x)
    for (long long q : x)
      for (long long r : x)
        if (std::binary_search(a.begin(), a.end(), p + q - r)) out.insert(p + q - r);
  return {out.begin(), out.end()};
}

inline Vec closure(Vec x, const Vec& a) {
  for (;;) {
    Vec next = closure_step(x, a);
    if (next == x) return x;
    x = std::move(next);
  }
}

inline bool structured(const Vec& a) {
  for (long long g : a)
    if (std::binary_search(a.begin(), a.end(), g + 1) && closure({g, g + 1}, a) == a) return true;
  return false;
}

inline long long gcd_of(const Vec& a) {
  long long g = 0;
  for (long long x : a) g = std::gcd(g, x - a.front());
  return g;
}

// All subsets of [lo, hi] as sorted vectors, by bitmask.
inline std::vector<Vec> subsets_of_range(long long lo, long long hi) {
  std::vector<Vec> out;
  const int n = static_cast<int>(hi - lo + 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    Vec s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) s.push_back(lo + i);
    out.push_back(std::move(s));
  }
  return out;
}

// Heisenberg triples with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
using H = std::array<long long, 3>;

inline H hmul(const H& g, const H& h) { return {g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]}; }

inline std::set<H> hproduct(const std::vector<H>& s, const std::vector<H>& t) {
  std::set<H> out;
  for (const H& x : s)
    for (const H& y : t) out.insert(hmul(x, y));
  return out;
}

}  // namespace oracle
