#pragma once

// Davenport-Schinzel sequences: validation, exhaustive lambda_s(n) for small
// instances, and closed forms / upper bounds.

#include "hullscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace hullscope {

struct LabelSequence {
  std::vector<int> symbols;
  bool cyclic = false;
};

/// Longest alternation a, b, a, b, ... as a subsequence; for cyclic sequences,
/// the longest over all rotations.
inline int alternation_length(const std::vector<int>& seq, int a, int b, bool cyclic) {
  std::vector<int> f;
  for (int x : seq) {
    if ((x == a || x == b) && (f.empty() || f.back() != x)) f.push_back(x);
  }
  if (f.empty()) return 0;
  if (!cyclic) return static_cast<int>(f.size());
  // Count cyclic runs; a rotation starting inside a run of length >= 2 gains one.
  std::vector<int> g;
  for (int x : seq) {
    if (x == a || x == b) g.push_back(x);
  }
  std::size_t runs = f.size();
  if (runs > 1 && f.front() == f.back()) --runs;
  if (runs <= 1) return 1;
  bool long_run = false;
  for (std::size_t k = 0; k < g.size(); ++k) long_run |= g[k] == g[(k + 1) % g.size()];
  return static_cast<int>(runs) + (long_run ? 1 : 0);
}

inline bool has_adjacent_repeat(const LabelSequence& seq) {
  const auto& v = seq.symbols;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    if (v[k] == v[k + 1]) return true;
  }
  return seq.cyclic && v.size() > 1 && v.front() == v.back();
}

/// Longest pairwise alternation in the sequence.
inline int max_alternation(const LabelSequence& seq) {
  const std::set<int> symbols(seq.symbols.begin(), seq.symbols.end());
  int best = symbols.empty() ? 0 : 1;
  for (auto a = symbols.begin(); a != symbols.end(); ++a) {
    for (auto b = std::next(a); b != symbols.end(); ++b) {
      best = std::max(best, alternation_length(seq.symbols, *a, *b, seq.cyclic));
    }
  }
  return best;
}

/// No equal neighbours and no alternation of length s + 2.
inline bool is_davenport_schinzel(const LabelSequence& seq, int s) {
  if (has_adjacent_repeat(seq)) return false;
  return max_alternation(seq) < s + 2;
}

namespace detail {

class LambdaSearch {
 public:
  LambdaSearch(int n, int s) : n_(n), s_(s) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) pair_index_[a][b] = pair_index_[b][a] = pairs_++;
    }
  }

  int run() {
    if (n_ == 0) return 0;
    std::vector<int> len(pairs_, 0), last(pairs_, 0);
    return 1 + best(0, 1, len, last);
  }

 private:
  // State: last symbol, number of symbols introduced, and per pair the
  // alternation length so far with the pair's most recent symbol.
  std::uint64_t key(int prev, const std::vector<int>& len, const std::vector<int>& last) const {
    std::uint64_t k = static_cast<std::uint64_t>(prev);
    for (int p = 0; p < pairs_; ++p) k = (k << 4) | static_cast<std::uint64_t>((len[p] << 1) | last[p]);
    return k;
  }

  int best(int prev, int used, std::vector<int>& len, std::vector<int>& last) {
    const std::uint64_t k = key(prev, len, last);
    if (const auto it = memo_.find(k); it != memo_.end()) return it->second;
    int result = 0;
    const int limit = std::min(n_, used + 1);  // new symbols are introduced in order
    for (int c = 0; c < limit; ++c) {
      if (c == prev) continue;
      std::vector<std::pair<int, std::pair<int, int>>> undo;
      bool ok = true;
      for (int o = 0; o < used && ok; ++o) {
        if (o == c) continue;
        const int p = pair_index_[c][o];
        const int mark = c < o ? 0 : 1;
        if (len[p] == 0 || last[p] != mark) {
          undo.push_back({p, {len[p], last[p]}});
          // An untouched pair starts with the other symbol if it already appeared.
          len[p] = len[p] == 0 ? (o < used ? 2 : 1) : len[p] + 1;
          last[p] = mark;
          if (len[p] >= s_ + 2) ok = false;
        }
      }
      if (ok) result = std::max(result, 1 + best(c, std::max(used, c + 1), len, last));
      for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
        len[it->first] = it->second.first;
        last[it->first] = it->second.second;
      }
    }
    memo_[k] = result;
    return result;
  }

  int n_;
  int s_;
  int pairs_ = 0;
  int pair_index_[8][8]{};
  std::unordered_map<std::uint64_t, int> memo_;
};

}  // namespace detail

/// Exact lambda_s(n) by exhaustive search (n <= 6, s <= 4).
inline int lambda_brute(int n, int s) {
  if (n < 0 || s < 1) throw Error(ErrorCode::degenerate_input, "need n >= 0 and s >= 1");
  if (n > 6 || s > 4) {
    throw Error(ErrorCode::too_large, "exhaustive search limited to n <= 6, s <= 4 (got n=" + std::to_string(n) +
                                          ", s=" + std::to_string(s) + ")");
  }
  return detail::LambdaSearch(n, s).run();
}

struct LambdaValue {
  long long value = 0;
  bool exact = true;  // false: an upper bound, not the value
};

/// lambda_1(n) = n and lambda_2(n) = 2n - 1 exactly; for s >= 3 an upper bound.
inline LambdaValue lambda_closed(long long n, int s) {
  if (n <= 0) return {0, true};
  if (s == 1) return {n, true};
  if (s == 2) return {2 * n - 1, true};
  // Each unordered pair accounts for at most s adjacent transitions.
  const long long quadratic = static_cast<long long>(s) * (n * (n - 1) / 2) + 1;
  if (s == 3) {
    const auto nlogn = static_cast<long long>(std::ceil(n * (2.0 * std::log(static_cast<double>(n)) + 3.0)));
    return {std::min(quadratic, nlogn), false};
  }
  return {quadratic, false};
}

}  // namespace hullscope
