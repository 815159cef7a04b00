#include "cylperc/pattern_space.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "cylperc/layer_kernel.hpp"

namespace cylperc {

std::uint64_t bell_number(int n) {
  if (n < 0) throw std::invalid_argument("bell_number: negative argument");
  if (n > 25) throw std::overflow_error("bell_number: argument too large for uint64");
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(i + 1);
    next.push_back(row.back());
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

PatternSpace PatternSpace::enumerate(int k, int cap) {
  if (k < 1) throw std::invalid_argument("enumerate_patterns: k must be >= 1");
  if (k > cap) {
    std::ostringstream msg;
    msg << "enumerate_patterns: k = " << k << " exceeds cap " << cap << " (state space has Bell("
        << k + 1 << ") = " << bell_number(k + 1) << " patterns)";
    throw std::length_error(msg.str());
  }

  PatternSpace space;
  space.k = k;
  const int n = k + 1;
  // Lexicographic restricted-growth strings over (0,...,k-1,*).
  std::vector<std::uint8_t> a(n, 0);
  while (true) {
    std::vector<std::vector<int>> blocks(1 + *std::max_element(a.begin(), a.end()));
    for (int i = 0; i < k; ++i) blocks[a[i]].push_back(i);
    blocks[a[n - 1]].push_back(Pattern::kStar);
    Pattern p = Pattern::canonicalize(k, blocks);

    int idx = static_cast<int>(space.all.size());
    space.index_.emplace(p, idx);
    (p.is_infected() ? space.star : space.dagger).push_back(idx);
    space.all.push_back(std::move(p));

    int i = n - 1;
    for (; i > 0; --i) {
      std::uint8_t prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, a[j]);
      if (a[i] <= prefix_max) break;  // a[i] may grow up to prefix_max + 1
    }
    if (i == 0) break;
    ++a[i];
    std::fill(a.begin() + i + 1, a.end(), std::uint8_t{0});
  }

  if (space.all.size() != bell_number(n))
    throw std::logic_error("enumerate_patterns: enumeration count mismatch");
  return space;
}

int PatternSpace::index_of(const Pattern& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw std::invalid_argument("pattern not in space: " + p.to_string());
  return it->second;
}

bool is_noncrossing(const Pattern& x) {
  const int k = x.k();
  for (int v1 = 0; v1 < k; ++v1)
    for (int v2 = v1 + 1; v2 < k; ++v2) {
      if (x.same_block(v1, v2)) continue;
      for (int v3 = v2 + 1; v3 < k; ++v3) {
        if (!x.same_block(v1, v3)) continue;
        for (int v4 = v3 + 1; v4 < k; ++v4)
          if (x.same_block(v2, v4)) return false;
      }
    }
  return true;
}

namespace {

std::vector<int> closure(const TransitionKernel& kernel, std::vector<int> seeds) {
  std::vector<char> seen(kernel.rows.size(), 0);
  std::deque<int> queue;
  for (int s : seeds)
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  std::vector<int> out;
  while (!queue.empty()) {
    int y = queue.front();
    queue.pop_front();
    out.push_back(y);
    for (const auto& [x, counts] : kernel.rows[y]) {
      (void)counts;
      if (!seen[x]) {
        seen[x] = 1;
        queue.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<int> dagger_closure(const PatternSpace& space, const TransitionKernel& kernel) {
  return closure(kernel, {space.disconnected_index()});
}

std::vector<int> initial_support(const PatternSpace& space, const TransitionKernel& kernel,
                                 int origin) {
  std::vector<int> support;
  for (int d : dagger_closure(space, kernel)) {
    const Pattern& q = space.all[d];
    // Attach the marker to the origin's block of the underlying partition.
    std::vector<std::vector<int>> blocks(q.block_count());
    for (int v = 0; v < q.k(); ++v) blocks[q.block_of(v)].push_back(v);
    // Drop the bare {*} block of the uninfected pattern, re-add * at origin.
    std::vector<std::vector<int>> rebuilt;
    for (auto& b : blocks)
      if (!b.empty()) rebuilt.push_back(std::move(b));
    for (auto& b : rebuilt)
      if (std::find(b.begin(), b.end(), origin) != b.end()) {
        b.push_back(Pattern::kStar);
        break;
      }
    support.push_back(space.index_of(Pattern::canonicalize(q.k(), rebuilt)));
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

std::vector<int> attainable_states(const PatternSpace& space, const TransitionKernel& kernel,
                                   int origin) {
  std::vector<int> reach = closure(kernel, initial_support(space, kernel, origin));
  std::vector<int> out;
  for (int i : reach)
    if (space.is_star(i)) out.push_back(i);
  return out;
}

}  // namespace cylperc
