#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cylperc/layer_kernel.hpp"
#include "cylperc/pattern.hpp"
#include "cylperc/pattern_space.hpp"

using namespace cylperc;

TEST_CASE("canonicalize matches the printed forms") {
  Pattern x = Pattern::canonicalize(5, {{Pattern::kStar, 0, 1}, {2, 4}, {3}});
  CHECK(x.to_string() == "{{*,0,1},{2,4},{3}}");

  Pattern reordered = Pattern::canonicalize(5, {{2, 4}, {Pattern::kStar, 1, 0}, {3}});
  CHECK(reordered == x);

  Pattern dagger = Pattern::canonicalize(3, {{Pattern::kStar}, {0}, {1}, {2}});
  CHECK(dagger == Pattern::disconnected(3));
  CHECK(dagger.to_string() == "{{*},{0},{1},{2}}");
  CHECK_FALSE(dagger.is_infected());
}

TEST_CASE("canonicalize rejects bad partitions") {
  CHECK_THROWS_AS(Pattern::canonicalize(3, {{0, 1}, {1, 2}, {Pattern::kStar}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Pattern::canonicalize(3, {{0, 1}, {Pattern::kStar}}), std::invalid_argument);
  CHECK_THROWS_AS(Pattern::canonicalize(3, {{0, 1, 5}, {2, Pattern::kStar}}),
                  std::invalid_argument);
}

TEST_CASE("canonicalize is idempotent on random partitions") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 3 + static_cast<int>(rng() % 5);
    std::vector<std::vector<int>> blocks(1 + rng() % k);
    for (int v = 0; v < k; ++v) blocks[rng() % blocks.size()].push_back(v);
    blocks[rng() % blocks.size()].push_back(Pattern::kStar);
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const auto& b) { return b.empty(); }),
                 blocks.end());
    Pattern once = Pattern::canonicalize(k, blocks);
    std::vector<std::vector<int>> again;
    for (int b = 0; b < once.block_count(); ++b) again.emplace_back();
    for (int v = 0; v < k; ++v) again[once.block_of(v)].push_back(v);
    again[once.star_block()].push_back(Pattern::kStar);
    CHECK(Pattern::canonicalize(k, again) == once);
  }
}

TEST_CASE("pattern text round trip") {
  for (const char* text : {"{{*,0,1},{2,4},{3}}", "{{*},{0,4},{1,2},{3}}", "{{*,0,1,2},{3,4}}"}) {
    CHECK(Pattern::parse(text).to_string() == text);
  }
  CHECK(Pattern::parse("{{*,0,1},{2,4},{3}}").to_json() == "[[\"*\",0,1],[2,4],[3]]");
}

TEST_CASE("enumeration counts are Bell numbers") {
  CHECK(bell_number(3) == 5);
  CHECK(bell_number(4) == 15);
  CHECK(bell_number(5) == 52);

  PatternSpace s3 = PatternSpace::enumerate(3);
  CHECK(s3.all.size() == 15);
  CHECK(s3.star.size() == 10);
  CHECK(s3.dagger.size() == 5);

  PatternSpace s4 = PatternSpace::enumerate(4);
  CHECK(s4.all.size() == 52);
  CHECK(s4.star.size() == 52 - 15);

  for (int k = 3; k <= 6; ++k) {
    PatternSpace s = PatternSpace::enumerate(k);
    CHECK(s.all.size() == bell_number(k + 1));
    CHECK(s.star.size() == bell_number(k + 1) - bell_number(k));
    CHECK(s.star.size() + s.dagger.size() == s.all.size());
  }
}

TEST_CASE("enumeration is duplicate free and indexable") {
  PatternSpace s = PatternSpace::enumerate(5);
  std::set<Pattern> distinct(s.all.begin(), s.all.end());
  CHECK(distinct.size() == s.all.size());
  for (std::size_t i = 0; i < s.all.size(); ++i)
    CHECK(s.index_of(s.all[i]) == static_cast<int>(i));
  CHECK(s.all[s.full_index()] == Pattern::full(5));
  CHECK(s.all[s.disconnected_index()] == Pattern::disconnected(5));
}

TEST_CASE("cap produces a capacity error naming the Bell size") {
  try {
    PatternSpace::enumerate(11, 10);
    FAIL("expected a capacity error");
  } catch (const std::length_error& e) {
    CHECK(std::string(e.what()).find("4213597") != std::string::npos);  // Bell(12)
  }
}

TEST_CASE("noncrossing classification") {
  CHECK(is_noncrossing(Pattern::canonicalize(4, {{Pattern::kStar, 0, 2}, {1}, {3}})));
  CHECK_FALSE(is_noncrossing(Pattern::canonicalize(4, {{Pattern::kStar, 0, 2}, {1, 3}})));
  CHECK(is_noncrossing(Pattern::full(5)));
}

TEST_CASE("rotation is a group action preserving structure") {
  PatternSpace s = PatternSpace::enumerate(5);
  Pattern x = Pattern::parse("{{*,0},{1},{2}}");
  CHECK(x.rotate(0) == x);
  CHECK(x.rotate(1).to_string() == "{{0},{*,1},{2}}");

  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Pattern& p = s.all[rng() % s.all.size()];
    int r = static_cast<int>(rng() % 5);
    CHECK(p.rotate(r).rotate(5 - r) == p);
    CHECK(p.rotate(r).is_infected() == p.is_infected());
    CHECK(is_noncrossing(p.rotate(r)) == is_noncrossing(p));
  }

  // bijection of the whole space
  std::set<Pattern> image;
  for (const Pattern& p : s.all) image.insert(p.rotate(2));
  CHECK(image.size() == s.all.size());
}

TEST_CASE("attainable states equal noncrossing infected patterns on cycles") {
  for (int k : {3, 4, 5}) {
    Graph g = Graph::cycle(k);
    PatternSpace space = PatternSpace::enumerate(k);
    TransitionKernel kernel = build_kernel(space, g);
    std::vector<int> bfs = attainable_states(space, kernel, 0);

    std::vector<int> filter;
    for (int idx : space.star)
      if (is_noncrossing(space.all[idx])) filter.push_back(idx);
    std::sort(filter.begin(), filter.end());
    CHECK(bfs == filter);
    if (k == 3) CHECK(bfs.size() == 10);
  }
}

TEST_CASE("rotation maps the attainable set onto itself") {
  Graph g = Graph::cycle(5);
  PatternSpace space = PatternSpace::enumerate(5);
  TransitionKernel kernel = build_kernel(space, g);
  std::vector<int> att = attainable_states(space, kernel, 0);
  std::set<int> att_set(att.begin(), att.end());
  for (int idx : att)
    CHECK(att_set.count(space.index_of(space.all[idx].rotate(1))) == 1);
}

TEST_CASE("line graph keeps an initial state unreachable from the full pattern") {
  Graph g = Graph::line(3);
  PatternSpace space = PatternSpace::enumerate(3);
  TransitionKernel kernel = build_kernel(space, g);

  Pattern split = Pattern::canonicalize(3, {{1, Pattern::kStar}, {0, 2}});
  int split_idx = space.index_of(split);

  std::vector<int> support = initial_support(space, kernel, 1);
  CHECK(std::find(support.begin(), support.end(), split_idx) != support.end());

  std::vector<int> att = attainable_states(space, kernel, 1);
  CHECK(std::find(att.begin(), att.end(), split_idx) != att.end());

  // but it is not reachable from the fully connected pattern
  std::vector<char> seen(space.all.size(), 0);
  std::vector<int> queue{space.full_index()};
  seen[space.full_index()] = 1;
  while (!queue.empty()) {
    int y = queue.back();
    queue.pop_back();
    for (const auto& [x, counts] : kernel.rows[y]) {
      (void)counts;
      if (!seen[x]) {
        seen[x] = 1;
        queue.push_back(x);
      }
    }
  }
  CHECK_FALSE(seen[split_idx]);
}
