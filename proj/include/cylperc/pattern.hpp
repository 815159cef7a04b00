#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cylperc {

/// A pattern is a partition of {0,...,k-1} union {*}, stored as a
/// restricted-growth string over the element order (0,...,k-1,*):
/// block indices are assigned in order of first occurrence, so two
/// partitions are equal iff their strings are equal.
///
/// The block of * marks the infected vertices. A pattern is "infected"
/// when that block contains at least one vertex.
class Pattern {
 public:
  Pattern() = default;

  /// Builds the canonical pattern from an arbitrary block decomposition.
  /// Blocks use vertex ids 0..k-1 and kStar for the marker; they must
  /// partition {0..k-1, *} exactly.
  static Pattern canonicalize(int k, const std::vector<std::vector<int>>& raw_blocks);

  /// Fully disconnected, uninfected pattern {{*},{0},...,{k-1}}.
  static Pattern disconnected(int k);
  /// Fully connected, infected pattern {{*,0,...,k-1}}.
  static Pattern full(int k);

  /// Element id used for the marker * in raw block input.
  static constexpr int kStar = -1;

  int k() const { return k_; }
  /// Block index of element i (i in 0..k-1) or of * (i == k).
  std::uint8_t block_of(int i) const { return assignment_[i]; }
  std::uint8_t star_block() const { return assignment_[k_]; }
  int block_count() const { return blocks_; }

  bool same_block(int a, int b) const { return assignment_[a] == assignment_[b]; }
  bool infected(int v) const { return assignment_[v] == assignment_[k_]; }
  /// True iff the block of * contains at least one vertex.
  bool is_infected() const;
  int infected_count() const;

  /// Relabels v -> (v + r) mod k and recanonicalizes; cycle symmetry.
  Pattern rotate(int r) const;

  /// Drops the marker: restricted-growth string of the vertex partition only.
  std::vector<std::uint8_t> vertex_partition() const;

  /// Text form, e.g. "{{*,0,1},{2,4},{3}}": * first in its block, blocks
  /// ordered by smallest vertex (a bare {*} block first).
  std::string to_string() const;
  static Pattern parse(const std::string& text);

  /// JSON form: array of arrays, the marker encoded as the string "*".
  std::string to_json() const;

  bool operator==(const Pattern& other) const = default;
  auto operator<=>(const Pattern& other) const = default;

  const std::vector<std::uint8_t>& assignment() const { return assignment_; }

  struct Hash {
    std::size_t operator()(const Pattern& p) const noexcept;
  };

 private:
  int k_ = 0;
  int blocks_ = 0;
  std::vector<std::uint8_t> assignment_;  // length k_+1, marker last

  static Pattern from_assignment(int k, std::vector<std::uint8_t> raw);
};

}  // namespace cylperc
