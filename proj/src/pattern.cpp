#include "cylperc/pattern.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cylperc {

Pattern Pattern::from_assignment(int k, std::vector<std::uint8_t> raw) {
  // Renumber block ids in order of first occurrence (restricted growth).
  std::vector<int> relabel(raw.size(), -1);
  std::uint8_t next = 0;
  for (auto& a : raw) {
    if (relabel[a] < 0) relabel[a] = next++;
    a = static_cast<std::uint8_t>(relabel[a]);
  }
  Pattern p;
  p.k_ = k;
  p.blocks_ = next;
  p.assignment_ = std::move(raw);
  return p;
}

Pattern Pattern::canonicalize(int k, const std::vector<std::vector<int>>& raw_blocks) {
  if (k < 1) throw std::invalid_argument("pattern needs k >= 1");
  std::vector<std::uint8_t> assign(static_cast<std::size_t>(k) + 1, 255);
  std::uint8_t id = 0;
  for (const auto& block : raw_blocks) {
    for (int e : block) {
      int idx = (e == kStar) ? k : e;
      if (e != kStar && (e < 0 || e >= k))
        throw std::invalid_argument("invalid partition: element out of range");
      if (assign[idx] != 255)
        throw std::invalid_argument("invalid partition: overlapping blocks");
      assign[idx] = id;
    }
    ++id;
  }
  for (auto a : assign)
    if (a == 255) throw std::invalid_argument("invalid partition: incomplete cover");
  return from_assignment(k, std::move(assign));
}

Pattern Pattern::disconnected(int k) {
  std::vector<std::uint8_t> assign(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i < k; ++i) assign[i] = static_cast<std::uint8_t>(i);
  assign[k] = static_cast<std::uint8_t>(k);
  return from_assignment(k, std::move(assign));
}

Pattern Pattern::full(int k) {
  std::vector<std::uint8_t> assign(static_cast<std::size_t>(k) + 1, 0);
  return from_assignment(k, std::move(assign));
}

bool Pattern::is_infected() const {
  for (int v = 0; v < k_; ++v)
    if (assignment_[v] == assignment_[k_]) return true;
  return false;
}

int Pattern::infected_count() const {
  int c = 0;
  for (int v = 0; v < k_; ++v)
    if (assignment_[v] == assignment_[k_]) ++c;
  return c;
}

Pattern Pattern::rotate(int r) const {
  r = ((r % k_) + k_) % k_;
  std::vector<std::uint8_t> assign(static_cast<std::size_t>(k_) + 1);
  for (int v = 0; v < k_; ++v) assign[(v + r) % k_] = assignment_[v];
  assign[k_] = assignment_[k_];
  return from_assignment(k_, std::move(assign));
}

std::vector<std::uint8_t> Pattern::vertex_partition() const {
  std::vector<std::uint8_t> raw(assignment_.begin(), assignment_.begin() + k_);
  std::vector<int> relabel(blocks_ + 1, -1);
  std::uint8_t next = 0;
  for (auto& a : raw) {
    if (relabel[a] < 0) relabel[a] = next++;
    a = static_cast<std::uint8_t>(relabel[a]);
  }
  return raw;
}

namespace {

struct PrintBlock {
  int min_vertex;  // -1 for a bare {*} block
  bool has_star;
  std::vector<int> vertices;
};

std::vector<PrintBlock> print_blocks(const Pattern& p) {
  std::vector<PrintBlock> blocks(p.block_count());
  for (auto& b : blocks) {
    b.min_vertex = -1;
    b.has_star = false;
  }
  for (int v = 0; v < p.k(); ++v) {
    auto& b = blocks[p.block_of(v)];
    if (b.vertices.empty()) b.min_vertex = v;
    b.vertices.push_back(v);
  }
  blocks[p.star_block()].has_star = true;
  std::sort(blocks.begin(), blocks.end(), [](const PrintBlock& a, const PrintBlock& b) {
    int ka = a.vertices.empty() ? -1 : a.min_vertex;
    int kb = b.vertices.empty() ? -1 : b.min_vertex;
    return ka < kb;
  });
  return blocks;
}

}  // namespace

std::string Pattern::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first_block = true;
  for (const auto& b : print_blocks(*this)) {
    if (!first_block) out << ',';
    first_block = false;
    out << '{';
    bool first = true;
    if (b.has_star) {
      out << '*';
      first = false;
    }
    for (int v : b.vertices) {
      if (!first) out << ',';
      first = false;
      out << v;
    }
    out << '}';
  }
  out << '}';
  return out.str();
}

std::string Pattern::to_json() const {
  std::ostringstream out;
  out << '[';
  bool first_block = true;
  for (const auto& b : print_blocks(*this)) {
    if (!first_block) out << ',';
    first_block = false;
    out << '[';
    bool first = true;
    if (b.has_star) {
      out << "\"*\"";
      first = false;
    }
    for (int v : b.vertices) {
      if (!first) out << ',';
      first = false;
      out << v;
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

Pattern Pattern::parse(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::vector<int>* current = nullptr;
  int max_vertex = -1;
  std::size_t i = 0;
  auto fail = [&]() { throw std::invalid_argument("malformed pattern text: " + text); };
  if (text.empty() || text.front() != '{') fail();
  ++i;
  while (i < text.size() && text[i] != '}') {
    if (text[i] == ',') {
      ++i;
      continue;
    }
    if (text[i] != '{') fail();
    ++i;
    blocks.emplace_back();
    current = &blocks.back();
    while (i < text.size() && text[i] != '}') {
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == '*') {
        current->push_back(kStar);
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          v = v * 10 + (text[i++] - '0');
        current->push_back(v);
        max_vertex = std::max(max_vertex, v);
      } else {
        fail();
      }
    }
    if (i >= text.size()) fail();
    ++i;  // closing block brace
  }
  if (i >= text.size()) fail();
  return canonicalize(max_vertex + 1, blocks);
}

std::size_t Pattern::Hash::operator()(const Pattern& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto a : p.assignment_) {
    h ^= a;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace cylperc
