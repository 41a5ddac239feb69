#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

// Proof node identifier: a dot-separated sequence of naturals. Authors use
// plain naturals ("12"); the normalizer derives fresh ids from existing ones
// by appending a component ("12.1", "12.2").
struct NodeId {
  std::vector<uint64_t> parts;

  NodeId() = default;
  explicit NodeId(uint64_t n) : parts{n} {}
  explicit NodeId(std::vector<uint64_t> p) : parts(std::move(p)) {}

  bool valid() const { return !parts.empty(); }

  NodeId child_id(uint64_t suffix) const {
    NodeId out = *this;
    out.parts.push_back(suffix);
    return out;
  }

  std::string str() const {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) out += '.';
      out += std::to_string(parts[i]);
    }
    return out;
  }

  static std::optional<NodeId> parse(const std::string& text) {
    NodeId id;
    uint64_t cur = 0;
    bool have_digit = false;
    for (char c : text) {
      if (c >= '0' && c <= '9') {
        cur = cur * 10 + static_cast<uint64_t>(c - '0');
        have_digit = true;
      } else if (c == '.') {
        if (!have_digit) return std::nullopt;
        id.parts.push_back(cur);
        cur = 0;
        have_digit = false;
      } else {
        return std::nullopt;
      }
    }
    if (!have_digit) return std::nullopt;
    id.parts.push_back(cur);
    return id;
  }

  auto operator<=>(const NodeId&) const = default;
};

}  // namespace cyclo
