#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace cheeger_gap {

/// Subset of {0, ..., n-1} stored as a packed bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  VertexSet(std::size_t n, std::initializer_list<std::uint32_t> members);

  static VertexSet from_indices(std::size_t n, const std::vector<std::uint32_t>& members);
  /// Bit k of `mask` selects vertex k; n must be at most 64.
  static VertexSet from_mask(std::size_t n, std::uint64_t mask);
  static VertexSet full(std::size_t n);

  std::size_t universe() const noexcept { return n_; }
  bool contains(std::uint32_t v) const noexcept {
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }
  void insert(std::uint32_t v) noexcept { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(std::uint32_t v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  /// True when the set is neither empty nor the whole universe.
  bool proper() const noexcept;

  VertexSet complement() const;
  std::vector<std::uint32_t> indices() const;

  /// Only valid for universes of at most 64 vertices.
  std::uint64_t mask() const;

  /// "{0,3,5}" style listing.
  std::string to_string() const;

  /// Lexicographic order on the ascending index lists.
  bool lex_less(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void trim() noexcept;

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cheeger_gap
