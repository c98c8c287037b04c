#include "cheeger_gap/vertex_set.hpp"

#include <bit>
#include <sstream>

#include "cheeger_gap/error.hpp"

namespace cheeger_gap {

VertexSet::VertexSet(std::size_t n, std::initializer_list<std::uint32_t> members) : VertexSet(n) {
  for (auto v : members) {
    if (v >= n) throw Error(ErrorKind::invalid_model, "vertex index out of range");
    insert(v);
  }
}

VertexSet VertexSet::from_indices(std::size_t n, const std::vector<std::uint32_t>& members) {
  VertexSet s(n);
  for (auto v : members) {
    if (v >= n) throw Error(ErrorKind::invalid_model, "vertex index out of range");
    s.insert(v);
  }
  return s;
}

VertexSet VertexSet::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw Error(ErrorKind::internal, "from_mask requires n <= 64");
  VertexSet s(n);
  if (n > 0) s.words_[0] = mask;
  s.trim();
  return s;
}

VertexSet VertexSet::full(std::size_t n) {
  VertexSet s(n);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.trim();
  return s;
}

void VertexSet::trim() noexcept {
  if (n_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
}

std::size_t VertexSet::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool VertexSet::proper() const noexcept {
  const auto c = count();
  return c > 0 && c < n_;
}

VertexSet VertexSet::complement() const {
  VertexSet s(n_);
  for (std::size_t k = 0; k < words_.size(); ++k) s.words_[k] = ~words_[k];
  s.trim();
  return s;
}

std::vector<std::uint32_t> VertexSet::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(count());
  for (std::size_t k = 0; k < words_.size(); ++k) {
    auto w = words_[k];
    while (w != 0) {
      const int b = std::countr_zero(w);
      out.push_back(static_cast<std::uint32_t>(k * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t VertexSet::mask() const {
  if (n_ > 64) throw Error(ErrorKind::internal, "mask() requires n <= 64");
  return words_.empty() ? 0 : words_[0];
}

std::string VertexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto v : indices()) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '}';
  return os.str();
}

bool VertexSet::lex_less(const VertexSet& other) const {
  // At the lowest differing vertex k, the set holding k comes first unless the
  // other set has nothing beyond k (then it is a proper prefix).
  const std::size_t words = std::min(words_.size(), other.words_.size());
  for (std::size_t k = 0; k < words; ++k) {
    const auto diff = words_[k] ^ other.words_[k];
    if (diff == 0) continue;
    const int bit = std::countr_zero(diff);
    const bool mine = (words_[k] >> bit) & 1u;
    const auto& without = mine ? other : *this;
    bool tail = false;
    const auto above = bit == 63 ? 0 : (~std::uint64_t{0} << (bit + 1));
    if (without.words_[k] & above) tail = true;
    for (std::size_t j = k + 1; j < without.words_.size() && !tail; ++j) tail = without.words_[j] != 0;
    // `without` is a prefix when it has no members above k.
    return mine ? tail : !tail;
  }
  return false;
}

}  // namespace cheeger_gap
