#include "ugs/path_set.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "ugs/error.hpp"

namespace ugs {

namespace {

std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }

void check_index(std::size_t universe, PathIndex k) {
  if (k >= universe) {
    throw Error(ErrorCode::InvalidInput, "path index " + std::to_string(k + 1) +
                                             " outside 1.." + std::to_string(universe));
  }
}

}  // namespace

PathSet::PathSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

PathSet PathSet::all(std::size_t universe) {
  PathSet s(universe);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
  if (universe % 64 != 0) s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  return s;
}

PathSet PathSet::of(std::size_t universe, std::initializer_list<PathIndex> members) {
  return of(universe, std::span<const PathIndex>(members.begin(), members.size()));
}

PathSet PathSet::of(std::size_t universe, std::span<const PathIndex> members) {
  PathSet s(universe);
  for (PathIndex k : members) s.insert(k);
  return s;
}

PathSet PathSet::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > 64) throw Error(ErrorCode::InvalidInput, "from_mask needs universe <= 64");
  PathSet s(universe);
  if (universe == 0) return s;
  if (universe < 64) mask &= (std::uint64_t{1} << universe) - 1;
  s.words_[0] = mask;
  return s;
}

std::size_t PathSet::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool PathSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool PathSet::contains(PathIndex k) const noexcept {
  if (k >= universe_) return false;
  return (words_[k / 64] >> (k % 64)) & 1U;
}

void PathSet::insert(PathIndex k) {
  check_index(universe_, k);
  words_[k / 64] |= std::uint64_t{1} << (k % 64);
}

void PathSet::erase(PathIndex k) {
  check_index(universe_, k);
  words_[k / 64] &= ~(std::uint64_t{1} << (k % 64));
}

bool PathSet::is_subset_of(const PathSet& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t o = w < other.words_.size() ? other.words_[w] : 0;
    if ((words_[w] & ~o) != 0) return false;
  }
  return true;
}

bool PathSet::intersects(const PathSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

PathSet PathSet::operator&(const PathSet& other) const {
  PathSet r(universe_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    r.words_[w] = words_[w] & (w < other.words_.size() ? other.words_[w] : 0);
  }
  return r;
}

PathSet PathSet::operator|(const PathSet& other) const {
  PathSet r(std::max(universe_, other.universe_));
  for (std::size_t w = 0; w < r.words_.size(); ++w) {
    const std::uint64_t a = w < words_.size() ? words_[w] : 0;
    const std::uint64_t b = w < other.words_.size() ? other.words_[w] : 0;
    r.words_[w] = a | b;
  }
  return r;
}

PathSet PathSet::operator-(const PathSet& other) const {
  PathSet r(universe_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    r.words_[w] = words_[w] & ~(w < other.words_.size() ? other.words_[w] : 0);
  }
  return r;
}

std::vector<PathIndex> PathSet::members() const {
  std::vector<PathIndex> out;
  out.reserve(size());
  for_each([&](PathIndex k) { out.push_back(k); });
  return out;
}

std::size_t PathSet::hash() const noexcept {
  std::size_t h = std::hash<std::size_t>{}(universe_);
  for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string PathSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each([&](PathIndex k) {
    if (!first) os << ',';
    os << k + 1;
    first = false;
  });
  os << '}';
  return os.str();
}

bool cardinality_less(const PathSet& a, const PathSet& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na != nb) return na < nb;
  const auto ma = a.members();
  const auto mb = b.members();
  return ma < mb;
}

}  // namespace ugs
