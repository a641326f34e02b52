#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ugs {

using PathIndex = std::size_t;

/// A subset of the evader path indices {0..n-1}; the pursuer's information
/// state. Backed by 64-bit words so the universe is not capped at 64 paths.
class PathSet {
 public:
  PathSet() = default;
  explicit PathSet(std::size_t universe);

  static PathSet all(std::size_t universe);
  static PathSet of(std::size_t universe, std::initializer_list<PathIndex> members);
  static PathSet of(std::size_t universe, std::span<const PathIndex> members);
  /// Low `universe` bits of `mask`; universe must be <= 64.
  static PathSet from_mask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept;
  bool empty() const noexcept;

  bool contains(PathIndex k) const noexcept;
  void insert(PathIndex k);
  void erase(PathIndex k);

  bool is_subset_of(const PathSet& other) const noexcept;
  bool intersects(const PathSet& other) const noexcept;

  PathSet operator&(const PathSet& other) const;
  PathSet operator|(const PathSet& other) const;
  /// Set difference.
  PathSet operator-(const PathSet& other) const;

  std::vector<PathIndex> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<PathIndex>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  /// Lowest word; exact representation when universe <= 64.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::size_t hash() const noexcept;

  /// "{1,2,3}" with 1-based path numbers.
  std::string to_string() const;

  bool operator==(const PathSet& other) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

using UncertaintySet = PathSet;

/// Cardinality first, then lexicographic on sorted members: {1} < {2} <
/// {1,2} < {1,3} < {2,3}.
bool cardinality_less(const PathSet& a, const PathSet& b);

struct PathSetHash {
  std::size_t operator()(const PathSet& s) const noexcept { return s.hash(); }
};

}  // namespace ugs
