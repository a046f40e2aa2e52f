#ifndef PROXYSHAP_COALITION_HPP
#define PROXYSHAP_COALITION_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proxyshap {

/// A subset of the players {0, ..., n-1}, stored as a dynamic bitset of
/// 64-bit words. Bits at positions >= n are always clear, so word-wise
/// comparison and hashing are well defined.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(std::size_t n);

  static Coalition full(std::size_t n);
  static Coalition from_members(std::size_t n, std::span<const std::size_t> members);
  static Coalition from_members(std::size_t n, std::initializer_list<std::size_t> members);
  /// Low n bits of `mask`; requires n <= 64.
  static Coalition from_mask(std::size_t n, std::uint64_t mask);
  /// Parses an n-character 0/1 string, character i = membership of player i.
  static Coalition parse(std::string_view bits);

  std::size_t width() const { return n_; }
  std::size_t size() const;
  bool empty() const;

  bool contains(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  Coalition& insert(std::size_t i);
  Coalition& erase(std::size_t i);

  bool is_subset_of(const Coalition& other) const;
  bool intersects(const Coalition& other) const;
  std::size_t intersection_size(const Coalition& other) const;

  Coalition& operator|=(const Coalition& other);
  Coalition& operator&=(const Coalition& other);
  /// Set difference.
  Coalition& operator-=(const Coalition& other);
  Coalition complement() const;

  std::vector<std::size_t> members() const;
  std::uint64_t to_mask() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::size_t hash() const;

  friend bool operator==(const Coalition& a, const Coalition& b) = default;
  /// Orders by width, then by cardinality, then by the 0/1 string.
  friend std::strong_ordering operator<=>(const Coalition& a, const Coalition& b);

 private:
  void require_same_width(const Coalition& other) const;
  void clear_tail();

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

inline Coalition operator|(Coalition a, const Coalition& b) { return a |= b; }
inline Coalition operator&(Coalition a, const Coalition& b) { return a &= b; }
inline Coalition operator-(Coalition a, const Coalition& b) { return a -= b; }

struct CoalitionHash {
  std::size_t operator()(const Coalition& c) const { return c.hash(); }
};

/// All subsets of {0..n-1} with min_order <= |S| <= max_order, ordered by
/// size then lexicographically by member list.
std::vector<Coalition> subsets_up_to_order(std::size_t n, std::size_t max_order,
                                           std::size_t min_order = 1);

}  // namespace proxyshap

#endif  // PROXYSHAP_COALITION_HPP
