#include "proxyshap/coalition.hpp"

#include <bit>

#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"

namespace proxyshap {

namespace {

constexpr std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

}  // namespace

Coalition::Coalition(std::size_t n) : n_(n), words_(word_count(n), 0) {}

Coalition Coalition::full(std::size_t n) {
  Coalition c(n);
  for (auto& w : c.words_) w = ~std::uint64_t{0};
  c.clear_tail();
  return c;
}

Coalition Coalition::from_members(std::size_t n, std::span<const std::size_t> members) {
  Coalition c(n);
  for (std::size_t i : members) c.insert(i);
  return c;
}

Coalition Coalition::from_members(std::size_t n, std::initializer_list<std::size_t> members) {
  return from_members(n, std::span<const std::size_t>(members.begin(), members.size()));
}

Coalition Coalition::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw PreconditionError("Coalition::from_mask requires n <= 64");
  Coalition c(n);
  if (n > 0) {
    c.words_[0] = mask;
    c.clear_tail();
  }
  return c;
}

Coalition Coalition::parse(std::string_view bits) {
  Coalition c(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      c.insert(i);
    } else if (bits[i] != '0') {
      throw ParseError("coalition string may only contain '0' and '1': '" +
                       std::string(bits) + "'");
    }
  }
  return c;
}

std::size_t Coalition::size() const {
  std::size_t count = 0;
  for (auto w : words_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

bool Coalition::empty() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

Coalition& Coalition::insert(std::size_t i) {
  if (i >= n_) throw PreconditionError("player index out of range");
  words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  return *this;
}

Coalition& Coalition::erase(std::size_t i) {
  if (i >= n_) throw PreconditionError("player index out of range");
  words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  return *this;
}

void Coalition::require_same_width(const Coalition& other) const {
  if (other.n_ != n_) throw PreconditionError("coalition width mismatch");
}

void Coalition::clear_tail() {
  if (n_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
}

bool Coalition::is_subset_of(const Coalition& other) const {
  require_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & ~other.words_[k]) return false;
  return true;
}

bool Coalition::intersects(const Coalition& other) const {
  require_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & other.words_[k]) return true;
  return false;
}

std::size_t Coalition::intersection_size(const Coalition& other) const {
  require_same_width(other);
  std::size_t count = 0;
  for (std::size_t k = 0; k < words_.size(); ++k)
    count += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
  return count;
}

Coalition& Coalition::operator|=(const Coalition& other) {
  require_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  return *this;
}

Coalition& Coalition::operator&=(const Coalition& other) {
  require_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
  return *this;
}

Coalition& Coalition::operator-=(const Coalition& other) {
  require_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
  return *this;
}

Coalition Coalition::complement() const {
  Coalition c(*this);
  for (auto& w : c.words_) w = ~w;
  c.clear_tail();
  return c;
}

std::vector<std::size_t> Coalition::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w) {
      out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t Coalition::to_mask() const {
  if (n_ > 64) throw PreconditionError("Coalition::to_mask requires n <= 64");
  return words_.empty() ? 0 : words_[0];
}

std::string Coalition::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (contains(i)) s[i] = '1';
  return s;
}

std::size_t Coalition::hash() const {
  // splitmix-style mixing of each word
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
  for (auto w : words_) {
    std::uint64_t z = w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h ^= z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const Coalition& a, const Coalition& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t k = 0; k < a.words_.size(); ++k) {
    const std::uint64_t diff = a.words_[k] ^ b.words_[k];
    if (diff == 0) continue;
    const std::uint64_t lowest = diff & (~diff + 1);
    return (a.words_[k] & lowest) ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::vector<Coalition> subsets_up_to_order(std::size_t n, std::size_t max_order,
                                           std::size_t min_order) {
  if (max_order > n) max_order = n;
  double total = 0.0;
  for (std::size_t k = min_order; k <= max_order; ++k) total += binomial(n, k);
  if (total > 5e7) throw CapacityError("too many target subsets requested");

  std::vector<Coalition> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::size_t k = min_order; k <= max_order; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      out.push_back(Coalition::from_members(n, idx));
      if (k == 0) break;
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace proxyshap
