#ifndef PROXYSHAP_INDICES_HPP
#define PROXYSHAP_INDICES_HPP

#include <cstddef>
#include <string>
#include <string_view>

namespace proxyshap {

enum class IndexFamily { SV, SII, BV, BII, CHII, Moebius, FSII, FBII };

std::string_view to_string(IndexFamily family);
/// Accepts the lower-case CLI spellings: sv, sii, bv, bii, chii, moebius, fsii, fbii.
IndexFamily parse_family(std::string_view name);

/// Which cardinal-probabilistic interaction index to compute.
///
/// `max_order` is the faithfulness order k for FSII/FBII; for the other
/// families it only bounds the generated target sets. `banzhaf_w` is the
/// Banzhaf weight parameter and is read by BV/BII only (FBII is defined for
/// the classical w = 1/2).
struct IndexSpec {
  IndexFamily family = IndexFamily::SII;
  double banzhaf_w = 0.5;
  std::size_t max_order = 1;

  /// Throws PreconditionError on w outside (0,1) or k = 0.
  void validate() const;
  std::string describe() const;
};

bool is_value_family(IndexFamily family);     // SV, BV: singletons only
bool is_faithful_family(IndexFamily family);  // FSII, FBII
bool is_shapley_family(IndexFamily family);   // SV, SII
bool is_banzhaf_family(IndexFamily family);   // BV, BII
/// Whether coalition weights p_t^s(n) are defined (everything but CHII and
/// the faithful indices).
bool has_p_weights(const IndexSpec& index);

/// Throws PreconditionError when a target of order s is not admissible for
/// the index (s = 0, s > n, s != 1 for values, s > k for faithful indices).
void validate_target_order(const IndexSpec& index, std::size_t n, std::size_t s);

/// Coalition weight p_t^s(n); requires 1 <= s <= n and 0 <= t <= n - s.
double p_weight(const IndexSpec& index, std::size_t n, std::size_t s, std::size_t t);
/// log p_t^s(n); -inf where the weight vanishes.
double log_p_weight(const IndexSpec& index, std::size_t n, std::size_t s, std::size_t t);

/// Moebius weight q_t^s(n); requires s <= t <= n.
double q_weight(const IndexSpec& index, std::size_t n, std::size_t s, std::size_t t);

}  // namespace proxyshap

#endif  // PROXYSHAP_INDICES_HPP
