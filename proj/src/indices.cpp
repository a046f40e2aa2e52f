#include "proxyshap/indices.hpp"

#include <cmath>
#include <sstream>

#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"

namespace proxyshap {

std::string_view to_string(IndexFamily family) {
  switch (family) {
    case IndexFamily::SV: return "sv";
    case IndexFamily::SII: return "sii";
    case IndexFamily::BV: return "bv";
    case IndexFamily::BII: return "bii";
    case IndexFamily::CHII: return "chii";
    case IndexFamily::Moebius: return "moebius";
    case IndexFamily::FSII: return "fsii";
    case IndexFamily::FBII: return "fbii";
  }
  return "?";
}

IndexFamily parse_family(std::string_view name) {
  for (auto f : {IndexFamily::SV, IndexFamily::SII, IndexFamily::BV, IndexFamily::BII,
                 IndexFamily::CHII, IndexFamily::Moebius, IndexFamily::FSII, IndexFamily::FBII}) {
    if (to_string(f) == name) return f;
  }
  throw PreconditionError("unknown index '" + std::string(name) + "'");
}

void IndexSpec::validate() const {
  if (!(banzhaf_w > 0.0 && banzhaf_w < 1.0))
    throw PreconditionError("banzhaf weight must lie in (0, 1)");
  if (max_order == 0) throw PreconditionError("interaction order must be >= 1");
}

std::string IndexSpec::describe() const {
  std::ostringstream os;
  os << to_string(family) << "(k=" << max_order;
  if (is_banzhaf_family(family)) os << ",w=" << banzhaf_w;
  os << ")";
  return os.str();
}

bool is_value_family(IndexFamily f) { return f == IndexFamily::SV || f == IndexFamily::BV; }
bool is_faithful_family(IndexFamily f) { return f == IndexFamily::FSII || f == IndexFamily::FBII; }
bool is_shapley_family(IndexFamily f) { return f == IndexFamily::SV || f == IndexFamily::SII; }
bool is_banzhaf_family(IndexFamily f) { return f == IndexFamily::BV || f == IndexFamily::BII; }

bool has_p_weights(const IndexSpec& index) {
  return index.family != IndexFamily::CHII && !is_faithful_family(index.family);
}

void validate_target_order(const IndexSpec& index, std::size_t n, std::size_t s) {
  if (s == 0) throw PreconditionError("interaction targets must be non-empty");
  if (s > n) throw PreconditionError("interaction target larger than the player set");
  if (is_value_family(index.family) && s != 1)
    throw PreconditionError(std::string(to_string(index.family)) +
                            " is a value: targets must be singletons");
  if (is_faithful_family(index.family) && s > index.max_order)
    throw PreconditionError("faithful index of order k only defines targets with |S| <= k");
}

double log_p_weight(const IndexSpec& index, std::size_t n, std::size_t s, std::size_t t) {
  if (s < 1 || s > n || t > n - s) throw PreconditionError("p_weight: require 1 <= s <= n, t <= n - s");
  if (is_shapley_family(index.family)) {
    return -std::log(static_cast<double>(n - s + 1)) - log_binomial(n - s, t);
  }
  if (is_banzhaf_family(index.family)) {
    const double w = index.banzhaf_w;
    return static_cast<double>(t) * std::log(w) + static_cast<double>(n - s - t) * std::log1p(-w);
  }
  if (index.family == IndexFamily::Moebius) return t == 0 ? 0.0 : kNegInf;
  throw PreconditionError("coalition weights p_t^s are not defined for " +
                          std::string(to_string(index.family)));
}

double p_weight(const IndexSpec& index, std::size_t n, std::size_t s, std::size_t t) {
  return std::exp(log_p_weight(index, n, s, t));
}

namespace {

double faithful_tail_weight(const IndexSpec& index, std::size_t s, std::size_t t) {
  const std::size_t k = index.max_order;
  const double sign = ((k - s) % 2 == 0) ? 1.0 : -1.0;
  if (index.family == IndexFamily::FBII) {
    // (-1)^{k-s} (1/2)^{t-s} C(t-s-1, k-s)
    return sign * std::exp(-static_cast<double>(t - s) * std::log(2.0) +
                           log_binomial(t - s - 1, k - s));
  }
  // FSII: (-1)^{k-s} s/(k+s) C(k,s) C(t-1,k) / C(t+k-1,k+s)
  const double log_mag = std::log(static_cast<double>(s)) - std::log(static_cast<double>(k + s)) +
                         log_binomial(k, s) + log_binomial(t - 1, k) -
                         log_binomial(t + k - 1, k + s);
  return sign * std::exp(log_mag);
}

}  // namespace

double q_weight(const IndexSpec& index, std::size_t n, std::size_t s, std::size_t t) {
  if (t < s || t > n) throw PreconditionError("q_weight: require s <= t <= n");
  switch (index.family) {
    case IndexFamily::SV:
    case IndexFamily::SII:
      return 1.0 / static_cast<double>(t - s + 1);
    case IndexFamily::BV:
    case IndexFamily::BII:
      return std::pow(index.banzhaf_w, static_cast<double>(t - s));
    case IndexFamily::Moebius:
      return t == s ? 1.0 : 0.0;
    case IndexFamily::CHII:
      if (t == 0) return 1.0;
      return static_cast<double>(s) / static_cast<double>(t);
    case IndexFamily::FSII:
    case IndexFamily::FBII: {
      const std::size_t k = index.max_order;
      if (s > k) throw PreconditionError("faithful index: q_weight requires s <= k");
      if (t == s) return 1.0;
      if (t <= k) return 0.0;
      return faithful_tail_weight(index, s, t);
    }
  }
  return 0.0;
}

}  // namespace proxyshap
