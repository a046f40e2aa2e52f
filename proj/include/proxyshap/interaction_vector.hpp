#ifndef PROXYSHAP_INTERACTION_VECTOR_HPP
#define PROXYSHAP_INTERACTION_VECTOR_HPP

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "proxyshap/coalition.hpp"
#include "proxyshap/indices.hpp"

namespace proxyshap {

enum class Provenance { exact, proxy, proxy_msr, msr_only };

std::string_view to_string(Provenance p);

struct InteractionEntry {
  Coalition subset;
  double value = 0.0;
  Provenance provenance = Provenance::exact;
};

/// Index estimates keyed by target subset, kept in insertion order.
class InteractionVector {
 public:
  InteractionVector(IndexSpec index, std::size_t n);

  /// Throws PreconditionError on width mismatch, inadmissible order, or a
  /// duplicate key.
  void add(const Coalition& subset, double value, Provenance provenance);

  const IndexSpec& index() const { return index_; }
  std::size_t players() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<InteractionEntry>& entries() const { return entries_; }

  std::optional<double> find(const Coalition& subset) const;
  /// Throws PreconditionError when absent.
  double at(const Coalition& subset) const;

  /// Values in entry order.
  Eigen::VectorXd values() const;
  std::vector<Coalition> keys() const;

  /// `subset,value` CSV with subsets as 0/1 strings.
  std::string to_csv(bool with_provenance = false, int precision = 12) const;

 private:
  IndexSpec index_;
  std::size_t n_;
  std::vector<InteractionEntry> entries_;
  std::unordered_map<Coalition, std::size_t, CoalitionHash> lookup_;
};

}  // namespace proxyshap

#endif  // PROXYSHAP_INTERACTION_VECTOR_HPP
