#include "proxyshap/interaction_vector.hpp"

#include <cstdio>

#include "proxyshap/errors.hpp"

namespace proxyshap {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::proxy: return "proxy";
    case Provenance::proxy_msr: return "proxy+msr";
    case Provenance::msr_only: return "msr-only";
  }
  return "?";
}

InteractionVector::InteractionVector(IndexSpec index, std::size_t n) : index_(index), n_(n) {}

void InteractionVector::add(const Coalition& subset, double value, Provenance provenance) {
  if (subset.width() != n_) throw PreconditionError("interaction key width mismatch");
  validate_target_order(index_, n_, subset.size());
  auto [it, inserted] = lookup_.emplace(subset, entries_.size());
  if (!inserted) throw PreconditionError("duplicate interaction key " + subset.to_string());
  entries_.push_back({subset, value, provenance});
}

std::optional<double> InteractionVector::find(const Coalition& subset) const {
  auto it = lookup_.find(subset);
  if (it == lookup_.end()) return std::nullopt;
  return entries_[it->second].value;
}

double InteractionVector::at(const Coalition& subset) const {
  auto v = find(subset);
  if (!v) throw PreconditionError("no interaction stored for " + subset.to_string());
  return *v;
}

Eigen::VectorXd InteractionVector::values() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries_[i].value;
  return v;
}

std::vector<Coalition> InteractionVector::keys() const {
  std::vector<Coalition> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.subset);
  return out;
}

std::string InteractionVector::to_csv(bool with_provenance, int precision) const {
  std::string out = with_provenance ? "subset,value,provenance\n" : "subset,value\n";
  char buf[64];
  for (const auto& e : entries_) {
    // Normalise negative zero so equal values print identically.
    const double v = e.value == 0.0 ? 0.0 : e.value;
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    out += e.subset.to_string();
    out += ',';
    out += buf;
    if (with_provenance) {
      out += ',';
      out += to_string(e.provenance);
    }
    out += '\n';
  }
  return out;
}

}  // namespace proxyshap
