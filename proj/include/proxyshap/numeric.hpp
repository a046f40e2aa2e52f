#ifndef PROXYSHAP_NUMERIC_HPP
#define PROXYSHAP_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace proxyshap {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

double log_factorial(std::size_t k);
/// log C(n, k); -inf when k > n.
double log_binomial(std::size_t n, std::size_t k);
/// C(n, k) as a double, via one exponentiation of the log-gamma form.
double binomial(std::size_t n, std::size_t k);
/// Euler Beta function B(a, b) for a, b > 0.
double beta_function(double a, double b);
double harmonic_number(std::size_t n);

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

/// SplitMix64 finaliser; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Small deterministic generator (xoshiro256**) with portable helpers.
/// The standard library distributions are implementation defined, which
/// would break byte-identical replays across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform integer in [0, bound).
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::uint64_t state_[4];
};

}  // namespace proxyshap

#endif  // PROXYSHAP_NUMERIC_HPP
