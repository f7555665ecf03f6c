#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace orbitmetric {

/// Square matrix of ground distances d(T^i x, T^j y), stored row-major.
/// `precision_bound()` is the quantization error carried by every entry
/// (2^-K for a shift truncated at K symbols, 0 otherwise).
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t n, std::vector<double> entries, double precision_bound = 0.0);

  /// Accepts nested rows (e.g. from a JSON fixture); throws invalid-argument
  /// unless the rows form a square matrix of finite nonnegative values.
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * n_, n_};
  }
  std::span<const double> entries() const noexcept { return entries_; }
  double precision_bound() const noexcept { return precision_bound_; }

  /// Top-left m x m block: the cost matrix of the length-m orbit prefixes.
  CostMatrix leading(std::size_t m) const;
  CostMatrix scaled(double factor) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
  double precision_bound_ = 0.0;
};

}  // namespace orbitmetric
