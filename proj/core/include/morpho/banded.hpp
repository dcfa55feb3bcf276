#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace morpho {

/// Square band matrix with `kl` sub- and `ku` super-diagonals. Storage keeps
/// `kl` extra super-diagonals for the fill-in of LU with row pivoting.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const { return n_; }
  std::size_t lower() const { return kl_; }
  std::size_t upper() const { return ku_; }

  bool in_band(std::size_t i, std::size_t j) const { return j + kl_ >= i && j <= i + ku_; }
  double operator()(std::size_t i, std::size_t j) const;
  /// Adds to an entry inside the band; out-of-band access throws.
  void add(std::size_t i, std::size_t j, double value);
  void set(std::size_t i, std::size_t j, double value);
  void zero_row(std::size_t i);
  void scale_row(std::size_t i, double factor);
  void scale_column(std::size_t j, double factor);
  double row_max_abs(std::size_t i) const;

  std::vector<double> multiply(std::span<const double> x) const;

  /// Solves A x = b in place by Gaussian elimination with partial pivoting.
  /// Destroys the matrix. Throws std::runtime_error on a zero pivot.
  void solve_in_place(std::span<double> b);

 private:
  double& ref(std::size_t i, std::size_t j) { return data_[i * width_ + (j + kl_ - i)]; }
  double ref(std::size_t i, std::size_t j) const { return data_[i * width_ + (j + kl_ - i)]; }

  std::size_t n_ = 0, kl_ = 0, ku_ = 0, width_ = 0;
  std::vector<double> data_;
};

}  // namespace morpho
