#include "morpho/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace morpho {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1), data_(n * width_, 0.0) {}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const { return in_band(i, j) ? ref(i, j) : 0.0; }

void BandedMatrix::add(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_ || !in_band(i, j)) throw std::out_of_range("BandedMatrix::add outside the band");
  ref(i, j) += value;
}

void BandedMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_ || !in_band(i, j)) throw std::out_of_range("BandedMatrix::set outside the band");
  ref(i, j) = value;
}

void BandedMatrix::zero_row(std::size_t i) {
  std::fill_n(data_.begin() + static_cast<std::ptrdiff_t>(i * width_), width_, 0.0);
}

void BandedMatrix::scale_row(std::size_t i, double factor) {
  for (std::size_t k = 0; k < width_; ++k) data_[i * width_ + k] *= factor;
}

void BandedMatrix::scale_column(std::size_t j, double factor) {
  const std::size_t lo = j > ku_ ? j - ku_ : 0;
  const std::size_t hi = std::min(n_ - 1, j + kl_);
  for (std::size_t i = lo; i <= hi; ++i) ref(i, j) *= factor;
}

double BandedMatrix::row_max_abs(std::size_t i) const {
  double m = 0.0;
  for (std::size_t k = 0; k < width_; ++k) m = std::max(m, std::abs(data_[i * width_ + k]));
  return m;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > kl_ ? i - kl_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + ku_);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += ref(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

void BandedMatrix::solve_in_place(std::span<double> b) {
  if (b.size() != n_) throw std::invalid_argument("BandedMatrix::solve_in_place: size mismatch");
  const std::size_t reach = kl_ + ku_;  // upper bandwidth after pivoting
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    const std::size_t last_col = std::min(n_ - 1, k + reach);
    std::size_t piv = k;
    double best = std::abs(ref(k, k));
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      if (const double a = std::abs(ref(i, k)); a > best) {
        best = a;
        piv = i;
      }
    }
    if (best == 0.0) throw std::runtime_error("BandedMatrix: singular matrix (zero pivot)");
    if (piv != k) {
      for (std::size_t j = k; j <= last_col; ++j) std::swap(ref(k, j), ref(piv, j));
      std::swap(b[k], b[piv]);
    }
    const double inv = 1.0 / ref(k, k);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double l = ref(i, k) * inv;
      if (l == 0.0) continue;
      ref(i, k) = 0.0;
      for (std::size_t j = k + 1; j <= last_col; ++j) ref(i, j) -= l * ref(k, j);
      b[i] -= l * b[k];
    }
  }
  for (std::size_t k = n_; k-- > 0;) {
    const std::size_t last_col = std::min(n_ - 1, k + reach);
    double acc = b[k];
    for (std::size_t j = k + 1; j <= last_col; ++j) acc -= ref(k, j) * b[j];
    b[k] = acc / ref(k, k);
  }
}

}  // namespace morpho
