#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gcpvcr/error.hpp"

namespace gcpvcr {

// A list of points in R^d stored contiguously, one point per stride.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) { require(dim >= 1, "point dimension must be >= 1"); }
  PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    require(dim >= 1, "point dimension must be >= 1");
    require(coords_.size() % dim == 0, "coordinate count is not a multiple of the dimension");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<double> operator[](std::size_t i) { return {coords_.data() + i * dim_, dim_}; }

  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  void push_back(std::span<const double> p) {
    require(p.size() == dim_, "point dimension mismatch");
    coords_.insert(coords_.end(), p.begin(), p.end());
  }
  void push_back(std::initializer_list<double> p) { push_back(std::span<const double>(p.begin(), p.size())); }

  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

using Metric = std::function<double(std::span<const double>, std::span<const double>)>;

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

inline const Metric& euclidean_metric() {
  static const Metric m = [](std::span<const double> a, std::span<const double> b) { return euclidean(a, b); };
  return m;
}

}  // namespace gcpvcr
