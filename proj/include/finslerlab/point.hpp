#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "finslerlab/error.hpp"

namespace finslerlab {

inline constexpr double kDefaultMinFiberNorm = 0.1;

/// A point (x, y) of the slit tangent bundle of R^n.
class TangentPoint
{
public:
  TangentPoint(std::vector<double> base, std::vector<double> fiber)
      : base_(std::move(base)), fiber_(std::move(fiber))
  {
    if (base_.size() != fiber_.size()) {
      throw Error(ErrorKind::DimensionMismatch, "base and fiber sizes differ");
    }
    if (base_.size() < 2) { throw Error(ErrorKind::BadConfig, "dimension must be at least 2"); }
    if (fiber_norm() == 0.0) { throw Error(ErrorKind::ZeroSection, "fiber vector is zero"); }
  }

  int dim() const { return static_cast<int>(base_.size()); }
  const std::vector<double> & base() const { return base_; }
  const std::vector<double> & fiber() const { return fiber_; }

  double fiber_norm() const
  {
    double s = 0.0;
    for (double v : fiber_) { s += v * v; }
    return std::sqrt(s);
  }

  /// Coordinates (x^1..x^n, y^1..y^n).
  std::vector<double> coords() const
  {
    std::vector<double> z(base_);
    z.insert(z.end(), fiber_.begin(), fiber_.end());
    return z;
  }

  bool operator==(const TangentPoint &) const = default;

private:
  std::vector<double> base_;
  std::vector<double> fiber_;
};

struct SampleBox
{
  double base_lo{-1.0};
  double base_hi{1.0};
  double fiber_lo{-2.0};
  double fiber_hi{2.0};

  bool operator==(const SampleBox &) const = default;
};

struct SampleGrid
{
  std::vector<TangentPoint> points;
  std::uint64_t seed{0};
  SampleBox box{};
  double min_fiber_norm{kDefaultMinFiberNorm};

  int dim() const { return points.empty() ? 0 : points.front().dim(); }
  bool operator==(const SampleGrid &) const = default;
};

namespace detail {
// 53 random bits mapped to [0,1); independent of the standard library's
// distribution implementation.
inline double unit_double(std::mt19937_64 & rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
}  // namespace detail

/**
 * Deterministic uniform sample of the box, rejecting fiber vectors shorter
 * than min_fiber_norm.
 */
inline SampleGrid sample_slit_points(
  int n, int count, std::uint64_t seed, SampleBox box = {}, double min_fiber_norm = kDefaultMinFiberNorm)
{
  if (n < 2) { throw Error(ErrorKind::BadConfig, "dimension must be at least 2"); }
  if (count < 1) { throw Error(ErrorKind::BadConfig, "sample count must be positive"); }
  if (!(min_fiber_norm > 0.0)) { throw Error(ErrorKind::BadConfig, "min_fiber_norm must be positive"); }
  if (!(box.base_lo < box.base_hi) || !(box.fiber_lo < box.fiber_hi)) {
    throw Error(ErrorKind::BadConfig, "empty sample box");
  }
  double reach = std::max(std::abs(box.fiber_lo), std::abs(box.fiber_hi));
  if (reach * std::sqrt(static_cast<double>(n)) < min_fiber_norm) {
    throw Error(ErrorKind::BadConfig, "fiber box lies inside the excluded ball");
  }

  std::mt19937_64 rng(seed);
  SampleGrid grid;
  grid.seed           = seed;
  grid.box            = box;
  grid.min_fiber_norm = min_fiber_norm;
  grid.points.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(grid.points.size()) < count) {
    std::vector<double> x(n), y(n);
    for (auto & v : x) { v = box.base_lo + (box.base_hi - box.base_lo) * detail::unit_double(rng); }
    for (auto & v : y) { v = box.fiber_lo + (box.fiber_hi - box.fiber_lo) * detail::unit_double(rng); }
    double norm = 0.0;
    for (double v : y) { norm += v * v; }
    if (std::sqrt(norm) < min_fiber_norm) { continue; }
    grid.points.emplace_back(std::move(x), std::move(y));
  }
  return grid;
}

}  // namespace finslerlab
