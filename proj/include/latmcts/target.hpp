#pragma once

#include "latmcts/lattice.hpp"
#include "latmcts/rng.hpp"

namespace latmcts {

// Prior over target placement: point mass, wrapped-rounded Gaussian, or
// uniform over all cells. Also used for per-loop practice targets.
struct TargetDistribution {
  enum class Kind { Delta, Gaussian, Uniform };

  Kind kind = Kind::Uniform;
  int side = 2;            // owning grid's N
  Position delta_pos{1, 1};
  double mean_x = 0.0;     // Gaussian mean; factory defaults to N/2
  double mean_y = 0.0;
  double sigma = 0.0;

  static TargetDistribution delta(Position pos, int side);
  static TargetDistribution gaussian(double sigma, int side);  // mean (N/2, N/2)
  static TargetDistribution gaussian(double mean_x, double mean_y, double sigma, int side);
  static TargetDistribution uniform(int side);

  // throws std::invalid_argument on violation
  void validate() const;

  // 0 for delta, sigma for gaussian, +inf for uniform; used in reports
  double sigma_label() const;
  const char* kind_name() const;
};

// nearest integer, ties at .5 round up
inline long long round_half_up(double v) { return static_cast<long long>(std::floor(v + 0.5)); }

Position sample_target(const TargetDistribution& dist, Rng& rng);

// N x N count grid over `draws` samples
Grid<long> histogram(const TargetDistribution& dist, long draws, Rng& rng);

}  // namespace latmcts
