#include "latmcts/target.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace latmcts {

TargetDistribution TargetDistribution::delta(Position pos, int side) {
  TargetDistribution d;
  d.kind = Kind::Delta;
  d.side = side;
  d.delta_pos = pos;
  return d;
}

TargetDistribution TargetDistribution::gaussian(double sigma, int side) {
  return gaussian(side / 2.0, side / 2.0, sigma, side);
}

TargetDistribution TargetDistribution::gaussian(double mean_x, double mean_y, double sigma, int side) {
  TargetDistribution d;
  d.kind = Kind::Gaussian;
  d.side = side;
  d.mean_x = mean_x;
  d.mean_y = mean_y;
  d.sigma = sigma;
  return d;
}

TargetDistribution TargetDistribution::uniform(int side) {
  TargetDistribution d;
  d.kind = Kind::Uniform;
  d.side = side;
  return d;
}

void TargetDistribution::validate() const {
  if (side < 2) throw std::invalid_argument("target distribution needs N >= 2");
  switch (kind) {
    case Kind::Delta:
      if (delta_pos.x < 1 || delta_pos.x > side || delta_pos.y < 1 || delta_pos.y > side)
        throw std::invalid_argument("delta target must lie in [1,N]^2");
      break;
    case Kind::Gaussian:
      if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("target.sigma must be finite and >= 0");
      break;
    case Kind::Uniform:
      break;
  }
}

double TargetDistribution::sigma_label() const {
  switch (kind) {
    case Kind::Delta: return 0.0;
    case Kind::Gaussian: return sigma;
    case Kind::Uniform: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

const char* TargetDistribution::kind_name() const {
  switch (kind) {
    case Kind::Delta: return "delta";
    case Kind::Gaussian: return "gaussian";
    case Kind::Uniform: return "uniform";
  }
  return "?";
}

Position sample_target(const TargetDistribution& dist, Rng& rng) {
  switch (dist.kind) {
    case TargetDistribution::Kind::Delta:
      return dist.delta_pos;
    case TargetDistribution::Kind::Gaussian: {
      // sigma 0 degenerates to a point mass at the rounded mean and must
      // consume no draws, so it is stream-identical to the delta case
      if (dist.sigma == 0.0) {
        return {wrap_coord(static_cast<int>(round_half_up(dist.mean_x)), dist.side),
                wrap_coord(static_cast<int>(round_half_up(dist.mean_y)), dist.side)};
      }
      auto [gx, gy] = rng.normal_pair(0.0, 1.0);
      const long long rx = round_half_up(dist.mean_x + dist.sigma * gx);
      const long long ry = round_half_up(dist.mean_y + dist.sigma * gy);
      const int side = dist.side;
      auto wrap_ll = [side](long long v) {
        long long m = (v - 1) % side;
        if (m < 0) m += side;
        return static_cast<int>(m) + 1;
      };
      return {wrap_ll(rx), wrap_ll(ry)};
    }
    case TargetDistribution::Kind::Uniform: {
      const int x = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(dist.side)));
      const int y = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(dist.side)));
      return {x, y};
    }
  }
  return dist.delta_pos;
}

Grid<long> histogram(const TargetDistribution& dist, long draws, Rng& rng) {
  if (draws < 1) throw std::invalid_argument("histogram draws must be >= 1");
  Grid<long> counts(dist.side, 0L);
  for (long i = 0; i < draws; ++i) {
    ++counts.at(sample_target(dist, rng));
  }
  return counts;
}

}  // namespace latmcts
