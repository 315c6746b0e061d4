#ifndef SPIDER_SECTOR_HPP
#define SPIDER_SECTOR_HPP

#include "spider/spider_config.hpp"

#include <functional>
#include <vector>

namespace spider {

/// Reduces planar-sector occupation to leg weights: given a nondecreasing
/// angle distribution function on [0, 2pi] (cdf(0)=0, cdf(2pi)=1) and sector
/// boundaries 0 = theta_0 < ... < theta_R = 2pi, the weight of sector i is
/// cdf(theta_i) - cdf(theta_{i-1}). A zero-probability sector is rejected.
/// Weights are rationalized by continued fractions and the last sector is
/// closed so the weights sum to 1 exactly.
SpiderConfig sector_weights(const std::function<double(double)>& angle_cdf,
                            const std::vector<double>& boundaries);

}  // namespace spider

#endif
