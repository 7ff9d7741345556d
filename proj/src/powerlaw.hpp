#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trc {

struct PowerLawFit {
  double alpha = 0.0;      // exponent estimate, > 1
  uint32_t x_min = 1;      // lower cutoff
  uint32_t n_tail = 0;     // sample count >= x_min
  double ks_stat = 0.0;    // KS statistic of the chosen fit
  double p_value = -1.0;   // goodness of fit; negative until computed
  uint32_t bootstraps = 0;
};

// Hurwitz zeta: sum_{k=q..inf} k^-alpha, alpha > 1, q >= 1.
double hurwitz_zeta(double alpha, double q);

// Continuous-data MLE with a fixed cutoff: 1 + n / sum ln(x / x_min).
double continuous_mle_alpha(const std::vector<double>& values, double x_min);

// Discrete power-law MLE with KS-minimizing cutoff selection. For each
// candidate x_min: alpha = 1 + n / sum ln(x_i / (x_min - 0.5)) over the tail,
// KS between the tail ECDF and the fitted discrete law; the x_min minimizing
// the KS statistic wins. Candidates keep at least max(10, 5% of the sample)
// points in the tail: an unrestricted scan can always retreat into a tail too
// short to distinguish distributions, which makes the estimate unstable and
// the goodness-of-fit test powerless. Zeros are ignored.
PowerLawFit fit_power_law(const std::vector<uint32_t>& values);

// Semi-parametric bootstrap: each replicate draws tail points from the fitted
// law and body points from the empirical sub-x_min values, refits from
// scratch, and p = fraction of replicates whose KS reaches the empirical one.
// H0 is "the data follows a power-tailed distribution"; large p = consistent.
double gof_pvalue(const std::vector<uint32_t>& values, const PowerLawFit& fit,
                  uint32_t bootstraps, uint64_t seed, int workers);

// Inverse-CDF sampler for the discrete power law on {x_min, x_min+1, ...}.
class DiscretePowerLawSampler {
 public:
  DiscretePowerLawSampler(double alpha, uint32_t x_min);
  uint32_t operator()(double u01) const;  // u01 in [0, 1)

 private:
  double alpha_;
  uint32_t x_min_;
  double total_;               // zeta(alpha, x_min)
  std::vector<double> cdf_;    // cdf_[i] = P(X <= x_min + i), table portion
};

void save_fit_json(const PowerLawFit& fit, const std::string& which, const std::string& path);

}  // namespace trc
