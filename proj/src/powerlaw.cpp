#include "powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace trc {

namespace {

// exponents beyond this are numerically a point mass at x_min
constexpr double kAlphaCap = 50.0;

struct SortedData {
  std::vector<uint32_t> values;      // ascending, zeros removed
  std::vector<uint32_t> uniq;        // distinct values ascending
  std::vector<double> suffix_ln;     // suffix_ln[i] = sum of ln(values[j]) for j >= i
};

SortedData prepare(const std::vector<uint32_t>& raw) {
  SortedData d;
  d.values.reserve(raw.size());
  for (uint32_t v : raw)
    if (v > 0) d.values.push_back(v);
  std::sort(d.values.begin(), d.values.end());
  d.uniq = d.values;
  d.uniq.erase(std::unique(d.uniq.begin(), d.uniq.end()), d.uniq.end());
  d.suffix_ln.assign(d.values.size() + 1, 0.0);
  for (size_t i = d.values.size(); i-- > 0;)
    d.suffix_ln[i] = d.suffix_ln[i + 1] + std::log(static_cast<double>(d.values[i]));
  return d;
}

PowerLawFit fit_prepared(const SortedData& d) {
  const auto& xs = d.values;
  size_t n = xs.size();
  if (d.uniq.size() < 2) throw std::invalid_argument("power-law fit: all values equal");

  PowerLawFit best;
  double best_ks = std::numeric_limits<double>::infinity();

  // Candidates must keep at least 5% of the sample (and never fewer than 10
  // points) in the tail. An unrestricted scan can always retreat into a tail
  // short enough that any distribution passes, which destroys both the
  // stability of alpha and the power of the goodness-of-fit test.
  size_t tail_floor = std::max<size_t>(10, n / 20);

  for (size_t ui = 0; ui < d.uniq.size(); ++ui) {
    uint32_t xmin = d.uniq[ui];
    size_t lo = static_cast<size_t>(std::lower_bound(xs.begin(), xs.end(), xmin) - xs.begin());
    size_t n_tail = n - lo;
    if (n_tail < tail_floor || d.uniq.size() - ui < 2) continue;

    double denom = d.suffix_ln[lo] - static_cast<double>(n_tail) * std::log(xmin - 0.5);
    if (denom <= 0.0) continue;
    double alpha = 1.0 + static_cast<double>(n_tail) / denom;
    if (alpha > kAlphaCap) alpha = kAlphaCap;

    double total = hurwitz_zeta(alpha, xmin);
    double ks = 0.0;
    size_t seen = 0;
    for (size_t vi = ui; vi < d.uniq.size(); ++vi) {
      uint32_t t = d.uniq[vi];
      size_t hi = static_cast<size_t>(std::upper_bound(xs.begin() + lo, xs.end(), t) - xs.begin());
      seen = hi - lo;
      double ecdf = static_cast<double>(seen) / static_cast<double>(n_tail);
      double model = 1.0 - hurwitz_zeta(alpha, static_cast<double>(t) + 1.0) / total;
      ks = std::max(ks, std::abs(ecdf - model));
    }
    if (ks < best_ks) {
      best_ks = ks;
      best.alpha = alpha;
      best.x_min = xmin;
      best.n_tail = static_cast<uint32_t>(n_tail);
      best.ks_stat = ks;
    }
  }

  if (!(best_ks < std::numeric_limits<double>::infinity()))
    throw std::invalid_argument("power-law fit: no viable x_min candidate (need >= 10 tail points)");
  return best;
}

}  // namespace

double hurwitz_zeta(double alpha, double q) {
  if (alpha <= 1.0) throw std::invalid_argument("hurwitz_zeta needs alpha > 1");
  if (q < 1.0) throw std::invalid_argument("hurwitz_zeta needs q >= 1");
  // direct terms until the Euler-Maclaurin start point is large enough
  int direct = q >= 48.0 ? 4 : static_cast<int>(48.0 - q) + 4;
  double s = 0.0;
  for (int k = 0; k < direct; ++k) s += std::pow(q + k, -alpha);
  double m = q + direct;
  s += std::pow(m, 1.0 - alpha) / (alpha - 1.0);
  s += 0.5 * std::pow(m, -alpha);
  s += alpha * std::pow(m, -alpha - 1.0) / 12.0;
  s -= alpha * (alpha + 1.0) * (alpha + 2.0) * std::pow(m, -alpha - 3.0) / 720.0;
  s += alpha * (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0) * (alpha + 4.0) *
       std::pow(m, -alpha - 5.0) / 30240.0;
  return s;
}

double continuous_mle_alpha(const std::vector<double>& values, double x_min) {
  double sum = 0.0;
  size_t n = 0;
  for (double v : values) {
    if (v < x_min) continue;
    sum += std::log(v / x_min);
    ++n;
  }
  if (n == 0 || sum <= 0.0) throw std::invalid_argument("continuous MLE: degenerate input");
  return 1.0 + static_cast<double>(n) / sum;
}

PowerLawFit fit_power_law(const std::vector<uint32_t>& values) {
  SortedData d = prepare(values);
  if (d.uniq.size() < 10)
    throw std::invalid_argument("power-law fit needs at least 10 distinct positive values");
  return fit_prepared(d);
}

DiscretePowerLawSampler::DiscretePowerLawSampler(double alpha, uint32_t x_min)
    : alpha_(alpha), x_min_(x_min), total_(hurwitz_zeta(alpha, x_min)) {
  constexpr size_t kMaxTable = 1u << 20;
  double acc = 0.0;
  cdf_.reserve(4096);
  for (size_t i = 0; i < kMaxTable; ++i) {
    acc += std::pow(static_cast<double>(x_min_) + static_cast<double>(i), -alpha_) / total_;
    cdf_.push_back(acc);
    if (1.0 - acc < 1e-12) break;
  }
}

uint32_t DiscretePowerLawSampler::operator()(double u01) const {
  if (u01 < cdf_.back()) {
    size_t idx = static_cast<size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u01) - cdf_.begin());
    return x_min_ + static_cast<uint32_t>(idx);
  }
  // Beyond the table: invert the integral approximation of the tail,
  // zeta(alpha, x) ~ x^(1-alpha) / (alpha - 1).
  double survival = std::max(1.0 - u01, 1e-300);
  double x = std::pow(survival * total_ * (alpha_ - 1.0), 1.0 / (1.0 - alpha_));
  double floor_x = std::floor(x);
  double lo = static_cast<double>(x_min_) + static_cast<double>(cdf_.size());
  if (floor_x < lo) floor_x = lo;
  if (floor_x > 4e9) floor_x = 4e9;
  return static_cast<uint32_t>(floor_x);
}

double gof_pvalue(const std::vector<uint32_t>& values, const PowerLawFit& fit,
                  uint32_t bootstraps, uint64_t seed, int workers) {
  if (fit.n_tail == 0 || fit.alpha <= 1.0) throw std::invalid_argument("gof_pvalue: invalid fit");
  if (bootstraps == 0) throw std::invalid_argument("gof_pvalue: bootstraps must be positive");

  std::vector<uint32_t> clean;
  clean.reserve(values.size());
  for (uint32_t v : values)
    if (v > 0) clean.push_back(v);

  std::vector<uint32_t> body;
  for (uint32_t v : clean)
    if (v < fit.x_min) body.push_back(v);
  std::sort(body.begin(), body.end());

  size_t n = clean.size();
  double p_tail = static_cast<double>(fit.n_tail) / static_cast<double>(n);
  DiscretePowerLawSampler draw_tail(fit.alpha, fit.x_min);

  std::vector<uint8_t> ge(bootstraps, 0);
  parallel_for(bootstraps, workers, [&](size_t b) {
    Rng rng(derive_seed(seed, "gof", b));
    std::vector<uint32_t> synth(n);
    for (size_t i = 0; i < n; ++i) {
      if (body.empty() || rng.real01() < p_tail)
        synth[i] = draw_tail(rng.real01());
      else
        synth[i] = body[rng.index(body.size())];
    }
    SortedData d = prepare(synth);
    double ks;
    try {
      ks = fit_prepared(d).ks_stat;
    } catch (const std::invalid_argument&) {
      ks = 1.0;  // a degenerate replicate counts as maximally distant
    }
    ge[b] = ks >= fit.ks_stat ? 1 : 0;
  });

  uint64_t count = 0;
  for (uint8_t v : ge) count += v;
  return static_cast<double>(count) / static_cast<double>(bootstraps);
}

void save_fit_json(const PowerLawFit& fit, const std::string& which, const std::string& path) {
  nlohmann::ordered_json j;
  j["which"] = which;
  j["alpha"] = fit.alpha;
  j["x_min"] = fit.x_min;
  j["n_tail"] = fit.n_tail;
  j["ks_stat"] = fit.ks_stat;
  if (fit.p_value >= 0.0) {
    j["p_value"] = fit.p_value;
    j["bootstraps"] = fit.bootstraps;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << j.dump(2) << '\n';
}

}  // namespace trc
