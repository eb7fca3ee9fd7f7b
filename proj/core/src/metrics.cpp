// Copyright 2026 The otoc-tn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "otoc/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "otoc/rng.hpp"

namespace otoc {

namespace {

struct Moments {
  double mean = 0.0;
  double sample_std = 0.0;
};

Moments moments_of(std::span<const double> xs) {
  const auto m = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / m;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (m - 1.0))};
}

}  // namespace

double snr(std::span<const double> exact, std::span<const double> approx,
           bool normalize_by_exact_moments) {
  if (exact.size() != approx.size())
    throw std::invalid_argument("snr: series lengths differ");
  const std::size_t m = exact.size();
  if (m < 2) throw std::invalid_argument("snr: need at least two instances");

  const Moments me = moments_of(exact);
  const Moments ma = normalize_by_exact_moments ? me : moments_of(approx);
  if (me.sample_std <= 0.0)
    throw std::invalid_argument("snr: exact series has zero variance");
  if (ma.sample_std <= 0.0)
    throw std::invalid_argument("snr: approximate series has zero variance");

  double msd = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double xs = (exact[i] - me.mean) / me.sample_std;
    const double ys = (approx[i] - ma.mean) / ma.sample_std;
    msd += (xs - ys) * (xs - ys);
  }
  msd /= static_cast<double>(m);
  if (msd <= 0.0) return kSnrCap;
  return std::min(kSnrCap, 1.0 / std::sqrt(msd));
}

double snr_uncorrelated_baseline(int m) {
  if (m < 3) throw std::invalid_argument("snr_uncorrelated_baseline: m must be >= 3");
  const double lg = std::lgamma(m / 2.0 - 1.0) - std::lgamma(m / 2.0 - 0.5);
  return 0.5 * std::sqrt(static_cast<double>(m)) * std::exp(lg);
}

BootstrapResult bootstrap_snr(std::span<const double> exact, std::span<const double> approx,
                              int batches, int batch_size, std::uint64_t seed) {
  if (exact.size() != approx.size())
    throw std::invalid_argument("bootstrap_snr: series lengths differ");
  if (batch_size < 2 || batch_size > static_cast<int>(exact.size()))
    throw std::invalid_argument("bootstrap_snr: batch size out of range");
  if (batches < 1) throw std::invalid_argument("bootstrap_snr: need at least one batch");

  DetRng rng(seed);
  BootstrapResult res;
  std::vector<double> be(static_cast<std::size_t>(batch_size));
  std::vector<double> ba(static_cast<std::size_t>(batch_size));
  for (int b = 0; b < batches; ++b) {
    for (int i = 0; i < batch_size; ++i) {
      const auto k = static_cast<std::size_t>(rng.uniform_int(exact.size()));
      be[static_cast<std::size_t>(i)] = exact[k];
      ba[static_cast<std::size_t>(i)] = approx[k];
    }
    try {
      res.samples.push_back(snr(be, ba));
    } catch (const std::invalid_argument&) {
      ++res.degenerate_skipped;  // zero-variance resample
    }
  }
  if (res.samples.empty())
    throw std::runtime_error("bootstrap_snr: every resample was degenerate");
  double sum = 0.0;
  for (double s : res.samples) sum += s;
  res.mean = sum / static_cast<double>(res.samples.size());
  double ss = 0.0;
  for (double s : res.samples) ss += (s - res.mean) * (s - res.mean);
  res.std_dev = res.samples.size() > 1
                    ? std::sqrt(ss / static_cast<double>(res.samples.size() - 1))
                    : 0.0;
  return res;
}

double required_bond_for_target(std::span<const SnrPoint> points, double target_snr) {
  if (points.size() < 2)
    throw std::invalid_argument("required_bond_for_target: need at least two points");
  if (target_snr <= 0.0)
    throw std::invalid_argument("required_bond_for_target: target must be positive");
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i].bond_dim >= points[i + 1].bond_dim)
      throw std::invalid_argument("required_bond_for_target: bond dims must increase");
    if (points[i].snr < target_snr && target_snr <= points[i + 1].snr) {
      const double t = (std::log(target_snr) - std::log(points[i].snr)) /
                       (std::log(points[i + 1].snr) - std::log(points[i].snr));
      return std::exp(std::log(points[i].bond_dim) +
                      t * (std::log(points[i + 1].bond_dim) - std::log(points[i].bond_dim)));
    }
  }
  throw std::runtime_error("required_bond_for_target: no upward crossing of " +
                           std::to_string(target_snr) + " in the sampled range");
}

void ScalingPrediction::validate() const {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("scaling prediction: dimension must be 1 or 2");
  if ((dimension == 1 && bond_growth_base != 2) || (dimension == 2 && bond_growth_base != 4))
    throw std::invalid_argument("scaling prediction: bond growth base is 2 in 1D and 4 in 2D");
  if (v_mb_over_c < 0.0 || v_mb_over_c >= 1.0)
    throw std::invalid_argument("scaling prediction: v_mb/c must lie in [0, 1)");
  const double a_max = dimension == 2 ? 0.5 : 1.0;
  if (prefactor_A <= 0.0 || prefactor_A > a_max)
    throw std::invalid_argument("scaling prediction: prefactor out of range");
  if (otoc_order != 1 && otoc_order != 2)
    throw std::invalid_argument("scaling prediction: otoc_order must be 1 or 2");
}

double predicted_gates_per_bond_2d(ConeOrientation orientation, double v_mb, int n_qubits) {
  const double c = orientation == ConeOrientation::Horizontal ? kConeSpeedHorizontal
                                                              : kConeSpeedDiagonal;
  if (v_mb >= c)
    throw std::invalid_argument("predicted_gates_per_bond_2d: v_mb must be below " +
                                std::to_string(c));
  const double root_n = std::sqrt(static_cast<double>(n_qubits));
  if (orientation == ConeOrientation::Horizontal) {
    return root_n * (1.0 / std::sqrt(2.0)) * (1.0 - v_mb / c) / std::sqrt(c * c - v_mb * v_mb);
  }
  return root_n * 0.5 * (1.0 - v_mb / c) / std::sqrt(c * c - 0.5 * v_mb * v_mb);
}

double predicted_bond_dim(const ScalingPrediction& pred, int n_qubits) {
  pred.validate();
  double gates = 0.0;
  if (pred.dimension == 1) {
    gates = (1.0 - pred.v_mb_over_c) * static_cast<double>(n_qubits);
  } else {
    const double c = pred.orientation == ConeOrientation::Horizontal ? kConeSpeedHorizontal
                                                                     : kConeSpeedDiagonal;
    gates = predicted_gates_per_bond_2d(pred.orientation, pred.v_mb_over_c * c, n_qubits);
  }
  gates *= pred.otoc_order;
  return pred.prefactor_A * std::pow(static_cast<double>(pred.bond_growth_base), gates);
}

namespace {

FitResult linear_fit(std::span<const double> xs, std::span<const double> log_ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += log_ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * log_ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) throw std::invalid_argument("fit: degenerate abscissas");
  FitResult fit;
  fit.rate = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.rate * sx) / n;
  fit.prefactor = std::exp(intercept);
  double ss_res = 0.0, ss_tot = 0.0;
  const double ymean = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = intercept + fit.rate * xs[i];
    ss_res += (log_ys[i] - pred) * (log_ys[i] - pred);
    ss_tot += (log_ys[i] - ymean) * (log_ys[i] - ymean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-20 ? 1.0 : 0.0);
  return fit;
}

std::vector<double> logged(std::span<const double> ys, const char* what) {
  std::vector<double> out;
  out.reserve(ys.size());
  for (double y : ys) {
    if (y <= 0.0) throw std::invalid_argument(std::string("fit: non-positive ") + what);
    out.push_back(std::log(y));
  }
  return out;
}

}  // namespace

FitResult fit_exponential(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw std::invalid_argument("fit_exponential: need at least three matched points");
  const auto ly = logged(ys, "ordinate");
  return linear_fit(xs, ly);
}

FitResult fit_power_law(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw std::invalid_argument("fit_power_law: need at least three matched points");
  const auto lx = logged(xs, "abscissa");
  const auto ly = logged(ys, "ordinate");
  return linear_fit(lx, ly);
}

}  // namespace otoc
