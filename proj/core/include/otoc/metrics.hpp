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

#ifndef OTOC_METRICS_HPP
#define OTOC_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace otoc {

inline constexpr double kSnrCap = 1e8;

/// Signal-to-noise ratio over an ensemble: standardize each series to zero
/// mean and unit sample std, then 1/sqrt(mean squared difference), capped at
/// kSnrCap. With `normalize_by_exact_moments` the approximate series is
/// standardized with the exact series' moments instead of its own
/// (sensitivity check).
double snr(std::span<const double> exact, std::span<const double> approx,
           bool normalize_by_exact_moments = false);

/// Expected SNR of an uncorrelated simulator on m instances,
/// sqrt(m) Gamma(m/2 - 1) / (2 Gamma(m/2 - 1/2)), evaluated via lgamma.
/// Approaches 1/sqrt(2) from above as m grows; ~0.725 at m = 50.
double snr_uncorrelated_baseline(int m);

struct BootstrapResult {
  double mean = 0.0;
  double std_dev = 0.0;
  std::vector<double> samples;
  int degenerate_skipped = 0;
};

/// Resample instance pairs with replacement and recompute the SNR per batch.
BootstrapResult bootstrap_snr(std::span<const double> exact, std::span<const double> approx,
                              int batches, int batch_size, std::uint64_t seed);

/// One point of an SNR-vs-bond-dimension curve.
struct SnrPoint {
  double bond_dim = 1.0;
  double snr = 0.0;
};

/// Interpolated bond dimension at the first upward crossing of target_snr.
/// Points must be sorted by bond dimension; interpolation is linear in
/// (log D, log SNR). Throws when the grid does not bracket the target.
double required_bond_for_target(std::span<const SnrPoint> points, double target_snr);

enum class ConeOrientation { Horizontal, Diagonal };

inline constexpr double kConeSpeedHorizontal = 0.5;
inline constexpr double kConeSpeed1d = 1.0;
/// c_h / sqrt(2).
inline constexpr double kConeSpeedDiagonal = 0.35355339059327378;

/// Closed-form bond-dimension growth law D = A * D_g^(gates per bond).
struct ScalingPrediction {
  int dimension = 1;           // 1 or 2
  int bond_growth_base = 2;    // 2 in 1D, 4 in 2D
  double v_mb_over_c = 0.6;
  double prefactor_A = 1.0;    // (0, 1]; at most 0.5 in 2D
  int otoc_order = 1;          // 2 doubles the gates per bond
  ConeOrientation orientation = ConeOrientation::Horizontal;  // 2D only

  void validate() const;
};

/// Maximum two-qubit gates applied on any bond of a pruned circuit with N
/// qubits, from the lightcone geometry. `v_mb` is the absolute propagation
/// speed in two-qubit layers^-1 and must stay below the applicable cone
/// speed.
double predicted_gates_per_bond_2d(ConeOrientation orientation, double v_mb, int n_qubits);

double predicted_bond_dim(const ScalingPrediction& pred, int n_qubits);

struct FitResult {
  double rate = 0.0;       // exponent (exponential rate or power-law exponent)
  double prefactor = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log(y) = log(A) + rate * x. ys must be positive.
FitResult fit_exponential(std::span<const double> xs, std::span<const double> ys);
/// Least squares of log(y) = log(A) + exponent * log(x). xs, ys positive.
FitResult fit_power_law(std::span<const double> xs, std::span<const double> ys);

}  // namespace otoc

#endif
