#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dipole/params.hpp"

namespace dipole {

/// Canonical parameters of the biconfluent Heun function H_B(alpha, beta, gamma, delta; y)
/// solving
///   H'' + [(2|tau|+1)/y - theta - 2y] H'
///       + [chi + theta^2/4 - 2|tau| - 2 + (2 mu - theta (2|tau|+1)) / (2y)] H = 0
/// with alpha = 2|tau|, beta = theta, gamma = chi + theta^2/4, delta = -2 mu.
struct HeunParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  static HeunParams from_scales(const DerivedScales& scales, double chi);

  double abs_tau() const { return alpha / 2.0; }
  double theta() const { return beta; }
  double mu() const { return -delta / 2.0; }
  double chi() const { return gamma - beta * beta / 4.0; }
};

/// Power-series coefficients b_0..b_N of H around the origin, b_0 = 1.
struct HeunSeries {
  HeunParams params;
  std::vector<double> coefficients;
  /// True when the coefficients are the complete polynomial (higher terms vanish).
  bool polynomial = false;
};

/// F(y) = exp(-y^2/2 - theta y/2) y^|tau| H(y) for one bound state.
struct RadialSolution {
  DerivedScales scales;
  HeunSeries series;
  std::optional<int> degree;  // nullopt: H is a free (non-terminating) series
};

/// b_0..b_{count-1} from the Frobenius recurrence. Requires count >= 2.
std::vector<double> series_coefficients(const HeunParams& hp, std::size_t count);

/// Heun parameters with chi fixed by chi + theta^2/4 - 2|tau| - 2 = 2n at the trial omega.
HeunParams truncated_params(const SystemParams& p, int l, Frame frame, int n, double omega);

/// b_{n+1} under the degree-n energy condition. Zero iff omega is an allowed frequency.
/// Throws UnsupportedLevel for n < 1 and NonPositiveFrequency for omega <= 0.
double truncation_residual(const SystemParams& p, int l, Frame frame, int n, double omega);

/// b_0..b_{n+1} under the degree-n energy condition; the last entry is the residual.
std::vector<double> truncation_coefficients(const SystemParams& p, int l, Frame frame, int n,
                                            double omega);

struct FreeSeriesOptions {
  double tail_tolerance = 1e-14;
  std::size_t max_terms = 10000;
};

/// H(y). Polynomial series use Horner on the stored coefficients; free series are summed
/// term by term (Neumaier compensation) until two consecutive terms fall below
/// tail_tolerance * |partial sum|. Throws SeriesNotConverged at the term cap.
double evaluate_series(const HeunSeries& hs, double y, const FreeSeriesOptions& opts = {});

/// Polynomial solution of degree n at omega (no check that omega is allowed; see
/// truncation_residual). The b_{n+1} term is dropped.
RadialSolution make_radial_solution(const SystemParams& p, int l, Frame frame, int n,
                                    double omega);

double radial_wavefunction(const RadialSolution& rs, double y);

/// Values and first two y-derivatives of F, by the product rule on
/// Gaussian x power x polynomial.
struct WavefunctionJet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};
WavefunctionJet radial_wavefunction_jet(const RadialSolution& rs, double y);

/// Scales samples of F(r) so that the trapezoidal integral of F^2 r dr over the grid is 1.
/// Plotting aid only.
std::vector<double> normalize_samples(std::span<const double> r, std::span<const double> f);

}  // namespace dipole
