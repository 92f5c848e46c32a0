#pragma once

#include <array>

#include "seebf/algorithms.hpp"

namespace seebf {

struct ComplexityInputs {
  int n_tx = 7;
  int n_lue = 3;
  int n_eve = 2;
  int n_ehn = 2;
  double epsilon = 1e-7;  ///< solver accuracy
  int t_search = 1;       ///< number of one-dimensional search points T

  void validate() const;
};

/// Which expression to use for m_2 in the SDP row. The table and the
/// accompanying prose disagree on the (N_t + 2)^2 vs (N_t + 1)^2 term.
enum class SdpM2 { kTable, kProse };

struct ComplexityTerms {
  double n1 = 0.0;  ///< iteration count, includes log(1/epsilon)
  double n2 = 0.0;  ///< decision variables
  double m1 = 0.0;
  double m2 = 0.0;
};

ComplexityTerms complexity_terms(Algorithm a, const ComplexityInputs& in, SdpM2 v = SdpM2::kTable);

/// T n_1 (n_2 m_1 + n_2^2 m_2 + n_2^3)
double ops_count(Algorithm a, const ComplexityInputs& in, SdpM2 v = SdpM2::kTable);

/// ops(a) / ops(SDP); independent of T and epsilon.
double ops_ratio(Algorithm a, const ComplexityInputs& in, SdpM2 v = SdpM2::kTable);

/// Absolute operation counts quoted for (N_t, N, M, I) = (7, 3, 2, 2), in
/// SDP, ZFBF, MRT-ZFBF order.
constexpr std::array<double, 3> kReferenceCounts7322 = {1.1678e9, 7.9845e8, 6.2297e7};

struct Calibration {
  Algorithm algorithm = Algorithm::kSdp;
  double reference = 0.0;
  double unit_ops = 0.0;        ///< ops with T log(1/epsilon) = 1
  double implied_factor = 0.0;  ///< reference / unit_ops, i.e. the implied T log(1/epsilon)
};

/// Implied T log(1/epsilon) per row for the given reference counts.
std::array<Calibration, 3> calibrate(const ComplexityInputs& in, const std::array<double, 3>& reference,
                                     SdpM2 v = SdpM2::kTable);

}  // namespace seebf
