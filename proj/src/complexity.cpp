#include "seebf/complexity.hpp"

#include <cmath>

#include "seebf/errors.hpp"

namespace seebf {

void ComplexityInputs::validate() const {
  if (n_tx < 1 || n_lue < 1 || n_eve < 1 || n_ehn < 1) throw InvalidConfig("complexity: counts must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidConfig("complexity: epsilon must lie in (0, 1)");
  if (t_search < 1) throw InvalidConfig("complexity: t_search must be >= 1");
}

ComplexityTerms complexity_terms(Algorithm a, const ComplexityInputs& in, SdpM2 v) {
  in.validate();
  const double nt = in.n_tx, n = in.n_lue, mi = double(in.n_eve) * in.n_lue + in.n_ehn;
  const double lg = std::log(1.0 / in.epsilon);
  ComplexityTerms c;
  switch (a) {
    case Algorithm::kSdp: {
      const double w = v == SdpM2::kTable ? nt + 2.0 : nt + 1.0;
      c.n1 = lg * std::sqrt((n + 1.0) * nt + mi * (nt + 2.0) + n);
      c.n2 = (n + 1.0) * nt * nt + mi;
      c.m1 = (n + 1.0) * std::pow(nt, 3) + mi * std::pow(nt + 1.0, 3) + mi + n;
      c.m2 = (n + 1.0) * nt * nt + mi * w * w + mi + n;
      break;
    }
    case Algorithm::kZfbf: {
      if (in.n_tx <= in.n_lue) throw InvalidConfig("complexity: zero forcing needs N_t > N");
      const double b = nt - n + 1.0, q = nt - n;
      c.n1 = lg * std::sqrt(n * b + nt + mi * (nt + 2.0));
      c.n2 = n * b * b + q * q + mi;
      c.m1 = n * b * b * b + q * q * q + mi * std::pow(nt + 1.0, 3) + mi + n;
      c.m2 = n * b * b + q * q + mi * (nt + 1.0) * (nt + 1.0) + mi + n;
      break;
    }
    case Algorithm::kMrtZfbf: {
      if (in.n_tx <= in.n_lue) throw InvalidConfig("complexity: zero forcing needs N_t > N");
      const double q = nt - n;
      c.n1 = lg * std::sqrt(nt + mi * (nt + 2.0));
      c.n2 = q * q + mi;
      c.m1 = q * q * q + mi * std::pow(nt + 1.0, 3) + mi;
      c.m2 = q * q + mi * (nt + 1.0) * (nt + 1.0) + mi;
      break;
    }
  }
  return c;
}

double ops_count(Algorithm a, const ComplexityInputs& in, SdpM2 v) {
  const ComplexityTerms c = complexity_terms(a, in, v);
  return in.t_search * c.n1 * (c.n2 * c.m1 + c.n2 * c.n2 * c.m2 + c.n2 * c.n2 * c.n2);
}

double ops_ratio(Algorithm a, const ComplexityInputs& in, SdpM2 v) {
  return ops_count(a, in, v) / ops_count(Algorithm::kSdp, in, v);
}

std::array<Calibration, 3> calibrate(const ComplexityInputs& in, const std::array<double, 3>& reference,
                                     SdpM2 v) {
  std::array<Calibration, 3> out;
  const Algorithm algs[3] = {Algorithm::kSdp, Algorithm::kZfbf, Algorithm::kMrtZfbf};
  const double unit = in.t_search * std::log(1.0 / in.epsilon);
  for (int i = 0; i < 3; ++i) {
    out[i].algorithm = algs[i];
    out[i].reference = reference[i];
    out[i].unit_ops = ops_count(algs[i], in, v) / unit;
    out[i].implied_factor = reference[i] / out[i].unit_ops;
  }
  return out;
}

}  // namespace seebf
