#include "ssusy/supercharge.hpp"

namespace ssusy {

Vec3 SuperchargeSpec::kinetic_vector() const { return rotate_by(conjugator.adjoint(), a); }
Vec3 SuperchargeSpec::shift_vector() const { return rotate_by(conjugator.adjoint(), b); }

SuperchargeSpec build_supercharge(double alpha, double c, double theta, double lambda, double L0,
                                  const Mat2& V) {
  const LengthScale scale(theta, L0);
  const double g = lambda * scale.inverse();
  SuperchargeSpec q;
  q.alpha = alpha;
  q.c = c;
  q.theta = scale.theta();
  q.lambda = lambda;
  q.L0 = L0;
  q.conjugator = V;
  q.a = {std::cos(alpha), std::sin(alpha), 0.0};
  q.b = {g * std::sin(alpha), -g * std::cos(alpha), c};
  return q;
}

namespace {

WaveFunction apply_raw(const SuperchargeSpec& q, const WaveFunction& wf) {
  const Mat2 k = q.kinetic();
  const Mat2 p = q.potential();
  const auto d = basis_derivative(wf.geometry(), wf.sector(), wf.rate());
  const auto& in = wf.coeffs();
  // Derivative of each component on the basis.
  Coefficients din{};
  for (int comp = 0; comp < 2; ++comp) {
    const cplx a = in[2 * comp], b = in[2 * comp + 1];
    din[2 * comp] = d[0][0] * a + d[0][1] * b;
    din[2 * comp + 1] = d[1][0] * a + d[1][1] * b;
  }
  const cplx mil(0.0, -q.lambda);
  Coefficients out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int f = 0; f < 2; ++f)
        out[2 * r + f] += mil * k(r, c) * din[2 * c + f] + p(r, c) * in[2 * c + f];
  return wf.with_coeffs(out);
}

}  // namespace

WaveFunction apply_supercharge(const SuperchargeSpec& q, const WaveFunction& wf) {
  if (q.half_parity_dressed) return half_parity(apply_raw(q, half_parity(wf)));
  return apply_raw(q, wf);
}

}  // namespace ssusy
