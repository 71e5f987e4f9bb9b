#include <cmath>

#include "trilinear/trilinear.hpp"

namespace microlift {

TripleExponents TripleExponents::from_lambdas(cplx l1, cplx l2, cplx l3) {
  return {l1 - l2 - l3, -l1 + l2 - l3, -l1 - l2 + l3};
}

void TripleExponents::check_direct_path() const {
  for (cplx e : {e23(), e13(), e12()})
    if (e.real() <= -1.0)
      throw Error(ErrorCode::RegularizationRequired, "trilinear",
                  "kernel exponent with Re <= -1; the direct path does not apply");
}

namespace {

cplx abs_pow(double base, cplx e) {
  if (base == 0.0) throw Error(ErrorCode::OverlappingSingularities, "trilinear", "coincident kernel arguments");
  return std::exp(e * std::log(std::abs(base)));
}

double wedge(Vec2 s, Vec2 t) { return s[0] * t[1] - s[1] * t[0]; }

}  // namespace

cplx kernel_eval_plane(cplx l1, cplx l2, cplx l3, Vec2 s1, Vec2 s2, Vec2 s3) {
  auto ex = TripleExponents::from_lambdas(l1, l2, l3);
  return abs_pow(wedge(s2, s3), ex.e23()) * abs_pow(wedge(s1, s3), ex.e13()) * abs_pow(wedge(s1, s2), ex.e12());
}

cplx kernel_eval_circle(cplx l1, cplx l2, cplx l3, double x, double y, double z) {
  auto ex = TripleExponents::from_lambdas(l1, l2, l3);
  return abs_pow(std::sin(y - z), ex.e23()) * abs_pow(std::sin(x - z), ex.e13()) *
         abs_pow(std::sin(x - y), ex.e12());
}

}  // namespace microlift
