#pragma once

#include <functional>
#include <vector>

#include "circle_model/circle_function.hpp"
#include "geometry/geometry.hpp"
#include "helgason/helgason.hpp"
#include "trilinear/trilinear.hpp"

namespace microlift {

// Order-0 symbol a(z, b), independent of lambda.
class Symbol {
 public:
  using Fn = std::function<cplx(DiskPoint, BoundaryPoint)>;

  static Symbol from_function(Fn fn);
  static Symbol constant(cplx c);
  // e^{i k b}
  static Symbol boundary_mode(int k);
  // values on polar nodes (r_i, theta_j) times boundary angles b_l, index (i * n_theta + j) * n_b + l;
  // piecewise linear between radii, periodic linear in theta and b, exact at nodes
  static Symbol tabulated(std::vector<double> radii, int n_theta, int n_b, std::vector<cplx> values);

  cplx operator()(DiskPoint z, BoundaryPoint b) const { return fn_(z, b); }
  // max |a| over the sampled points (tabulated: all nodes)
  double sup_norm(const std::vector<DiskPoint>& zs, int n_b) const;

 private:
  Fn fn_;
};

// Op(a) applied to the eigenfunction with boundary data T, evaluated at z
cplx op_apply(const Symbol& a, cplx lambda, const CircleFunction& density, DiskPoint z);
cplx op_apply(const Symbol& a, cplx lambda, const std::vector<WeightedDelta>& deltas, DiskPoint z);

struct SymbolRoundTrip {
  cplx applied;
  cplx reconstructed;
};
SymbolRoundTrip symbol_roundtrip(const Symbol& a, cplx lambda, DiskPoint z, BoundaryPoint b);

// model side of <Op(a) phi, phi> for a symbol with K-type content v_a in V_mu
QuadValue microlocal_pairing(const CircleFunction& v_a, cplx mu, cplx lambda, const DeltaOptions& opts = {});

struct FlowRow {
  double t;
  QuadValue base;     // pairing of v_a
  QuadValue shifted;  // pairing of v_a - pi_mu(g_s) v_a
};
struct FlowReport {
  std::vector<FlowRow> rows;
  double base_slope = 0.0;
  double shifted_slope = 0.0;
  double sobolev2 = 0.0;  // sobolev_norm(v_a, 2)
};
// g_s = diag(e^s, e^{-s}) acting on the symbol slot
FlowReport flow_comparison(const CircleFunction& v_a, cplx mu, double s, const std::vector<double>& ts, int threads,
                           const DeltaOptions& opts = {});

}  // namespace microlift
