#pragma once

#include <functional>
#include <string>

#include "circle_model/circle_function.hpp"
#include "geometry/geometry.hpp"
#include "numerics/quadrature.hpp"

namespace microlift {

enum class ActPath { Plane, Circle };

// (pi_lambda(g) f)(theta) = f(g^{-1} theta) |d(g^{-1} theta)/d theta|^{(1-lambda)/2}
CircleFunction pi_act(cplx lambda, const GroupElement& g, const CircleFunction& f, ActPath path = ActPath::Plane);

// (1/2pi) int f conj(h)
cplx inner_product(const CircleFunction& f, const CircleFunction& h);

// Kernel |sin 2x|^{(-mu-1)/2}; mu is the parameter of the symbol's representation.
cplx d_mu(cplx mu, const CircleFunction& v);
// (1/2pi) int_0^{2pi} v(x) |sin 2x|^{(-mu-1)/2} dx, unnormalized
QuadValue d_mu_numerator(cplx mu, const std::function<cplx(double)>& v);

cplx c_mu_closed(cplx mu);
// (1/2pi) int_0^{2pi} |sin 2x|^{-mu/2-1/2} dx
QuadValue c_mu_quadrature(cplx mu);

double sobolev_norm(const CircleFunction& f, int order);

// Default bump profile: exp(-1/(1-(4s/pi)^2)) on |s| < pi/4, scaled to int chi^2 ds = 1.
double default_chi(double s);

// v_r(t) = sqrt(pi/2) r^{1/2} (chi(r t) + chi(r (t - pi/2))), periodized with period pi.
// The sqrt(pi) over the printed 2^{-1/2} gives ||v_r|| = 1 in inner_product.
CircleFunction bump_family(double r, std::size_t n, const std::function<double(double)>& chi = default_chi);
// pointwise value of the same family, without a grid
double bump_value(double r, double t, const std::function<double(double)>& chi = default_chi);
// half-width of each bump
inline double bump_half_width(double r) { return kPi / (4.0 * r); }

// Named test functions: e0, e:K, one_plus_cos4, vonmises:C:KAPPA, bump:R
CircleFunction named_function(const std::string& name, std::size_t n);

}  // namespace microlift
