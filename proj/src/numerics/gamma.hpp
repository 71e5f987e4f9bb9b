#pragma once

#include "common.hpp"

namespace microlift {

// log Gamma on the principal sheet up to a multiple of 2*pi*i; exp() of it is exact Gamma.
cplx log_gamma(cplx z);
cplx gamma_complex(cplx z);

}  // namespace microlift
