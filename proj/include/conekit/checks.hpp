#pragma once

#include "conekit/localization.hpp"
#include "conekit/series.hpp"

namespace conekit {

// closed-form psi integrals against the string-equation recursion for every profile
// with 3 <= n <= n_max, plus <1 1 1> = 1/d_k for each degree of the model
VerifyReport verify_psi_integrals(const GitData& g, int n_max);

// z d/dt_0 of the W-side point J-function against the point J-function with
// tau^m = Q^(1/d_k) t^m, coefficientwise up to insertion degree `degree`
VerifyReport verify_unit_derivative(const GitData& g, int k, int degree, const Window& w);

// every non-narrow sector met by the non-equivariant I-function is killed by the
// H^|I| factor against the sector rank |J|, and |I| >= |J| holds there
VerifyReport verify_narrow_support(const GitData& g, const Window& w);

}  // namespace conekit
