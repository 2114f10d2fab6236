#pragma once

#include "conekit/geometry.hpp"
#include "conekit/localization.hpp"

#include <Eigen/Core>

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace Eigen {
// exact scalars: no rounding, so the precision queries are placeholders
template <>
struct NumTraits<conekit::RatFunc> : GenericNumTraits<conekit::RatFunc> {
    using Real = conekit::RatFunc;
    using NonInteger = conekit::RatFunc;
    using Literal = conekit::RatFunc;
    using Nested = conekit::RatFunc;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 50,
        MulCost = 100
    };
    static inline Real epsilon() { return Real(); }
    static inline Real dummy_precision() { return Real(); }
    static inline Real highest() { return Real(); }
    static inline Real lowest() { return Real(); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace conekit {

// rational functions over Q(zeta) in X_k = e^(alpha_k) and u = e^(-H)
using ExpRat = RatFunc;

RatFunc exp_X(int k);
RatFunc exp_u();
// the symbol standing for pi * i
RatFunc pi_i();

// elementary symmetric polynomials e_0..e_n of the inputs
std::vector<RatFunc> elementary_symmetric(const std::vector<RatFunc>& ys);

// x_{k,m} = e^(-2 pi i m) X_k
RatFunc vandermonde_node(int k, const Rat& m);
// y_{k,m,l} = e^(-2 pi i (m + l)) X_k u
RatFunc ubar_node(int k, const Rat& m, const Rat& l);

// the rho-summands of the 1_(l) coefficient of the transformed 1^k_(m)
std::vector<ExpRat> ubar_terms(const GitData& g, int k, const Rat& m, const Rat& l);
// sector l -> coefficient, summed over rho; l runs over the plus sectors. Cached per model and label.
std::map<Rat, ExpRat> fourier_mukai_ubar(const GitData& g, int k, const Rat& m);

using RatMatrix = Eigen::Matrix<RatFunc, Eigen::Dynamic, Eigen::Dynamic>;
// rows rho, columns fixed labels in GitData::fixed_labels order
RatMatrix vandermonde_matrix(const GitData& g);
// rows fixed labels, columns rho: the inverse read off from the closed form
RatMatrix ubar_matrix(const GitData& g);

// (i) vanishing at u = 1/X_j away from (k, <-m>), (ii) at most simple poles along X_k = X_k'
VerifyReport verify_ubar_poles(const GitData& g, int k, const Rat& m);
// the same check run on coefficients with one rho-summand dropped; passes iff the check catches it
VerifyReport ubar_poles_mutation(const GitData& g, int k, const Rat& m, int dropped_rho);
VerifyReport verify_vandermonde(const GitData& g);

// jets in 1/z: coefficients carry the symbols z, pi_i and alpha
struct QsdOptions {
    int z_order = 8;  // largest power of 1/z kept
    // overrides for alpha_j, e.g. to probe the division by the Euler class
    std::map<int, RatFunc> alpha_values;
};
// plus-side class -> exp(pi i sum <d_j m>) exp(-pi i sum d_j H / z) / prod d_j (H - alpha_j), per sector
CohClass qsd_map(const GitData& g, const CohClass& c, const QsdOptions& opt = {});
CohClass qsd_inverse(const GitData& g, const CohClass& c, const QsdOptions& opt = {});

// keeps H-degrees below r_m - N
CohClass pullback_to_Z(const GitData& g, const CohClass& c);

// alpha -> 0 of a rational function; throws "no non-equivariant limit" on a genuine alpha-pole
RatFunc nonequivariant_limit(const RatFunc& f);
// minus-side class from fixed-point values by Lagrange interpolation in H, then alpha -> 0
CohClass nonequivariant_limit(const GitData& g, const EqClass& c);
// the same per Q-exponent; z stays a variable
QSeries<CohClass> nonequivariant_limit(const GitData& g, const ISeries& f);

// H^a_(m) in the fixed-point basis
EqClass narrow_basis_class(const GitData& g, const Rat& m, int a);
// H^a_(m) times the Euler class of the weights with m w_i integral
EqClass broad_basis_class(const GitData& g, const Rat& m, int a);

struct ComposeResult {
    CohClass image;  // Z-side, coefficients polynomial in 1/z and pi_i
    bool narrow = true;
    std::vector<Rat> broad_sectors;
};
// lim_{alpha -> 0} i^* of the quantum Serre map of the Ubar-image. The limit is taken
// along alpha_k = eps c_k for fixed distinct c_k; negative eps-orders must cancel.
ComposeResult compose_V(const GitData& g, const EqClass& c, const QsdOptions& opt = {});

}  // namespace conekit
