#pragma once

#include "conekit/geometry.hpp"
#include "conekit/puiseux.hpp"
#include "conekit/zrat.hpp"

#include <map>
#include <vector>

namespace conekit {

// exp of a z-series without constant term, to z^hi
Laurent exp_series(const Laurent& x, long hi);
Laurent inverse_series(const Laurent& x, long hi);

// twisting parameters for l >= 1: s[l][i] over the weights, st[l][j] over the
// degrees (st[l][k] is unused). Index 0 is left empty.
struct DeltaParams {
    std::vector<std::vector<RatFunc>> s;
    std::vector<std::vector<RatFunc>> st;
};

// printed: the inverse-Euler choice with weights w_i alpha_k and d_j(alpha_j - alpha_k).
// cone: the same choice for the negated weights -w_i alpha_k and d_j(alpha_k - alpha_j),
// which is what the localization vertices against f = I(Q, -z) need.
enum class SignConvention { printed, cone };

DeltaParams ck_parameters(const GitData& g, int k, int l_max, SignConvention sc);
// formal symbols s<l>_<i>, st<l>_<j>
DeltaParams formal_parameters(const GitData& g, int k, int l_max);
int s_symbol(int l, int i);
int st_symbol(int l, int j);

// c_l(m) = sum_i s_l^i B_{l+1}(<w_i m>)/(l+1)! + sum_{j != k} st_l^j B_{l+1}(<-d_j m>)/(l+1)!
RatFunc delta_coefficient(const GitData& g, int k, const Rat& m, int l, const DeltaParams& p);

struct DeltaJet {
    // per sector of P_k: the z-series exp(sum_{l>=1} c_l z^l), or the full jet with formal l = 0
    std::map<Rat, Laurent> factor;
    // per sector: the l = 0 factor, only set after specialization
    std::map<Rat, PuiseuxMonomial> constant;
};

// formal jets: every s is a symbol; the expansion keeps total s-degree <= s_order
DeltaJet delta_transform(const GitData& g, int k, int s_order, int z_order);
// the c_k specialization: l = 0 part as an exact Puiseux monomial, l >= 1 as z-jets
DeltaJet delta_specialize_ck(const GitData& g, int k, int z_order, SignConvention sc = SignConvention::printed);

// integral normalization used against the untwisted cone at Q^-a: equal to the
// inverse l = 0 factor up to a character in a and a constant
RatFunc frame_normalization(const GitData& g, int k, const Rat& a);

}  // namespace conekit
