#pragma once

#include "conekit/geometry.hpp"
#include "conekit/qseries.hpp"
#include "conekit/zrat.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace conekit {

// Q-exponents kept in a series; defaults match the CLI default window
struct Window {
    Rat lo{-5};
    Rat hi{2};
};

// fixed-point basis vector with ZRat coefficients
struct ZVec {
    std::map<FixedLabel, ZRat> entries;

    ZRat get(int k, const Rat& m) const;
    void add(int k, const Rat& m, const ZRat& v);
    ZVec& operator+=(const ZVec& o);
    bool is_zero() const { return entries.empty(); }
    friend bool operator==(const ZVec& a, const ZVec& b);
};

// exponent e stores the coefficient of Q^e; I-functions live at e = -a < 0
using ISeries = QSeries<ZVec>;

// b in <target> + Z, b >= 0 (b > 0 if lower_strict), b < upper (b <= upper if !upper_strict)
std::vector<Rat> b_range(const Rat& target, const Rat& upper, bool lower_strict, bool upper_strict);

// coefficient of Q^-a at (k, <a>) of the local I-function, a in (1/d_k)Z, a > 0
ZRat i_coefficient(const GitData& g, int k, const Rat& a);
// the local I-function of the fixed point k
ISeries local_i_function(const GitData& g, int k, const Window& w);
// the global I-function, built from the hyperplane-class formula and restricted
// to every fixed point (independent of local_i_function)
ISeries glsm_i_function(const GitData& g, const Window& w);

struct NoneqISeries {
    QSeries<CohClass> series;  // coefficients are RatFuncs in z
    bool a2_warning = false;
    std::vector<Rat> non_narrow_support;  // sectors carrying a nonzero coefficient that are not narrow
};
// non-equivariant I-function on the minus side, H nilpotent per sector
NoneqISeries glsm_i_function_noneq(const GitData& g, const Window& w);

// value of the characteristic class on the a-th fixed locus; nullptr means 1
using ClassCallback = std::function<RatFunc(long a)>;
// (z/d_k) sum_{0 <= a < eps} Q^{-(a+1)/d_k} / (z^a a!) c_a (1_{-(a+1)/d_k})^dual, untwisted dual
ISeries epsilon_i_function(const GitData& g, int k, long eps, const Window& w, const ClassCallback& c = nullptr);

// genus-zero descendant integral over the moduli of n >= 3 pointed rational curves
Rat psi_integral(const std::vector<long>& a);
// the same integral from the string equation alone
Rat psi_integral_string(std::vector<long> a);

enum class Theory { gw_point, spin_inf };

struct Mark {
    Rat m;
    long psi = 0;
};

// degree at which the untwisted correlator can be nonzero
Rat required_degree(long dk, const std::vector<Mark>& marks, Theory th);
// d_k^-1 psi_integral when the degree rule holds and the monodromies multiply out, else 0
Rat untwisted_correlator(long dk, const std::vector<Mark>& marks, const Rat& beta, Theory th);
std::string correlator_note(long dk, const std::vector<Mark>& marks, const Rat& beta, Theory th);

// formal insertion variable for sector t/d_k; gw uses "tau", spin uses "t"
int insertion_var(Theory th, int k, long t);

// J-function of the untwisted point theory at P_k with insertion
// sum_t x_t 1_(t/d_k), expanded to total degree `degree` in the x_t.
// Coefficients are RatFuncs in z and the insertion variables.
QSeries<EqClass> untwisted_j_function(const GitData& g, int k, const Window& w, int degree, Theory th);
// d/dx_0 of every coefficient, multiplied by z
QSeries<EqClass> z_d_unit(const QSeries<EqClass>& j, int k, Theory th);
// replaces tau^m by Q^{1/d_k} t^m up to the given degree
QSeries<EqClass> substitute_insertions(const QSeries<EqClass>& j, const GitData& g, int k, int degree);
// restrict coefficients to total insertion degree <= degree
QSeries<EqClass> truncate_insertions(const QSeries<EqClass>& j, const GitData& g, int k, Theory th, int degree);

}  // namespace conekit
