#pragma once

#include "conekit/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace conekit {

// numerator over a factored denominator. Denominator factors are monic,
// free of monomial content (variables are split off as their own factors)
// and kept sorted; the scalar content lives in the numerator.
class RatFunc {
public:
    using Factor = std::pair<MPoly, int>;

    RatFunc() = default;
    RatFunc(const MPoly& p) : num_(p) {}
    RatFunc(const Cyc& c) : num_(c) {}
    RatFunc(const Rat& c) : num_(c) {}
    RatFunc(long c) : num_(c) {}

    static RatFunc variable(const std::string& name) { return RatFunc(MPoly::variable(name)); }
    static RatFunc variable(int v) { return RatFunc(MPoly::variable(v)); }
    static RatFunc fraction(const MPoly& num, const MPoly& den);

    const MPoly& num() const { return num_; }
    const std::vector<Factor>& den() const { return den_; }
    MPoly den_poly() const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    Cyc constant() const;
    bool contains(int v) const;
    std::set<int> variables() const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc inverse() const;
    RatFunc pow(long e) const;

    // throws MathError if a denominator factor vanishes
    RatFunc subs(int v, const RatFunc& value) const;
    RatFunc subs(const std::map<int, RatFunc>& values) const;

    // multiplicity of a factor in the denominator (0 if absent)
    int den_multiplicity(const MPoly& factor) const;

    std::string str() const;

private:
    MPoly num_;
    std::vector<Factor> den_;

    void add_den_factor(const MPoly& f, int e);
    void cancel();
};

// normalizes a polynomial into scalar * (variable factors) * monic remainder
struct SplitPoly {
    Cyc scalar;
    std::vector<RatFunc::Factor> factors;
};
SplitPoly split_poly(const MPoly& p);

}  // namespace conekit
