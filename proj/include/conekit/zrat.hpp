#pragma once

#include "conekit/ratfunc.hpp"

#include <string>
#include <utility>
#include <vector>

namespace conekit {

int z_var();

// truncated Laurent series in z: c[i] is the coefficient of z^(lo+i)
struct Laurent {
    long lo = 0;
    std::vector<RatFunc> c;

    RatFunc at(long e) const;
    long hi() const { return lo + static_cast<long>(c.size()) - 1; }
    bool is_zero() const;
    // keep exponents in [from, to]
    Laurent window(long from, long to) const;
    Laurent& operator+=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    Laurent scaled(const RatFunc& s) const;
    Laurent shifted(long k) const;  // multiply by z^k
    void set(long e, const RatFunc& v);
    void trim();
};

// product truncated above `hi`
Laurent mul(const Laurent& a, const Laurent& b, long hi);

// rational function of z with RatFunc coefficients, in canonical
// partial-fraction form: sum_p sum_i c_{p,i} / (z - p)^(i+1) + sum_n poly_n z^n
class ZRat {
public:
    struct Pole {
        RatFunc at;
        std::vector<RatFunc> c;  // c[i] multiplies (z - at)^-(i+1)
    };
    // a root of multiplicity e, used for factored construction
    using Root = std::pair<RatFunc, int>;

    ZRat() = default;
    ZRat(const RatFunc& constant);

    static ZRat z_power(long n);
    static ZRat pole_term(const RatFunc& at, int order, const RatFunc& coeff);
    static ZRat polynomial(std::vector<RatFunc> coeffs);
    // scalar * prod_i (z - num_roots_i)^e / prod_j (z - den_roots_j)^e
    static ZRat from_roots(const RatFunc& scalar, const std::vector<Root>& num_roots,
                           const std::vector<Root>& den_roots);
    // N(z) / prod_j (z - den_roots_j)^e with N given by its coefficients
    static ZRat from_numerator(const std::vector<RatFunc>& numer, const std::vector<Root>& den_roots);
    // decomposes a RatFunc in which z appears only linearly inside denominator factors
    static ZRat from_ratfunc(const RatFunc& f);

    const std::vector<Pole>& poles() const { return poles_; }
    const std::vector<RatFunc>& poly() const { return poly_; }
    bool is_zero() const { return poles_.empty() && poly_.empty(); }
    std::vector<RatFunc> pole_locations() const;
    int pole_order(const RatFunc& at) const;

    ZRat operator-() const;
    ZRat& operator+=(const ZRat& o);
    ZRat& operator-=(const ZRat& o) { return *this += -o; }
    friend ZRat operator+(ZRat a, const ZRat& b) { return a += b; }
    friend ZRat operator-(ZRat a, const ZRat& b) { return a -= b; }
    ZRat scaled(const RatFunc& s) const;
    friend ZRat operator*(const ZRat& a, const ZRat& b);
    friend bool operator==(const ZRat& a, const ZRat& b);
    friend bool operator!=(const ZRat& a, const ZRat& b) { return !(a == b); }

    // f(z) -> f(-z)
    ZRat negate_z() const;
    // throws MathError at a pole
    RatFunc eval(const RatFunc& r) const;
    RatFunc residue(const RatFunc& at) const;
    // the part of the partial fraction form with the pole at `at`
    ZRat principal_part(const RatFunc& at) const;
    ZRat without_pole(const RatFunc& at) const;
    ZRat polynomial_part() const { return polynomial(poly_); }
    // coefficients of z^lo..z^order where lo is minus the pole order at 0
    Laurent laurent_at_zero(long order) const;
    // expansion around an arbitrary point in u = z - at
    Laurent laurent_at(const RatFunc& at, long order) const;
    RatFunc to_ratfunc() const;

    // substitutes a variable in all coefficients and pole locations
    ZRat subs(int v, const RatFunc& value) const;

    std::string str() const;

private:
    std::vector<Pole> poles_;
    std::vector<RatFunc> poly_;

    void normalize();
    Pole* find_pole(const RatFunc& at);
    const Pole* find_pole(const RatFunc& at) const;
};

}  // namespace conekit
