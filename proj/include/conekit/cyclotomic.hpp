#pragma once

#include "conekit/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace conekit {

// integer coefficients of the n-th cyclotomic polynomial, lowest degree first
const std::vector<long>& cyclotomic_poly(int n);
int euler_phi(int n);

// element of Q(zeta_n), stored in the power basis of Q[x]/Phi_n.
// Rational values are always demoted to order 1.
class Cyc {
public:
    Cyc() : n_(1), c_{Rat(0)} {}
    Cyc(const Rat& r) : n_(1), c_{r} {}
    Cyc(long v) : n_(1), c_{Rat(v)} {}
    Cyc(int n, std::vector<Rat> coeffs);

    // zeta_n^k
    static Cyc root(int n, long k);
    // exp(2 pi i q)
    static Cyc exp_2pi_i(const Rat& q);
    // exp(pi i q)
    static Cyc exp_pi_i(const Rat& q);

    int order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const { return n_ == 1 && c_[0] == 0; }
    bool is_one() const { return n_ == 1 && c_[0] == 1; }
    bool is_rational() const { return n_ == 1; }
    const Rat& rational() const;

    Cyc operator-() const;
    Cyc& operator+=(const Cyc& o);
    Cyc& operator-=(const Cyc& o);
    Cyc& operator*=(const Cyc& o);
    Cyc& operator/=(const Cyc& o) { return *this *= o.inverse(); }
    Cyc inverse() const;
    Cyc lifted(int m) const;

    friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
    friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
    friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
    friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }
    friend bool operator==(const Cyc& a, const Cyc& b);
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }
    // arbitrary but fixed total order, used for canonical sorting
    friend bool operator<(const Cyc& a, const Cyc& b);

    std::string str() const;

private:
    int n_;
    std::vector<Rat> c_;
    void reduce();
    void demote();
};

}  // namespace conekit
