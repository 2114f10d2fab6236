#pragma once

#include "conekit/cyclotomic.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace conekit {

// process-wide symbol table; indices are stable once assigned
int var(const std::string& name);
const std::string& var_name(int v);

// sparse exponent vector, sorted by variable index, no zero exponents
using Monomial = std::vector<std::pair<int, int>>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b);
Monomial mono_gcd(const Monomial& a, const Monomial& b);
int mono_deg(const Monomial& m, int v);
int mono_total(const Monomial& m);

// lex order with variable 0 most significant; "greater" puts the leading term first
struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class MPoly {
public:
    using Terms = std::map<Monomial, Cyc, MonoGreater>;

    MPoly() = default;
    MPoly(const Cyc& c);
    MPoly(const Rat& c) : MPoly(Cyc(c)) {}
    MPoly(long c) : MPoly(Cyc(c)) {}
    static MPoly variable(int v, int e = 1);
    static MPoly variable(const std::string& name, int e = 1) { return variable(var(name), e); }
    static MPoly term(const Monomial& m, const Cyc& c);

    const Terms& terms() const { return t_; }
    size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Cyc constant_term() const;
    const Monomial& leading_monomial() const;
    const Cyc& leading_coeff() const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const Cyc& c);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Cyc& c) { return a *= c; }
    friend bool operator==(const MPoly& a, const MPoly& b);
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
    friend bool operator<(const MPoly& a, const MPoly& b);

    MPoly pow(unsigned e) const;
    std::optional<MPoly> divide_exact(const MPoly& d) const;

    int degree(int v) const;
    int total_degree() const;
    bool contains(int v) const { return degree(v) > 0; }
    std::set<int> variables() const;
    // coefficient of v^e, as a polynomial in the remaining variables
    MPoly coeff(int v, int e) const;
    std::vector<MPoly> as_poly_in(int v) const;
    MPoly subs(int v, const MPoly& value) const;
    MPoly subs(const std::map<int, MPoly>& values) const;
    // terms whose total degree in `vs` equals deg
    MPoly homogeneous_part(const std::set<int>& vs, int deg) const;
    MPoly derivative(int v) const;
    Monomial monomial_content() const;
    MPoly monic() const;

    std::string str() const;

private:
    Terms t_;
    void add_term(const Monomial& m, const Cyc& c);
};

}  // namespace conekit
