#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

using Int = mpz_class;
using Rat = mpq_class;

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rat rat(long p, long q = 1);
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

Int floor_of(const Rat& r);
Int ceil_of(const Rat& r);
// fractional part in [0, 1)
Rat frac(const Rat& r);
bool is_integer(const Rat& r);
long to_long(const Int& v);
long to_long_exact(const Rat& r);

Rat factorial(long n);
Rat binomial(long n, long k);
// generalized binomial C(a, k) for integer a (a may be negative)
Rat gen_binomial(long a, long k);

long lcm_l(long a, long b);
long gcd_l(long a, long b);

// B_n with B_1 = -1/2
std::vector<Rat> bernoulli_numbers(int upto);
Rat bernoulli_poly(int n, const Rat& x);

}  // namespace conekit
