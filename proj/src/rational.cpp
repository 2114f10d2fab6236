#include "conekit/rational.hpp"

#include <mutex>
#include <numeric>

namespace conekit {

Rat rat(long p, long q)
{
    if (q == 0) throw MathError("zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string& s)
{
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    if (t.empty()) throw std::invalid_argument("empty rational");
    Rat r;
    if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Int floor_of(const Rat& r)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Int ceil_of(const Rat& r)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rat frac(const Rat& r) { return r - Rat(floor_of(r)); }

bool is_integer(const Rat& r) { return r.get_den() == 1; }

long to_long(const Int& v)
{
    if (!v.fits_slong_p()) throw MathError("integer overflow");
    return v.get_si();
}

long to_long_exact(const Rat& r)
{
    if (!is_integer(r)) throw MathError("expected an integer, got " + r.get_str());
    return to_long(r.get_num());
}

Rat factorial(long n)
{
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(f);
}

Rat binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return Rat(0);
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(b);
}

Rat gen_binomial(long a, long k)
{
    if (k < 0) return Rat(0);
    Rat r(1);
    for (long i = 0; i < k; ++i) r = r * Rat(a - i) / Rat(i + 1);
    return r;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return std::lcm(a, b); }

std::vector<Rat> bernoulli_numbers(int upto)
{
    static std::mutex mu;
    static std::vector<Rat> cache{Rat(1)};
    std::lock_guard<std::mutex> lock(mu);
    // sum_{k<=m} C(m+1,k) B_k = 0
    while (static_cast<int>(cache.size()) <= upto) {
        int m = static_cast<int>(cache.size());
        Rat s(0);
        for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * cache[k];
        cache.push_back(-s / Rat(m + 1));
    }
    return std::vector<Rat>(cache.begin(), cache.begin() + upto + 1);
}

Rat bernoulli_poly(int n, const Rat& x)
{
    if (n < 0) throw std::invalid_argument("negative Bernoulli index");
    const auto b = bernoulli_numbers(n);
    Rat s(0), xp(1);
    for (int k = n; k >= 0; --k) {
        s += binomial(n, k) * b[k] * xp;
        xp *= x;
    }
    return s;
}

}  // namespace conekit
