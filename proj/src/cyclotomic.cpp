#include "conekit/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace conekit {

namespace {

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den)
{
    // den monic
    int dn = static_cast<int>(den.size()) - 1;
    int nn = static_cast<int>(num.size()) - 1;
    std::vector<long> q(nn - dn + 1, 0);
    for (int i = nn; i >= dn; --i) {
        long c = num[i];
        q[i - dn] = c;
        for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

}  // namespace

static const std::vector<long>& cyclotomic_from(int n, std::map<int, std::vector<long>>& cache)
{
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // x^n - 1 divided by Phi_d for every proper divisor d
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, cyclotomic_from(d, cache));
    return cache.emplace(n, std::move(p)).first->second;
}

const std::vector<long>& cyclotomic_poly(int n)
{
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(mu);
    return cyclotomic_from(n, cache);
}

int euler_phi(int n) { return static_cast<int>(cyclotomic_poly(n).size()) - 1; }

Cyc::Cyc(int n, std::vector<Rat> coeffs) : n_(n), c_(std::move(coeffs))
{
    if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
    if (c_.empty()) c_.push_back(Rat(0));
    reduce();
}

Cyc Cyc::root(int n, long k)
{
    long e = ((k % n) + n) % n;
    std::vector<Rat> c(e + 1, Rat(0));
    c[e] = 1;
    return Cyc(n, std::move(c));
}

Cyc Cyc::exp_2pi_i(const Rat& q)
{
    Rat f = frac(q);
    long den = to_long(f.get_den());
    long num = to_long(f.get_num());
    return root(static_cast<int>(den), num);
}

Cyc Cyc::exp_pi_i(const Rat& q) { return exp_2pi_i(q / 2); }

const Rat& Cyc::rational() const
{
    if (n_ != 1) throw MathError("cyclotomic number is not rational: " + str());
    return c_[0];
}

void Cyc::reduce()
{
    const auto& phi = cyclotomic_poly(n_);
    int deg = static_cast<int>(phi.size()) - 1;
    for (int i = static_cast<int>(c_.size()) - 1; i >= deg; --i) {
        if (c_[i] == 0) continue;
        Rat c = c_[i];
        for (int j = 0; j <= deg; ++j) c_[i - deg + j] -= c * phi[j];
    }
    c_.resize(deg, Rat(0));
    if (c_.empty()) c_.push_back(Rat(0));
    demote();
}

void Cyc::demote()
{
    if (n_ == 1) return;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return;
    n_ = 1;
    c_.resize(1);
}

Cyc Cyc::lifted(int m) const
{
    if (m % n_) throw MathError("cannot lift cyclotomic order");
    if (m == n_) return *this;
    int step = m / n_;
    std::vector<Rat> c(static_cast<size_t>(step) * c_.size(), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i * step] = c_[i];
    Cyc r;
    r.n_ = m;
    r.c_ = std::move(c);
    r.reduce();
    return r;
}

Cyc Cyc::operator-() const
{
    Cyc r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Cyc& Cyc::operator+=(const Cyc& o)
{
    if (n_ == 1 && o.n_ == 1) {
        c_[0] += o.c_[0];
        return *this;
    }
    int m = static_cast<int>(lcm_l(n_, o.n_));
    Cyc a = lifted(m), b = o.lifted(m);
    a.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < b.c_.size(); ++i) a.c_[i] += b.c_[i];
    a.n_ = m;
    a.reduce();
    *this = std::move(a);
    return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc& Cyc::operator*=(const Cyc& o)
{
    if (n_ == 1 && o.n_ == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    if (o.n_ == 1) {
        for (auto& v : c_) v *= o.c_[0];
        demote();
        return *this;
    }
    if (n_ == 1) {
        Rat s = c_[0];
        *this = o;
        for (auto& v : c_) v *= s;
        demote();
        return *this;
    }
    int m = static_cast<int>(lcm_l(n_, o.n_));
    Cyc a = lifted(m), b = o.lifted(m);
    std::vector<Rat> p(a.c_.size() + b.c_.size(), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
    }
    n_ = m;
    c_ = std::move(p);
    reduce();
    return *this;
}

Cyc Cyc::inverse() const
{
    if (is_zero()) throw MathError("division by zero in Q(zeta)");
    if (n_ == 1) return Cyc(Rat(1) / c_[0]);
    // solve (mult-by-this) x = 1 by Gaussian elimination
    int deg = euler_phi(n_);
    std::vector<std::vector<Rat>> m(deg, std::vector<Rat>(deg + 1, Rat(0)));
    for (int j = 0; j < deg; ++j) {
        Cyc col = *this * root(n_, j);
        Cyc full = col.lifted(n_);
        std::vector<Rat> v = full.c_;
        if (full.n_ == 1) {
            v.assign(deg, Rat(0));
            v[0] = full.c_[0];
        }
        v.resize(deg, Rat(0));
        for (int i = 0; i < deg; ++i) m[i][j] = v[i];
    }
    m[0][deg] = 1;
    for (int col = 0; col < deg; ++col) {
        int piv = -1;
        for (int r = col; r < deg; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw MathError("singular cyclotomic inverse");
        std::swap(m[piv], m[col]);
        Rat p = m[col][col];
        for (int c = col; c <= deg; ++c) m[col][c] /= p;
        for (int r = 0; r < deg; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int c = col; c <= deg; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::vector<Rat> x(deg);
    for (int i = 0; i < deg; ++i) x[i] = m[i][deg];
    return Cyc(n_, std::move(x));
}

bool operator==(const Cyc& a, const Cyc& b)
{
    if (a.n_ == 1 && b.n_ == 1) return a.c_[0] == b.c_[0];
    return (a - b).is_zero();
}

bool operator<(const Cyc& a, const Cyc& b)
{
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::string Cyc::str() const
{
    if (n_ == 1) return c_[0].get_str();
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] > 0 ? "+" : "");
        first = false;
        if (i == 0)
            os << c_[i].get_str();
        else {
            if (c_[i] == -1)
                os << "-";
            else if (c_[i] != 1)
                os << c_[i].get_str() << "*";
            os << "zeta" << n_;
            if (i > 1) os << "^" << i;
        }
    }
    os << ")";
    return os.str();
}

}  // namespace conekit
