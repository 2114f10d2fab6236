#include "conekit/zrat.hpp"

#include <sstream>

namespace conekit {

int z_var()
{
    static const int v = var("z");
    return v;
}

RatFunc Laurent::at(long e) const
{
    if (e < lo || e > hi()) return RatFunc();
    return c[static_cast<size_t>(e - lo)];
}

bool Laurent::is_zero() const
{
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

void Laurent::set(long e, const RatFunc& v)
{
    if (c.empty()) {
        lo = e;
        c.push_back(v);
        return;
    }
    if (e < lo) {
        c.insert(c.begin(), static_cast<size_t>(lo - e), RatFunc());
        lo = e;
    }
    if (e > hi()) c.resize(static_cast<size_t>(e - lo + 1));
    c[static_cast<size_t>(e - lo)] = v;
}

void Laurent::trim()
{
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    size_t s = 0;
    while (s < c.size() && c[s].is_zero()) ++s;
    if (s == c.size()) {
        c.clear();
        lo = 0;
        return;
    }
    c.erase(c.begin(), c.begin() + static_cast<long>(s));
    lo += static_cast<long>(s);
}

Laurent Laurent::window(long from, long to) const
{
    Laurent r;
    for (long e = std::max(from, lo); e <= std::min(to, hi()); ++e) r.set(e, at(e));
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o)
{
    for (long e = o.lo; e <= o.hi(); ++e) {
        RatFunc v = at(e) + o.at(e);
        set(e, v);
    }
    return *this;
}

Laurent Laurent::scaled(const RatFunc& s) const
{
    Laurent r = *this;
    for (auto& x : r.c) x *= s;
    return r;
}

Laurent Laurent::shifted(long k) const
{
    Laurent r = *this;
    r.lo += k;
    return r;
}

Laurent mul(const Laurent& a, const Laurent& b, long hi)
{
    Laurent r;
    if (a.c.empty() || b.c.empty()) return r;
    long top = std::min(hi, a.hi() + b.hi());
    for (long e = a.lo + b.lo; e <= top; ++e) {
        RatFunc s;
        for (long i = a.lo; i <= a.hi(); ++i) {
            long j = e - i;
            if (j < b.lo || j > b.hi()) continue;
            const RatFunc& x = a.c[static_cast<size_t>(i - a.lo)];
            const RatFunc& y = b.c[static_cast<size_t>(j - b.lo)];
            if (x.is_zero() || y.is_zero()) continue;
            s += x * y;
        }
        r.set(e, s);
    }
    return r;
}

namespace {

// truncated power series in one variable
using Series = std::vector<RatFunc>;

Series series_mul(const Series& a, const Series& b, size_t n)
{
    Series r(n);
    for (size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j < n; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

// (A + u)^(-e) to n terms
Series inverse_power(const RatFunc& A, int e, size_t n)
{
    Series r(n);
    RatFunc Ainv = A.inverse();
    RatFunc p = Ainv.pow(e);
    for (size_t t = 0; t < n; ++t) {
        r[t] = p * RatFunc(gen_binomial(-e, static_cast<long>(t)));
        p *= Ainv;
    }
    return r;
}

std::vector<ZRat::Root> merge_roots(const std::vector<ZRat::Root>& roots)
{
    std::vector<ZRat::Root> r;
    for (const auto& [x, e] : roots) {
        if (e == 0) continue;
        bool found = false;
        for (auto& y : r)
            if (y.first == x) {
                y.second += e;
                found = true;
                break;
            }
        if (!found) r.emplace_back(x, e);
    }
    return r;
}

}  // namespace

ZRat::ZRat(const RatFunc& constant)
{
    if (!constant.is_zero()) poly_.push_back(constant);
}

ZRat ZRat::z_power(long n)
{
    if (n >= 0) {
        std::vector<RatFunc> c(static_cast<size_t>(n) + 1);
        c.back() = RatFunc(1);
        return polynomial(std::move(c));
    }
    return pole_term(RatFunc(), static_cast<int>(-n), RatFunc(1));
}

ZRat ZRat::pole_term(const RatFunc& at, int order, const RatFunc& coeff)
{
    ZRat r;
    if (coeff.is_zero()) return r;
    if (order <= 0) {
        // (z - at)^k, k >= 0
        std::vector<RatFunc> c(static_cast<size_t>(-order) + 1);
        for (int j = 0; j <= -order; ++j)
            c[static_cast<size_t>(j)] = coeff * RatFunc(binomial(-order, j)) * (-at).pow(-order - j);
        return polynomial(std::move(c));
    }
    Pole p{at, std::vector<RatFunc>(static_cast<size_t>(order))};
    p.c.back() = coeff;
    r.poles_.push_back(std::move(p));
    return r;
}

ZRat ZRat::polynomial(std::vector<RatFunc> coeffs)
{
    ZRat r;
    r.poly_ = std::move(coeffs);
    r.normalize();
    return r;
}

ZRat ZRat::from_roots(const RatFunc& scalar, const std::vector<Root>& num_roots, const std::vector<Root>& den_roots)
{
    if (scalar.is_zero()) return ZRat();
    auto nr = merge_roots(num_roots);
    auto dr = merge_roots(den_roots);
    // cancel common roots
    for (auto& [x, e] : nr)
        for (auto& [y, f] : dr)
            if (e > 0 && f > 0 && x == y) {
                int k = std::min(e, f);
                e -= k;
                f -= k;
            }
    std::vector<RatFunc> numer{scalar};
    for (const auto& [x, e] : nr)
        for (int t = 0; t < e; ++t) {
            // multiply by (z - x)
            std::vector<RatFunc> next(numer.size() + 1);
            for (size_t i = 0; i < numer.size(); ++i) {
                next[i + 1] += numer[i];
                next[i] -= numer[i] * x;
            }
            numer = std::move(next);
        }
    return from_numerator(numer, dr);
}

ZRat ZRat::from_numerator(const std::vector<RatFunc>& numer, const std::vector<Root>& den_roots)
{
    auto dr = merge_roots(den_roots);
    ZRat r;
    long deg = static_cast<long>(numer.size()) - 1;
    long E = 0;
    for (const auto& [x, e] : dr) E += e;
    for (size_t k = 0; k < dr.size(); ++k) {
        const auto& [root, e] = dr[k];
        size_t n = static_cast<size_t>(e);
        // N(root + u)
        Series g(n);
        std::vector<RatFunc> rp(numer.size());
        if (!rp.empty()) rp[0] = RatFunc(1);
        for (size_t t = 1; t < rp.size(); ++t) rp[t] = rp[t - 1] * root;
        for (size_t j = 0; j < n; ++j)
            for (size_t t = j; t < numer.size(); ++t)
                if (!numer[t].is_zero()) g[j] += numer[t] * RatFunc(binomial(static_cast<long>(t), static_cast<long>(j))) * rp[t - j];
        for (size_t i = 0; i < dr.size(); ++i) {
            if (i == k) continue;
            g = series_mul(g, inverse_power(root - dr[i].first, dr[i].second, n), n);
        }
        Pole p{root, std::vector<RatFunc>(n)};
        for (size_t i = 0; i < n; ++i) p.c[i] = g[n - 1 - i];
        r.poles_.push_back(std::move(p));
    }
    if (deg >= E) {
        // expansion at infinity in w = 1/z
        size_t n = static_cast<size_t>(deg - E + 1);
        Series h{RatFunc(1)};
        for (const auto& [x, e] : dr) {
            // (1 - x w)^(-e)
            Series f(n);
            RatFunc xp(1);
            for (size_t t = 0; t < n; ++t) {
                f[t] = RatFunc(gen_binomial(-e, static_cast<long>(t))) * xp;
                xp *= -x;
            }
            h = series_mul(h, f, n);
        }
        h.resize(n);
        r.poly_.assign(n, RatFunc());
        for (long t = 0; t <= deg; ++t)
            for (long s = 0; s < static_cast<long>(n); ++s) {
                long p = t - E - s;
                if (p < 0) continue;
                if (!numer[static_cast<size_t>(t)].is_zero() && !h[static_cast<size_t>(s)].is_zero())
                    r.poly_[static_cast<size_t>(p)] += numer[static_cast<size_t>(t)] * h[static_cast<size_t>(s)];
            }
    }
    r.normalize();
    return r;
}

ZRat ZRat::from_ratfunc(const RatFunc& f)
{
    int z = z_var();
    if (f.is_zero()) return ZRat();
    RatFunc scalar(1);
    std::vector<Root> roots;
    for (const auto& [fac, e] : f.den()) {
        if (!fac.contains(z)) {
            scalar /= RatFunc(fac).pow(e);
            continue;
        }
        if (fac.degree(z) != 1) throw MathError("denominator factor is not linear in z: " + fac.str());
        MPoly p1 = fac.coeff(z, 1), p0 = fac.coeff(z, 0);
        scalar /= RatFunc(p1).pow(e);
        roots.emplace_back(-RatFunc::fraction(p0, p1), e);
    }
    auto parts = f.num().as_poly_in(z);
    std::vector<RatFunc> numer(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) numer[i] = RatFunc(parts[i]) * scalar;
    return from_numerator(numer, roots);
}

void ZRat::normalize()
{
    for (auto& p : poles_)
        while (!p.c.empty() && p.c.back().is_zero()) p.c.pop_back();
    std::erase_if(poles_, [](const Pole& p) { return p.c.empty(); });
    while (!poly_.empty() && poly_.back().is_zero()) poly_.pop_back();
}

ZRat::Pole* ZRat::find_pole(const RatFunc& at)
{
    for (auto& p : poles_)
        if (p.at == at) return &p;
    return nullptr;
}

const ZRat::Pole* ZRat::find_pole(const RatFunc& at) const
{
    for (const auto& p : poles_)
        if (p.at == at) return &p;
    return nullptr;
}

std::vector<RatFunc> ZRat::pole_locations() const
{
    std::vector<RatFunc> r;
    for (const auto& p : poles_) r.push_back(p.at);
    return r;
}

int ZRat::pole_order(const RatFunc& at) const
{
    const Pole* p = find_pole(at);
    return p ? static_cast<int>(p->c.size()) : 0;
}

ZRat ZRat::operator-() const
{
    ZRat r = *this;
    for (auto& p : r.poles_)
        for (auto& c : p.c) c = -c;
    for (auto& c : r.poly_) c = -c;
    return r;
}

ZRat& ZRat::operator+=(const ZRat& o)
{
    for (const auto& q : o.poles_) {
        Pole* p = find_pole(q.at);
        if (!p) {
            poles_.push_back(q);
            continue;
        }
        if (p->c.size() < q.c.size()) p->c.resize(q.c.size());
        for (size_t i = 0; i < q.c.size(); ++i) p->c[i] += q.c[i];
    }
    if (poly_.size() < o.poly_.size()) poly_.resize(o.poly_.size());
    for (size_t i = 0; i < o.poly_.size(); ++i) poly_[i] += o.poly_[i];
    normalize();
    return *this;
}

ZRat ZRat::scaled(const RatFunc& s) const
{
    if (s.is_zero()) return ZRat();
    ZRat r = *this;
    for (auto& p : r.poles_)
        for (auto& c : p.c) c *= s;
    for (auto& c : r.poly_) c *= s;
    r.normalize();
    return r;
}

ZRat operator*(const ZRat& a, const ZRat& b)
{
    if (a.is_zero() || b.is_zero()) return ZRat();
    if (a.poles_.empty() && a.poly_.size() == 1) return b.scaled(a.poly_[0]);
    if (b.poles_.empty() && b.poly_.size() == 1) return a.scaled(b.poly_[0]);
    return ZRat::from_ratfunc(a.to_ratfunc() * b.to_ratfunc());
}

bool operator==(const ZRat& a, const ZRat& b) { return (a - b).is_zero(); }

ZRat ZRat::negate_z() const
{
    ZRat r;
    for (const auto& p : poles_) {
        Pole q{-p.at, p.c};
        // (-z - a)^-(i+1) = (-1)^(i+1) (z + a)^-(i+1)
        for (size_t i = 0; i < q.c.size(); ++i)
            if (i % 2 == 0) q.c[i] = -q.c[i];
        r.poles_.push_back(std::move(q));
    }
    r.poly_ = poly_;
    for (size_t i = 1; i < r.poly_.size(); i += 2) r.poly_[i] = -r.poly_[i];
    return r;
}

RatFunc ZRat::eval(const RatFunc& x) const
{
    RatFunc s;
    for (const auto& p : poles_) {
        RatFunc d = x - p.at;
        if (d.is_zero()) throw MathError("evaluation at a pole z = " + p.at.str());
        RatFunc dinv = d.inverse(), pw = dinv;
        for (const auto& c : p.c) {
            if (!c.is_zero()) s += c * pw;
            pw *= dinv;
        }
    }
    RatFunc xp(1);
    for (const auto& c : poly_) {
        if (!c.is_zero()) s += c * xp;
        xp *= x;
    }
    return s;
}

RatFunc ZRat::residue(const RatFunc& at) const
{
    const Pole* p = find_pole(at);
    return p ? p->c[0] : RatFunc();
}

ZRat ZRat::principal_part(const RatFunc& at) const
{
    ZRat r;
    if (const Pole* p = find_pole(at)) r.poles_.push_back(*p);
    return r;
}

ZRat ZRat::without_pole(const RatFunc& at) const
{
    ZRat r = *this;
    std::erase_if(r.poles_, [&](const Pole& p) { return p.at == at; });
    return r;
}

Laurent ZRat::laurent_at(const RatFunc& at, long order) const
{
    Laurent r;
    long lo = -pole_order(at);
    if (order < lo) return r;
    r.lo = lo;
    r.c.assign(static_cast<size_t>(order - lo + 1), RatFunc());
    auto add = [&](long e, const RatFunc& v) {
        if (e >= lo && e <= order && !v.is_zero()) r.c[static_cast<size_t>(e - lo)] += v;
    };
    for (const auto& p : poles_) {
        if (p.at == at) {
            for (size_t i = 0; i < p.c.size(); ++i) add(-static_cast<long>(i) - 1, p.c[i]);
            continue;
        }
        RatFunc A = at - p.at;
        if (order < 0) continue;
        for (size_t i = 0; i < p.c.size(); ++i) {
            if (p.c[i].is_zero()) continue;
            Series s = inverse_power(A, static_cast<int>(i) + 1, static_cast<size_t>(order) + 1);
            for (long t = 0; t <= order; ++t) add(t, p.c[i] * s[static_cast<size_t>(t)]);
        }
    }
    for (size_t n = 0; n < poly_.size(); ++n) {
        if (poly_[n].is_zero()) continue;
        RatFunc ap(1);
        // z^n = (u + at)^n
        for (long j = static_cast<long>(n); j >= 0; --j) {
            add(j, poly_[n] * RatFunc(binomial(static_cast<long>(n), j)) * ap);
            ap *= at;
        }
    }
    return r;
}

Laurent ZRat::laurent_at_zero(long order) const { return laurent_at(RatFunc(), order); }

RatFunc ZRat::to_ratfunc() const
{
    RatFunc z = RatFunc::variable(z_var());
    RatFunc s;
    for (const auto& p : poles_) {
        RatFunc dinv = (z - p.at).inverse(), pw = dinv;
        for (const auto& c : p.c) {
            if (!c.is_zero()) s += c * pw;
            pw *= dinv;
        }
    }
    RatFunc zp(1);
    for (const auto& c : poly_) {
        if (!c.is_zero()) s += c * zp;
        zp *= z;
    }
    return s;
}

ZRat ZRat::subs(int v, const RatFunc& value) const
{
    ZRat r;
    for (const auto& p : poles_) {
        RatFunc at = p.at.subs(v, value);
        for (size_t i = 0; i < p.c.size(); ++i)
            r += pole_term(at, static_cast<int>(i) + 1, p.c[i].subs(v, value));
    }
    std::vector<RatFunc> c;
    for (const auto& x : poly_) c.push_back(x.subs(v, value));
    r += polynomial(std::move(c));
    return r;
}

std::string ZRat::str() const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& p : poles_)
        for (size_t i = 0; i < p.c.size(); ++i) {
            if (p.c[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << p.c[i].str() << ")/(z - (" << p.at.str() << "))";
            if (i > 0) os << "^" << i + 1;
        }
    for (size_t n = 0; n < poly_.size(); ++n) {
        if (poly_[n].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << poly_[n].str() << ")";
        if (n > 0) os << "*z";
        if (n > 1) os << "^" << n;
    }
    return os.str();
}

}  // namespace conekit
