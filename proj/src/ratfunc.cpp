#include "conekit/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace conekit {

namespace {

bool factor_less(const RatFunc::Factor& a, const RatFunc::Factor& b) { return a.first < b.first; }

MPoly factor_power(const std::vector<RatFunc::Factor>& fs)
{
    MPoly r(1);
    for (const auto& [f, e] : fs) r *= f.pow(static_cast<unsigned>(e));
    return r;
}

}  // namespace

SplitPoly split_poly(const MPoly& p)
{
    if (p.is_zero()) throw MathError("cannot factor the zero polynomial");
    SplitPoly s;
    Monomial content = p.monomial_content();
    MPoly rest = p;
    if (!content.empty()) {
        MPoly m = MPoly::term(content, Cyc(1));
        rest = *p.divide_exact(m);
        for (const auto& [v, e] : content) s.factors.emplace_back(MPoly::variable(v), e);
    }
    s.scalar = rest.leading_coeff();
    rest = rest.monic();
    if (!rest.is_constant()) s.factors.emplace_back(rest, 1);
    return s;
}

RatFunc RatFunc::fraction(const MPoly& num, const MPoly& den)
{
    if (den.is_zero()) throw MathError("division by zero");
    RatFunc r(num);
    if (num.is_zero()) return r;
    SplitPoly s = split_poly(den);
    r.num_ *= s.scalar.inverse();
    for (const auto& [f, e] : s.factors) r.add_den_factor(f, e);
    r.cancel();
    return r;
}

MPoly RatFunc::den_poly() const { return factor_power(den_); }

Cyc RatFunc::constant() const
{
    if (!is_constant()) throw MathError("not a constant: " + str());
    return num_.constant_term();
}

bool RatFunc::contains(int v) const
{
    if (num_.contains(v)) return true;
    for (const auto& [f, e] : den_)
        if (f.contains(v)) return true;
    return false;
}

std::set<int> RatFunc::variables() const
{
    std::set<int> s = num_.variables();
    for (const auto& [f, e] : den_) {
        auto t = f.variables();
        s.insert(t.begin(), t.end());
    }
    return s;
}

void RatFunc::add_den_factor(const MPoly& f, int e)
{
    if (e == 0) return;
    auto it = std::lower_bound(den_.begin(), den_.end(), Factor{f, 0}, factor_less);
    if (it != den_.end() && it->first == f)
        it->second += e;
    else
        den_.insert(it, Factor{f, e});
}

// divide out denominator factors that also divide the numerator
void RatFunc::cancel()
{
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& [f, e] : den_) {
        while (e > 0) {
            auto q = num_.divide_exact(f);
            if (!q) break;
            num_ = std::move(*q);
            --e;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& x) { return x.second == 0; }),
               den_.end());
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o)
{
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        cancel();
        return *this;
    }
    // lcm of the two factor lists
    std::vector<Factor> l, ma, mb;
    size_t i = 0, j = 0;
    while (i < den_.size() || j < o.den_.size()) {
        if (j == o.den_.size() || (i < den_.size() && den_[i].first < o.den_[j].first)) {
            l.push_back(den_[i]);
            mb.push_back(den_[i]);
            ++i;
        } else if (i == den_.size() || o.den_[j].first < den_[i].first) {
            l.push_back(o.den_[j]);
            ma.push_back(o.den_[j]);
            ++j;
        } else {
            int ea = den_[i].second, eb = o.den_[j].second;
            l.emplace_back(den_[i].first, std::max(ea, eb));
            if (eb > ea) ma.emplace_back(den_[i].first, eb - ea);
            if (ea > eb) mb.emplace_back(den_[i].first, ea - eb);
            ++i;
            ++j;
        }
    }
    num_ = num_ * factor_power(ma) + o.num_ * factor_power(mb);
    den_ = std::move(l);
    cancel();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o)
{
    if (is_zero() || o.is_zero()) {
        num_ = MPoly();
        den_.clear();
        return *this;
    }
    // cross-cancel before multiplying: each operand is already reduced
    MPoly na = num_, nb = o.num_;
    std::vector<Factor> da = den_, db = o.den_;
    auto cross = [](MPoly& n, std::vector<Factor>& d) {
        for (auto& [f, e] : d)
            while (e > 0) {
                auto q = n.divide_exact(f);
                if (!q) break;
                n = std::move(*q);
                --e;
            }
    };
    if (!db.empty()) cross(na, db);
    if (!da.empty()) cross(nb, da);
    num_ = na * nb;
    den_.clear();
    for (const auto& [f, e] : da)
        if (e) add_den_factor(f, e);
    for (const auto& [f, e] : db)
        if (e) add_den_factor(f, e);
    return *this;
}

RatFunc RatFunc::inverse() const
{
    if (is_zero()) throw MathError("division by zero");
    RatFunc r(factor_power(den_));
    SplitPoly s = split_poly(num_);
    r.num_ *= s.scalar.inverse();
    for (const auto& [f, e] : s.factors) r.add_den_factor(f, e);
    r.cancel();
    return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o)
{
    if (o.is_zero()) throw MathError("division by zero");
    if (o.is_constant()) {
        num_ *= o.constant().inverse();
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const RatFunc& a, const RatFunc& b)
{
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return (a - b).is_zero();
}

RatFunc RatFunc::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    RatFunc r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

namespace {

RatFunc horner(const MPoly& p, int v, const RatFunc& value)
{
    auto parts = p.as_poly_in(v);
    RatFunc r;
    for (size_t e = parts.size(); e-- > 0;) {
        r *= value;
        r += RatFunc(parts[e]);
    }
    return r;
}

}  // namespace

RatFunc RatFunc::subs(int v, const RatFunc& value) const
{
    if (!contains(v)) return *this;
    RatFunc r = value.is_polynomial() ? RatFunc(num_.subs(v, value.num())) : horner(num_, v, value);
    for (const auto& [f, e] : den_) {
        if (!f.contains(v)) {
            r *= RatFunc::fraction(MPoly(1), f.pow(static_cast<unsigned>(e)));
            continue;
        }
        RatFunc fv = value.is_polynomial() ? RatFunc(f.subs(v, value.num())) : horner(f, v, value);
        if (fv.is_zero()) throw MathError("substitution hits a pole: " + f.str());
        r *= fv.inverse().pow(e);
    }
    return r;
}

RatFunc RatFunc::subs(const std::map<int, RatFunc>& values) const
{
    RatFunc r = *this;
    for (const auto& [v, x] : values) r = r.subs(v, x);
    return r;
}

int RatFunc::den_multiplicity(const MPoly& factor) const
{
    SplitPoly s = split_poly(factor);
    if (s.factors.size() != 1 || s.factors[0].second != 1) throw MathError("not a single factor: " + factor.str());
    for (const auto& [f, e] : den_)
        if (f == s.factors[0].first) return e;
    return 0;
}

std::string RatFunc::str() const
{
    if (den_.empty()) return num_.str();
    std::ostringstream os;
    os << "(" << num_.str() << ")/(";
    bool first = true;
    for (const auto& [f, e] : den_) {
        if (!first) os << "*";
        first = false;
        os << "(" << f.str() << ")";
        if (e > 1) os << "^" << e;
    }
    os << ")";
    return os.str();
}

}  // namespace conekit
