#pragma once

#include "conekit/rational.hpp"

#include <functional>
#include <map>
#include <utility>

namespace conekit {

// truncated series in Q^(1/den). Only exponents in [lo, hi] are stored;
// products keep the intersection of the operand windows.
template <class T>
class QSeries {
public:
    QSeries() = default;
    QSeries(Rat lo, Rat hi, long den) : lo_(std::move(lo)), hi_(std::move(hi)), den_(den)
    {
        if (den_ <= 0) throw MathError("Q-series denominator must be positive");
    }

    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    long den() const { return den_; }
    const std::map<Rat, T>& terms() const { return c_; }
    bool in_window(const Rat& e) const { return e >= lo_ && e <= hi_; }
    bool on_grid(const Rat& e) const { return is_integer(e * Rat(den_)); }

    void set(const Rat& e, T v)
    {
        if (!on_grid(e)) throw MathError("exponent " + rat_str(e) + " is off the Q-grid");
        if (!in_window(e)) throw MathError("exponent " + rat_str(e) + " outside the Q-window");
        c_[e] = std::move(v);
    }
    // adds into the coefficient; silently drops out-of-window exponents
    void accumulate(const Rat& e, const T& v)
    {
        if (!in_window(e)) return;
        if (!on_grid(e)) throw MathError("exponent " + rat_str(e) + " is off the Q-grid");
        auto it = c_.find(e);
        if (it == c_.end())
            c_.emplace(e, v);
        else
            it->second += v;
    }
    const T* find(const Rat& e) const
    {
        auto it = c_.find(e);
        return it == c_.end() ? nullptr : &it->second;
    }
    T get(const Rat& e) const
    {
        const T* p = find(e);
        return p ? *p : T();
    }

    QSeries& operator+=(const QSeries& o)
    {
        Rat nlo = std::max(lo_, o.lo_), nhi = std::min(hi_, o.hi_);
        long nd = lcm_l(den_, o.den_);
        QSeries r(nlo, nhi, nd);
        for (const auto& [e, v] : c_) r.accumulate(e, v);
        for (const auto& [e, v] : o.c_) r.accumulate(e, v);
        return *this = std::move(r);
    }
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }

    template <class U, class V, class F>
    static QSeries convolve(const QSeries<U>& a, const QSeries<V>& b, F&& product)
    {
        QSeries r(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()), lcm_l(a.den(), b.den()));
        for (const auto& [e1, v1] : a.terms())
            for (const auto& [e2, v2] : b.terms()) {
                Rat e = e1 + e2;
                if (r.in_window(e)) r.accumulate(e, product(v1, v2));
            }
        return r;
    }

    template <class F>
    auto map(F&& f) const
    {
        using U = decltype(f(std::declval<const T&>()));
        QSeries<U> r(lo_, hi_, den_);
        for (const auto& [e, v] : c_) r.set(e, f(v));
        return r;
    }

private:
    Rat lo_{0}, hi_{0};
    long den_ = 1;
    std::map<Rat, T> c_;
};

}  // namespace conekit
