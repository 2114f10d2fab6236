#include "conekit/puiseux.hpp"

#include <sstream>

namespace conekit {

PuiseuxMonomial::PuiseuxMonomial(long den_bound, RatFunc coeff) : coeff_(std::move(coeff)), den_bound_(den_bound)
{
    if (den_bound_ <= 0) throw MathError("Puiseux denominator bound must be positive");
}

PuiseuxMonomial PuiseuxMonomial::atom(const std::string& label, const RatFunc& value, const Rat& exponent,
                                      long den_bound)
{
    PuiseuxMonomial p(den_bound);
    p.exp_[label] = exponent;
    p.val_[label] = value;
    p.check_and_clean();
    return p;
}

Rat PuiseuxMonomial::exponent(const std::string& label) const
{
    auto it = exp_.find(label);
    return it == exp_.end() ? Rat(0) : it->second;
}

bool PuiseuxMonomial::is_integral() const
{
    for (const auto& [a, e] : exp_)
        if (!is_integer(e)) return false;
    return true;
}

void PuiseuxMonomial::check_and_clean()
{
    for (auto it = exp_.begin(); it != exp_.end();) {
        if (!is_integer(it->second * Rat(den_bound_)))
            throw MathError("exponent " + rat_str(it->second) + " exceeds the denominator bound");
        if (it->second == 0)
            it = exp_.erase(it);
        else
            ++it;
    }
}

PuiseuxMonomial& PuiseuxMonomial::operator*=(const PuiseuxMonomial& o)
{
    den_bound_ = lcm_l(den_bound_, o.den_bound_);
    coeff_ *= o.coeff_;
    for (const auto& [a, e] : o.exp_) {
        auto v = o.val_.find(a);
        auto mine = val_.find(a);
        if (mine == val_.end())
            val_[a] = v->second;
        else if (mine->second != v->second)
            throw MathError("atom " + a + " used with two different values");
        exp_[a] += e;
    }
    check_and_clean();
    return *this;
}

PuiseuxMonomial PuiseuxMonomial::inverse() const
{
    PuiseuxMonomial r = *this;
    r.coeff_ = coeff_.inverse();
    for (auto& [a, e] : r.exp_) e = -e;
    return r;
}

PuiseuxMonomial PuiseuxMonomial::pow(const Rat& e) const
{
    if (!is_integer(e) && !coeff_.is_constant()) throw MathError("fractional power of a non-monomial coefficient");
    PuiseuxMonomial r = *this;
    if (is_integer(e))
        r.coeff_ = coeff_.pow(to_long_exact(e));
    else {
        if (!coeff_.constant().is_one()) throw MathError("fractional power of a non-unit coefficient");
    }
    for (auto& [a, x] : r.exp_) x *= e;
    r.check_and_clean();
    return r;
}

bool operator==(const PuiseuxMonomial& a, const PuiseuxMonomial& b)
{
    PuiseuxMonomial x = a.integer_split(), y = b.integer_split();
    return x.exp_ == y.exp_ && x.coeff_ == y.coeff_;
}

PuiseuxMonomial PuiseuxMonomial::integer_split() const
{
    PuiseuxMonomial r = *this;
    for (auto& [a, e] : r.exp_) {
        Int f = floor_of(e);
        if (f != 0) {
            r.coeff_ *= val_.at(a).pow(to_long(f));
            e -= Rat(f);
        }
    }
    r.check_and_clean();
    return r;
}

RatFunc PuiseuxMonomial::eval() const
{
    if (!is_integral()) throw MathError("fractional exponent left in " + str());
    return integer_split().coeff_;
}

std::string PuiseuxMonomial::str() const
{
    std::ostringstream os;
    os << "(" << coeff_.str() << ")";
    for (const auto& [a, e] : exp_) os << "*[" << a << "]^(" << rat_str(e) << ")";
    return os.str();
}

}  // namespace conekit
