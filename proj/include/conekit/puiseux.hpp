#pragma once

#include "conekit/ratfunc.hpp"

#include <map>
#include <string>

namespace conekit {

// coeff * prod atom^exponent with rational exponents. Atoms are opaque
// labels; the attached value is only used once an exponent is integral.
class PuiseuxMonomial {
public:
    PuiseuxMonomial(long den_bound = 1, RatFunc coeff = RatFunc(1));
    static PuiseuxMonomial atom(const std::string& label, const RatFunc& value, const Rat& exponent,
                                long den_bound);

    const RatFunc& coeff() const { return coeff_; }
    const std::map<std::string, Rat>& exponents() const { return exp_; }
    const std::map<std::string, RatFunc>& values() const { return val_; }
    long den_bound() const { return den_bound_; }
    Rat exponent(const std::string& label) const;
    bool is_integral() const;

    PuiseuxMonomial& operator*=(const PuiseuxMonomial& o);
    friend PuiseuxMonomial operator*(PuiseuxMonomial a, const PuiseuxMonomial& b) { return a *= b; }
    PuiseuxMonomial inverse() const;
    PuiseuxMonomial pow(const Rat& e) const;
    friend bool operator==(const PuiseuxMonomial& a, const PuiseuxMonomial& b);
    friend bool operator!=(const PuiseuxMonomial& a, const PuiseuxMonomial& b) { return !(a == b); }

    // moves floor(exponent) powers into the coefficient, leaving exponents in [0, 1)
    PuiseuxMonomial integer_split() const;
    // value as a RatFunc; throws if some exponent is fractional
    RatFunc eval() const;

    std::string str() const;

private:
    RatFunc coeff_;
    std::map<std::string, Rat> exp_;
    std::map<std::string, RatFunc> val_;
    long den_bound_;

    void check_and_clean();
};

}  // namespace conekit
