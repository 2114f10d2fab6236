#include "conekit/puiseux.hpp"
#include "conekit/qseries.hpp"
#include "conekit/zrat.hpp"

#include <doctest.h>

#include <random>

using namespace conekit;

namespace {

RatFunc A(int i) { return RatFunc::variable("a" + std::to_string(i)); }
RatFunc Z() { return RatFunc::variable("z"); }

RatFunc random_ratfunc(std::mt19937& rng)
{
    std::uniform_int_distribution<int> c(-3, 3), v(1, 3), n(1, 3);
    auto poly = [&] {
        RatFunc p(c(rng));
        for (int t = 0, k = n(rng); t < k; ++t) p += RatFunc(c(rng)) * A(v(rng)) * A(v(rng));
        return p;
    };
    RatFunc den = A(v(rng)) - A(v(rng)) + RatFunc(c(rng) == 0 ? 1 : 2);
    if (den.is_zero()) den = RatFunc(1);
    return poly() / den;
}

}  // namespace

TEST_CASE("ratfunc: telescoping sum and factor cancellation")
{
    RatFunc s = A(1) / (A(1) - A(2)) + A(2) / (A(2) - A(1));
    CHECK(s == RatFunc(1));
    CHECK(s.is_constant());
    RatFunc q = (A(1) * A(1) - A(2) * A(2)) / (A(1) - A(2));
    CHECK(q == A(1) + A(2));
    CHECK(q.is_polynomial());
}

TEST_CASE("cyclotomic: zeta4 squared is -1")
{
    Cyc i = Cyc::root(4, 1);
    CHECK(i * i == Cyc(-1));
    CHECK((i * i).is_rational());
    Cyc z5 = Cyc::root(5, 1);
    Cyc s = 0;
    for (int k = 0; k < 5; ++k) s += Cyc::root(5, k);
    CHECK(s.is_zero());
    CHECK(z5 * z5.inverse() == Cyc(1));
    CHECK(Cyc::exp_pi_i(Rat(1)) == Cyc(-1));
    CHECK(Cyc::root(6, 1) * Cyc::root(4, 1) == Cyc::root(12, 5));
}

TEST_CASE("ratfunc: division by zero throws")
{
    CHECK_THROWS_AS(A(1) / RatFunc(), MathError);
    CHECK_THROWS_AS(RatFunc().inverse(), MathError);
}

TEST_CASE("ratfunc: ring axioms on random triples")
{
    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == RatFunc());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("ratfunc: substitution")
{
    RatFunc f = RatFunc(1) / (A(1) - A(2));
    CHECK(f.subs(var("a1"), A(2) + RatFunc(3)) == RatFunc(rat(1, 3)));
    CHECK_THROWS_AS(f.subs(var("a1"), A(2)), MathError);
}

TEST_CASE("zrat: residues")
{
    ZRat f = ZRat::from_roots(RatFunc(1), {}, {{RatFunc(), 1}, {A(1), 1}});
    CHECK(f.residue(A(1)) == RatFunc(1) / A(1));
    CHECK(f.residue(A(2)).is_zero());
    RatFunc c = A(3);
    ZRat g = ZRat::from_roots(RatFunc(1), {{RatFunc(), 1}}, {{c, 2}});
    CHECK(g.residue(c) == RatFunc(1));
    CHECK(g.pole_order(c) == 2);
    CHECK(g.principal_part(c).poles()[0].c[1] == c);
}

TEST_CASE("zrat: laurent expansion at zero")
{
    ZRat f = ZRat::from_roots(RatFunc(1), {}, {{A(1), 1}});
    Laurent l = f.laurent_at_zero(2);
    REQUIRE(l.lo == 0);
    CHECK(l.at(0) == -RatFunc(1) / A(1));
    CHECK(l.at(1) == -RatFunc(1) / A(1).pow(2));
    CHECK(l.at(2) == -RatFunc(1) / A(1).pow(3));

    Laurent l1 = ZRat::z_power(-1).laurent_at_zero(0);
    CHECK(l1.at(-1) == RatFunc(1));
    CHECK(l1.at(0).is_zero());

    ZRat h = ZRat::from_roots(RatFunc(1), {}, {{RatFunc(), 1}, {A(1), 1}, {A(2), 1}});
    Laurent lh = h.laurent_at_zero(0);
    CHECK(lh.lo == -1);
    CHECK(lh.at(-1) == RatFunc(1) / (A(1) * A(2)));
    CHECK(lh.at(0) == (A(1) + A(2)) / (A(1).pow(2) * A(2).pow(2)));
}

TEST_CASE("zrat: partial fractions reassemble; residues match a shifted expansion")
{
    // 3 z^4 (z - a2) / (z^2 (z - a1)^3 (z + a3))
    ZRat f = ZRat::from_roots(RatFunc(3), {{RatFunc(), 4}, {A(2), 1}}, {{RatFunc(), 2}, {A(1), 3}, {-A(3), 1}});
    RatFunc zz = Z();
    RatFunc direct = RatFunc(3) * zz.pow(2) * (zz - A(2)) / ((zz - A(1)).pow(3) * (zz + A(3)));
    CHECK(f.to_ratfunc() == direct);
    // oracle: u^3 f(a1 + u) is regular at u = 0 and its u^2 Taylor coefficient is the residue
    RatFunc shifted = (direct * (zz - A(1)).pow(3)).subs(z_var(), A(1) + zz);
    Laurent tay = ZRat::from_ratfunc(shifted).laurent_at_zero(2);
    CHECK(tay.at(2) == f.residue(A(1)));
    // polynomial part of a degree-raising example
    ZRat p = ZRat::from_roots(RatFunc(1), {{A(1), 3}}, {{A(2), 1}});
    CHECK(p.to_ratfunc() == (zz - A(1)).pow(3) / (zz - A(2)));
    CHECK(p.poly().size() == 3);
}

TEST_CASE("zrat: negate_z and eval")
{
    ZRat f = ZRat::from_roots(RatFunc(2), {{A(1), 1}}, {{A(2), 2}, {RatFunc(), 1}});
    ZRat g = f.negate_z();
    RatFunc zz = Z();
    CHECK(g.to_ratfunc() == f.to_ratfunc().subs(z_var(), -zz));
    CHECK(f.eval(A(3)) == f.to_ratfunc().subs(z_var(), A(3)));
    CHECK_THROWS_AS(f.eval(A(2)), MathError);
    CHECK(f == ZRat::from_ratfunc(f.to_ratfunc()));
}

TEST_CASE("bernoulli polynomials")
{
    CHECK(bernoulli_poly(0, rat(3, 7)) == 1);
    CHECK(bernoulli_poly(1, Rat(0)) == rat(-1, 2));
    CHECK(bernoulli_poly(2, rat(1, 2)) == rat(-1, 12));
    for (int n = 1; n <= 12; ++n)
        for (Rat x : {Rat(0), rat(1, 2), rat(1, 3), rat(2, 5)}) {
            Rat xp(1);
            for (int i = 0; i < n - 1; ++i) xp *= x;
            CHECK(bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == Rat(n) * xp);
        }
}

TEST_CASE("qseries: product window and brute-force convolution")
{
    QSeries<Rat> f(rat(-2), rat(1), 2), g(rat(-3, 2), rat(2), 2);
    for (int t = -4; t <= 2; ++t) f.set(rat(t, 2), Rat(t * t + 1));
    for (int t = -3; t <= 4; ++t) g.set(rat(t, 2), Rat(t - 5));
    auto h = QSeries<Rat>::convolve(f, g, [](const Rat& a, const Rat& b) { return a * b; });
    CHECK(h.lo() == rat(-3, 2));
    CHECK(h.hi() == rat(1));
    for (int e = -3; e <= 2; ++e) {
        Rat s(0);
        for (int i = -4; i <= 2; ++i)
            for (int j = -3; j <= 4; ++j)
                if (i + j == e) s += Rat(i * i + 1) * Rat(j - 5);
        CHECK(h.get(rat(e, 2)) == s);
    }
    CHECK_THROWS_AS(f.set(rat(1, 3), Rat(1)), MathError);
    CHECK_THROWS_AS(f.set(rat(5), Rat(1)), MathError);
}

TEST_CASE("puiseux monomials")
{
    PuiseuxMonomial x = PuiseuxMonomial::atom("x", A(1), rat(1, 2), 4);
    PuiseuxMonomial y = PuiseuxMonomial::atom("x", A(1), rat(3, 4), 4);
    PuiseuxMonomial p = x * y;
    CHECK(p.exponent("x") == rat(5, 4));
    PuiseuxMonomial s = p.integer_split();
    CHECK(s.exponent("x") == rat(1, 4));
    CHECK(s.coeff() == A(1));
    CHECK(p == s);
    CHECK((x * x).eval() == A(1));
    CHECK((p * p.inverse()).eval() == RatFunc(1));
    CHECK_THROWS_AS(x.eval(), MathError);
    CHECK_THROWS_AS(PuiseuxMonomial::atom("x", A(1), rat(1, 3), 4), MathError);
}
