#include "conekit/series.hpp"

#include <doctest.h>

#include <functional>

using namespace conekit;

namespace {

GitData quintic() { return GitData::make({1, 1, 1, 1, 1}, {5}); }
GitData model22() { return GitData::make({1, 1, 1, 1}, {2, 2}); }

RatFunc Z() { return RatFunc::variable(z_var()); }

bool same_series(const ISeries& a, const ISeries& b)
{
    for (const auto& [e, v] : a.terms())
        if (!(b.get(e) == v)) return false;
    for (const auto& [e, v] : b.terms())
        if (!(a.get(e) == v)) return false;
    return true;
}

// all tuples of n nonnegative integers summing to s
void profiles(int n, long s, std::vector<long>& cur, const std::function<void(const std::vector<long>&)>& f)
{
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(s);
        f(cur);
        cur.pop_back();
        return;
    }
    for (long a = 0; a <= s; ++a) {
        cur.push_back(a);
        profiles(n, s - a, cur, f);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("series: I-function coefficients by hand")
{
    GitData q = quintic();
    CHECK(i_coefficient(q, 0, rat(1, 5)) == ZRat::z_power(1));
    RatFunc lin = -Z() / RatFunc(5) - alpha(0);
    RatFunc want = Z() * lin.pow(5) / (RatFunc(120) * Z().pow(5));
    CHECK(i_coefficient(q, 0, rat(6, 5)) == ZRat::from_ratfunc(want));
    CHECK(i_coefficient(model22(), 0, rat(1, 2)) == ZRat::z_power(1));
    CHECK_THROWS(i_coefficient(q, 0, Rat(0)));
    CHECK_THROWS(i_coefficient(model22(), 0, rat(1, 3)));
}

TEST_CASE("series: local and global I-functions agree")
{
    for (const GitData& g : {quintic(), model22(), GitData::make({1, 1, 2}, {4}), GitData::make({1, 1, 1, 1, 1, 1}, {2, 2, 2})}) {
        Window w{Rat(-3), Rat(0)};
        ISeries sum(w.lo, w.hi, g.d);
        for (int k = 0; k < g.N(); ++k) sum += local_i_function(g, k, w);
        CHECK(same_series(sum, glsm_i_function(g, w)));
    }
}

TEST_CASE("series: empty window gives an empty series")
{
    ISeries s = glsm_i_function(quintic(), Window{rat(-1, 10), Rat(0)});
    CHECK(s.terms().empty());
}

TEST_CASE("series: non-equivariant quintic")
{
    auto ne = glsm_i_function_noneq(quintic(), Window{Rat(-3), Rat(0)});
    CHECK_FALSE(ne.a2_warning);
    CHECK(ne.non_narrow_support.empty());
    const CohClass* six = ne.series.find(rat(-6, 5));
    REQUIRE(six);
    CHECK(six->get(rat(1, 5), 0) == -Z() / RatFunc(375000));
    // the sector m = 0 dies at every order
    for (const auto& [e, c] : ne.series.terms()) CHECK(c.get(Rat(0), 0).is_zero());
    CHECK(ne.series.find(Rat(-1)) == nullptr);
    auto t = glsm_i_function_noneq(model22(), Window{Rat(-1), Rat(0)});
    const CohClass* half = t.series.find(rat(-1, 2));
    REQUIRE(half);
    CHECK(half->get(rat(1, 2), 0) == Z());
}

TEST_CASE("series: epsilon I-function")
{
    GitData q = quintic();
    CHECK(epsilon_i_function(q, 0, 0, Window{Rat(-2), Rat(0)}).terms().empty());
    auto one = epsilon_i_function(q, 0, 1, Window{Rat(-2), Rat(0)});
    REQUIRE(one.terms().size() == 1);
    CHECK(one.terms().begin()->first == rat(-1, 5));
    auto two = epsilon_i_function(q, 0, 2, Window{Rat(-2), Rat(0)});
    CHECK(two.terms().size() == 2);
    // a = 1 carries 1/z relative to a = 0 after the z/d_k prefactor
    auto a1 = two.get(rat(-2, 5)).get(0, rat(2, 5));
    CHECK(a1.polynomial_part() == a1);
    // the class callback scales the a-th summand
    auto scaled = epsilon_i_function(q, 0, 2, Window{Rat(-2), Rat(0)}, [](long a) { return RatFunc(a + 7); });
    CHECK(scaled.get(rat(-2, 5)).get(0, rat(2, 5)) == a1.scaled(RatFunc(8)));
}

TEST_CASE("series: psi integrals, closed form against the string equation")
{
    CHECK(psi_integral({0, 0, 0}) == 1);
    CHECK(psi_integral({1, 0, 0, 0}) == 1);
    CHECK(psi_integral({2, 1, 0, 0, 0, 0}) == 3);
    CHECK(psi_integral({1, 1, 0, 0}) == 0);  // dimension mismatch
    int cases = 0;
    for (int n = 3; n <= 8; ++n) {
        std::vector<long> cur;
        profiles(n, n - 3, cur, [&](const std::vector<long>& a) {
            CHECK(psi_integral(a) == psi_integral_string(a));
            ++cases;
        });
    }
    CHECK(cases > 300);
}

TEST_CASE("series: untwisted correlators")
{
    std::vector<Mark> marks{{rat(1, 5), 0}, {rat(2, 5), 0}, {rat(2, 5), 0}};
    CHECK(untwisted_correlator(5, marks, Rat(-1), Theory::gw_point) == rat(1, 5));
    CHECK(required_degree(5, marks, Theory::spin_inf) == rat(-4, 5));
    CHECK(untwisted_correlator(5, marks, rat(-4, 5), Theory::spin_inf) == rat(1, 5));
    CHECK(untwisted_correlator(5, marks, Rat(-1), Theory::spin_inf) == 0);
    std::vector<Mark> bad{{Rat(0), 1}, {Rat(0), 0}, {Rat(0), 0}};
    CHECK(untwisted_correlator(5, bad, required_degree(5, bad, Theory::gw_point), Theory::gw_point) == 0);
    // <1 1 1> = 1/d_k
    for (long dk : {1L, 2L, 5L}) {
        std::vector<Mark> units(3, Mark{Rat(0), 0});
        CHECK(untwisted_correlator(dk, units, required_degree(dk, units, Theory::gw_point), Theory::gw_point) == rat(1, dk));
    }
}

TEST_CASE("series: untwisted J-function normalization")
{
    GitData q = quintic();
    auto j0 = untwisted_j_function(q, 0, Window{Rat(-2), Rat(0)}, 0, Theory::gw_point);
    REQUIRE(j0.terms().size() == 1);
    CHECK(j0.get(Rat(0)).get(0, Rat(0)) == Z());
    auto j1 = untwisted_j_function(q, 0, Window{Rat(-2), Rat(0)}, 1, Theory::gw_point);
    for (long t = 0; t < 5; ++t) {
        RatFunc want = t == 0 ? Z() + RatFunc::variable(insertion_var(Theory::gw_point, 0, 0)) : RatFunc::variable(insertion_var(Theory::gw_point, 0, t));
        CHECK(j1.get(Rat(0)).get(0, rat(t, 5)) == want);
    }
}

TEST_CASE("series: W-side unit derivative reproduces the point J-function")
{
    for (long dk : {2L, 5L}) {
        GitData g = GitData::make(std::vector<long>(static_cast<size_t>(dk), 1), {dk});
        Window w{Rat(-2), Rat(1)};
        auto lhs = truncate_insertions(z_d_unit(untwisted_j_function(g, 0, w, 4, Theory::spin_inf), 0, Theory::spin_inf), g, 0,
                                       Theory::spin_inf, 3);
        auto rhs = substitute_insertions(untwisted_j_function(g, 0, w, 3, Theory::gw_point), g, 0, 3);
        CHECK(!lhs.terms().empty());
        for (const auto& s : {lhs, rhs})
            for (const auto& [e, c] : s.terms())
                for (const auto& [l, v] : c.entries) {
                    INFO("d_k=" << dk << " e=" << rat_str(e) << " m=" << rat_str(l.m));
                    CHECK(lhs.get(e).get(0, l.m) == rhs.get(e).get(0, l.m));
                }
    }
}
