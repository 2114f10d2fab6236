#include "conekit/transforms.hpp"

#include <doctest.h>

using namespace conekit;

namespace {

GitData quintic() { return GitData::make({1, 1, 1, 1, 1}, {5}); }
GitData model22() { return GitData::make({1, 1, 1, 1}, {2, 2}); }

RatFunc Z() { return RatFunc::variable(z_var()); }
RatFunc H() { return RatFunc::variable("H"); }

bool same_class(CohClass a, const CohClass& b)
{
    a += b.scaled(RatFunc(-1));
    return a.is_zero();
}

}  // namespace

TEST_CASE("transforms: elementary symmetric polynomials")
{
    std::vector<RatFunc> ys{alpha(0), alpha(1), alpha(2)};
    auto e = elementary_symmetric(ys);
    REQUIRE(e.size() == 4);
    CHECK(e[0] == RatFunc(1));
    CHECK(e[1] == alpha(0) + alpha(1) + alpha(2));
    CHECK(e[2] == alpha(0) * alpha(1) + alpha(0) * alpha(2) + alpha(1) * alpha(2));
    CHECK(e[3] == alpha(0) * alpha(1) * alpha(2));
}

TEST_CASE("transforms: two-point Ubar by hand")
{
    GitData g = GitData::make({1, 1}, {1, 1});
    RatFunc y1 = exp_X(0) * exp_u(), y2 = exp_X(1) * exp_u();
    auto terms = ubar_terms(g, 0, Rat(0), Rat(0));
    REQUIRE(terms.size() == 2);
    CHECK(terms[0] == -y2 / (y1 - y2));
    CHECK(terms[1] == RatFunc(1) / (y1 - y2));
}

TEST_CASE("transforms: rho-sum collapses to a product")
{
    GitData g = model22();
    auto labels = g.fixed_labels();
    for (const auto& [k, m] : labels)
        for (const Rat& l : g.plus_sectors()) {
            RatFunc num(1), den(1);
            for (const auto& [ko, mo] : labels) {
                if (ko == k && mo == m) continue;
                num *= RatFunc(1) - ubar_node(ko, mo, l);
                den *= ubar_node(k, m, l) - ubar_node(ko, mo, l);
            }
            CHECK(fourier_mukai_ubar(g, k, m).at(l) == num / den);
        }
}

TEST_CASE("transforms: Vandermonde inversion")
{
    for (const GitData& g : {model22(), quintic(), GitData::make({1, 1, 1, 1, 1, 1}, {2, 2, 2}), GitData::make({1, 1, 2}, {4})}) {
        auto rep = verify_vandermonde(g);
        INFO(rep.first_failure());
        CHECK(rep.pass);
        CHECK(ubar_matrix(g).cols() == g.D);
    }
}

TEST_CASE("transforms: vanishing and simple poles of the Ubar coefficients")
{
    for (const GitData& g : {model22(), quintic(), GitData::make({1, 1, 1, 1, 1, 1}, {2, 2, 2})})
        for (const auto& [k, m] : g.fixed_labels()) {
            auto rep = verify_ubar_poles(g, k, m);
            INFO(rep.first_failure());
            CHECK(rep.pass);
        }
}

TEST_CASE("transforms: dropped rho-summands are caught by the vanishing check")
{
    GitData g = model22();
    for (const auto& [k, m] : g.fixed_labels())
        for (int rho = 0; rho < g.D; ++rho) {
            INFO("k=" << k << " m=" << rat_str(m) << " rho=" << rho);
            CHECK(ubar_poles_mutation(g, k, m, rho).pass);
        }
    // with one fixed point and l = 0 the only vanishing index is the exempt one
    CHECK_FALSE(ubar_poles_mutation(quintic(), 0, Rat(0), 0).pass);
}

TEST_CASE("transforms: single rho-summands already have simple poles along X_1 = X_2")
{
    // each summand has prod over other labels of (y_km - y_o) downstairs, one factor per label
    GitData g = model22();
    MPoly diag = (exp_X(0) - exp_X(1)).num().monic();
    for (const auto& [k, m] : g.fixed_labels())
        for (const RatFunc& t : ubar_terms(g, k, m, Rat(0))) CHECK(t.den_multiplicity(diag) <= 1);
}

TEST_CASE("transforms: quantum Serre map")
{
    // rank-1 sector m = 1/2 of w = (1,1,2), d = (4): H = 0, all exponentials trivial
    GitData g = GitData::make({1, 1, 2}, {4});
    CohClass one = CohClass::basis(g, rat(1, 2), 0);
    CHECK(qsd_map(g, one).get(rat(1, 2), 0) == RatFunc(1) / (RatFunc(-4) * alpha(0)));
    // the root of unity at m = 0 is 1, and rank-0 sectors are refused
    GitData t = model22();
    CohClass u = CohClass::basis(t, Rat(0), 0);
    CohClass img = qsd_map(t, u);
    CHECK(img.get(Rat(0), 0) == RatFunc(1) / (RatFunc(4) * alpha(0) * alpha(1)));
    CohClass bad;
    bad.entries[rat(1, 2)] = {};
    CHECK_THROWS(qsd_map(t, bad));
    // division by the Euler class needs nonzero alpha
    QsdOptions zero;
    zero.alpha_values[0] = RatFunc();
    CHECK_THROWS(qsd_map(t, u, zero));
}

TEST_CASE("transforms: quantum Serre map inverts and has the exponential's derivative")
{
    GitData q = quintic();
    for (int a = 0; a < 5; ++a) {
        CohClass c = CohClass::basis(q, Rat(0), a);
        CHECK(same_class(qsd_inverse(q, qsd_map(q, c)), c));
        QsdOptions o0, o1;
        o0.z_order = 0;
        o1.z_order = 1;
        CohClass c0 = qsd_map(q, c, o0), c1 = qsd_map(q, c, o1);
        CohClass lin = c1;
        lin += c0.scaled(RatFunc(-1));
        // -pi i D H / z times the z^0 part, truncated at H^5
        std::vector<RatFunc> want(5);
        for (int p = 1; p < 5; ++p) want[static_cast<size_t>(p)] = -pi_i() * RatFunc(5) / Z() * c0.get(Rat(0), p - 1);
        for (int p = 0; p < 5; ++p) CHECK(lin.get(Rat(0), p) == want[static_cast<size_t>(p)]);
    }
}

TEST_CASE("transforms: pullback to Z")
{
    GitData q = quintic();
    CHECK(pullback_to_Z(q, CohClass::basis(q, Rat(0), 4)).is_zero());
    CohClass h3 = pullback_to_Z(q, CohClass::basis(q, Rat(0), 3));
    CHECK(h3.get(Rat(0), 3) == RatFunc(1));
    CohClass h0 = pullback_to_Z(q, CohClass::basis(q, Rat(0), 0));
    CHECK(h0.get(Rat(0), 0) == RatFunc(1));
    CHECK(h0.entries.at(Rat(0)).size() == 4);
}

TEST_CASE("transforms: non-equivariant limits")
{
    CHECK(nonequivariant_limit(alpha(0) * Z() + RatFunc(3)) == RatFunc(3));
    CHECK_THROWS_WITH_AS(nonequivariant_limit(RatFunc(1) / (alpha(0) - alpha(1))), doctest::Contains("no non-equivariant limit"),
                         MathError);
    GitData g = model22();
    Rat m = rat(1, 2);
    EqClass unit, h, single;
    for (int k = 0; k < 2; ++k) {
        unit.add(k, m, RatFunc(1));
        h.add(k, m, alpha(k));
    }
    CHECK(same_class(nonequivariant_limit(g, unit), CohClass::basis(g, m, 0, Phase::minus)));
    CHECK(same_class(nonequivariant_limit(g, h), CohClass::basis(g, m, 1, Phase::minus)));
    // (1^1 - 1^2) / (alpha_1 - alpha_2) is the H-class minus a multiple of the unit with a pole
    single.add(0, m, RatFunc(1) / (alpha(0) - alpha(1)));
    CHECK_THROWS(nonequivariant_limit(g, single));
    EqClass only;
    only.add(0, m, RatFunc(1));
    CHECK_THROWS(nonequivariant_limit(g, only));
}

TEST_CASE("transforms: non-equivariant limit of the I-function keeps narrow sectors")
{
    GitData q = quintic();
    auto lim = nonequivariant_limit(q, glsm_i_function(q, Window{Rat(-2), Rat(0)}));
    const CohClass* six = lim.find(rat(-6, 5));
    REQUIRE(six);
    CHECK(six->get(rat(1, 5), 0) == -Z() / RatFunc(375000));
    CHECK(lim.find(Rat(-1)) == nullptr);
}

TEST_CASE("transforms: basis classes")
{
    GitData g = model22();
    EqClass n = narrow_basis_class(g, rat(1, 2), 1);
    CHECK(n.get(1, rat(1, 2)) == alpha(1));
    EqClass b = broad_basis_class(g, Rat(0), 0);
    CHECK(b.get(0, Rat(0)) == alpha(0).pow(4));
    CHECK_THROWS(narrow_basis_class(g, rat(1, 2), 2));
}

TEST_CASE("transforms: composition on narrow and broad classes")
{
    for (const GitData& g : {model22(), quintic()})
        for (const Rat& m : g.sectors())
            for (int a = 0; a < g.rank_minus(m); ++a) {
                INFO("m=" << rat_str(m) << " a=" << a);
                if (g.is_narrow(m)) {
                    ComposeResult r;
                    CHECK_NOTHROW(r = compose_V(g, narrow_basis_class(g, m, a)));
                    CHECK(r.narrow);
                    CHECK_FALSE(r.image.is_zero());
                } else {
                    ComposeResult r = compose_V(g, broad_basis_class(g, m, a));
                    CHECK_FALSE(r.narrow);
                    CHECK(r.image.is_zero());
                }
            }
}

TEST_CASE("transforms: composition is linear")
{
    GitData g = model22();
    EqClass a = narrow_basis_class(g, rat(1, 2), 0), b = narrow_basis_class(g, rat(1, 2), 1);
    EqClass s = a;
    s += b.scaled(RatFunc(3));
    CohClass sum = compose_V(g, a).image;
    sum += compose_V(g, b).image.scaled(RatFunc(3));
    CHECK(same_class(compose_V(g, s).image, sum));
    // H^a (m = 1/2) only ever reaches H-degree < r - N = 2 on Z
    CHECK(compose_V(g, a).image.entries.at(Rat(0)).size() == 2);
}

TEST_CASE("transforms: composition refuses models outside its assumptions")
{
    GitData g = GitData::make({1, 2}, {4});
    CHECK_THROWS(compose_V(g, narrow_basis_class(g, rat(1, 4), 0)));
}
