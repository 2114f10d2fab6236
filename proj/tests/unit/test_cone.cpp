#include "conekit/cone.hpp"
#include "conekit/delta.hpp"

#include <doctest.h>

#include <random>

using namespace conekit;

namespace {

using Graded = std::vector<GradePiece>;

Graded graded_mul(const Graded& a, const Graded& b, long d, const RatFunc& tw, long hi)
{
    Graded r(std::min(a.size(), b.size()));
    for (size_t n = 0; n < r.size(); ++n)
        for (size_t i = 0; i <= n; ++i)
            for (auto& [s, l] : grade_mul(a[i], b[n - i], d, tw, hi)) {
                auto it = r[n].find(s);
                if (it == r[n].end())
                    r[n].emplace(s, l);
                else
                    it->second += l;
            }
    return r;
}

// exp of a grade >= 1 element
Graded graded_exp(const Graded& x, long d, const RatFunc& tw, long hi)
{
    Graded one(x.size());
    one[0][0] = Laurent{0, {RatFunc(1)}};
    Graded acc = one, term = one;
    for (size_t n = 1; n < x.size(); ++n) {
        term = graded_mul(term, x, d, tw, hi);
        for (auto& piece : term)
            for (auto& [s, l] : piece) l = l.scaled(RatFunc(rat(1, static_cast<long>(n))));
        for (size_t g = 0; g < acc.size(); ++g)
            for (auto& [s, l] : term[g]) {
                auto it = acc[g].find(s);
                if (it == acc[g].end())
                    acc[g].emplace(s, l);
                else
                    it->second += l;
            }
    }
    return acc;
}

// h = exp(-sigma/z) r for random sigma and a random z^{>=1} series r led by z e_0
Graded random_cone_point(std::mt19937& rng, long d, const RatFunc& tw, int grades)
{
    std::uniform_int_distribution<int> c(-3, 3);
    Graded sigma(static_cast<size_t>(grades)), r(static_cast<size_t>(grades));
    r[0][0] = Laurent{1, {RatFunc(1)}};
    for (int g = 1; g < grades; ++g)
        for (long s = 0; s < d; ++s) {
            sigma[static_cast<size_t>(g)][s] = Laurent{-1, {RatFunc(-c(rng))}};
            r[static_cast<size_t>(g)][s] = Laurent{1, {RatFunc(c(rng)), RatFunc(c(rng))}};
        }
    Graded h = graded_mul(graded_exp(sigma, d, tw, 4), r, d, tw, 4);
    for (auto& piece : h)
        for (auto& [s, l] : piece) l.trim();
    return h;
}

Laurent exp_minus_half(const RatFunc& s, int order)
{
    Laurent l;
    RatFunc t(1);
    RatFunc acc;
    for (int n = 0; n <= order; ++n) {
        acc += t;
        t *= -s / RatFunc(2) / RatFunc(n + 1);
    }
    l.set(0, acc);
    return l;
}

RatFunc kill_symbols_except(const RatFunc& f, int keep)
{
    std::map<int, RatFunc> zero;
    for (int v : f.variables())
        if (v != keep && var_name(v)[0] == 's') zero[v] = RatFunc();
    return f.subs(zero);
}

}  // namespace

TEST_CASE("cone: the unit series completes to itself")
{
    // positive part -z 1 of a point: the J-function at tau = 0, nothing to fill in
    auto sol = cone_complete(1, RatFunc(1), {GradePiece{{0, Laurent{1, {RatFunc(-1)}}}}});
    REQUIRE(sol.ok);
    CHECK(sol.leading_grade == 0);
    CHECK(sol.h.size() == 1);
    CHECK(sol.h[0].at(0).at(1) == RatFunc(-1));
}

TEST_CASE("cone: first-order string deformation is tangent")
{
    ConeSolver base(1);
    GradeProvider lead = [](int n, const GradePiece&) {
        return n == 0 ? GradePiece{{0, Laurent{1, {RatFunc(-1)}}}} : GradePiece{};
    };
    for (int n = 0; n < 3; ++n) REQUIRE(base.step(lead));
    TangentSolver tangent(base);
    // t 1 at grade 0: polynomial in z, tangent iff nothing polar is required
    CHECK(tangent.step([](int, const GradePiece& req) {
        CHECK(req.empty());
        return GradePiece{{0, Laurent{0, {RatFunc(1)}}}};
    }));
    // a bare 1/z at grade 1 is not tangent
    TangentSolver bad(base);
    REQUIRE(bad.step([](int, const GradePiece&) { return GradePiece{}; }));
    CHECK_FALSE(bad.step([](int, const GradePiece&) { return GradePiece{{0, Laurent{-1, {RatFunc(1)}}}}; }));
}

TEST_CASE("cone: random points pass, completion recovers them, mutations fail")
{
    std::mt19937 rng(7);
    for (long d : {1L, 2L, 3L}) {
        RatFunc tw = d == 2 ? RatFunc(alpha(0)) : RatFunc(1);
        for (int trial = 0; trial < 3; ++trial) {
            Graded h = random_cone_point(rng, d, tw, 4);
            auto chk = cone_check(d, tw, h);
            INFO("d=" << d << " " << chk.failure);
            CHECK(chk.ok);
            auto done = cone_complete(d, tw, h);
            REQUIRE(done.ok);
            for (size_t g = 0; g < h.size(); ++g)
                for (auto& [s, l] : h[g]) {
                    Laurent got = done.h[g].count(s) ? done.h[g].at(s) : Laurent{};
                    Laurent diff = got + l.scaled(RatFunc(-1));
                    diff.trim();
                    CHECK(diff.is_zero());
                }
            Graded bad = h;
            bad[2][0] += Laurent{-1, {RatFunc(1)}};
            auto m = cone_check(d, tw, bad);
            CHECK_FALSE(m.ok);
            CHECK(m.failure.find("grade 2") != std::string::npos);
        }
    }
}

TEST_CASE("cone: leading term must be a single z-linear vector")
{
    CHECK_FALSE(cone_check(2, RatFunc(1), {GradePiece{{0, Laurent{0, {RatFunc(1)}}}}}).ok);
    CHECK_FALSE(cone_check(2, RatFunc(1), {GradePiece{{0, Laurent{1, {RatFunc(1)}}}, {1, Laurent{1, {RatFunc(1)}}}}}).ok);
    CHECK_FALSE(cone_check(2, RatFunc(1), {GradePiece{}}).ok);
}

TEST_CASE("delta: exp and inverse series")
{
    Laurent x{1, {RatFunc(1)}};
    Laurent e = exp_series(x, 4);
    CHECK(e.at(3) == RatFunc(rat(1, 6)));
    Laurent inv = inverse_series(e, 4);
    Laurent one = mul(e, inv, 4);
    one.trim();
    CHECK(one.lo == 0);
    CHECK(one.c.size() == 1);
    CHECK_THROWS(exp_series(Laurent{0, {RatFunc(1)}}, 3));
    CHECK_THROWS(inverse_series(Laurent{1, {RatFunc(1)}}, 3));
}

TEST_CASE("delta: formal jets")
{
    GitData q = GitData::make({1, 1, 1, 1, 1}, {5});
    DeltaJet jet = delta_transform(q, 0, 3, 2);
    // s = 0 is the identity
    for (const auto& [m, l] : jet.factor)
        for (long e = l.lo; e <= l.hi(); ++e) {
            std::map<int, RatFunc> zero;
            for (int v : l.at(e).variables()) zero[v] = RatFunc();
            CHECK(l.at(e).subs(zero) == RatFunc(e == 0 ? 1 : 0));
        }
    // only s0_1: exp(s B_1(0)) = exp(-s/2) in the untwisted sector
    int s01 = s_symbol(0, 0);
    Laurent only = jet.factor.at(Rat(0));
    CHECK(kill_symbols_except(only.at(0), s01) == exp_minus_half(RatFunc::variable(s01), 3).at(0));
    // z-linear term with only s1_1
    int s11 = s_symbol(1, 0);
    Rat m = rat(1, 5);
    RatFunc lin = kill_symbols_except(jet.factor.at(m).at(1), s11);
    CHECK(lin == RatFunc::variable(s11) * RatFunc(bernoulli_poly(2, m) / 2));
    // Delta acts sector-wise: one jet per sector, nothing else
    CHECK(jet.factor.size() == 5);
}

TEST_CASE("delta: the c_k specialization")
{
    GitData q = GitData::make({1, 1, 1, 1, 1}, {5});
    DeltaJet jet = delta_specialize_ck(q, 0, 2);
    // N = 1: no st factors, so one atom only
    for (const auto& [m, c] : jet.constant) CHECK(c.exponents().size() <= 1);
    // z^1 coefficient from s_1^i = 0!/(-w_i alpha_k)
    Rat m = rat(1, 5);
    CHECK(jet.factor.at(m).at(1) == RatFunc(5) / (-alpha(0)) * RatFunc(bernoulli_poly(2, m) / 2));
    // distinct weights: every atom at m = 0 carries +1/2
    GitData g = GitData::make({1, 2}, {4});
    DeltaJet dj = delta_specialize_ck(g, 0, 1);
    CHECK(dj.constant.at(Rat(0)).exponents().size() == 2);
    for (const auto& [label, e] : dj.constant.at(Rat(0)).exponents()) CHECK(e == rat(1, 2));
    // cone convention flips the sign of the z-linear part
    DeltaJet cone = delta_specialize_ck(q, 0, 2, SignConvention::cone);
    CHECK(cone.factor.at(m).at(1) == -jet.factor.at(m).at(1));
}

TEST_CASE("delta: frame normalization is a monomial in the fixed-point weights")
{
    GitData t = GitData::make({1, 1, 1, 1}, {2, 2});
    CHECK(frame_normalization(t, 0, rat(1, 2)) == RatFunc(2) * (alpha(0) - alpha(1)));
    CHECK(frame_normalization(t, 0, Rat(1)) == (RatFunc(-1) * alpha(0)).pow(-4) * (RatFunc(2) * (alpha(0) - alpha(1))).pow(2));
}
