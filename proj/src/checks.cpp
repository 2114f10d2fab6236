#include "conekit/checks.hpp"

#include <functional>

namespace conekit {

namespace {

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

std::string tuple_str(const std::vector<long>& a)
{
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

}  // namespace

VerifyReport verify_psi_integrals(const GitData& g, int n_max)
{
    VerifyReport rep{"psi", true, {}};
    long count = 0;
    for (int n = 3; n <= n_max; ++n) {
        std::vector<long> cur;
        profiles(n, n - 3, cur, [&](const std::vector<long>& a) {
            ++count;
            Rat lhs = psi_integral(a), rhs = psi_integral_string(a);
            if (lhs == rhs) return;
            rep.pass = false;
            rep.records.push_back({tuple_str(a), false, rat_str(lhs), rat_str(rhs)});
        });
    }
    rep.records.push_back({"profiles n<=" + std::to_string(n_max), rep.pass, std::to_string(count) + " compared", "equal"});
    for (int k = 0; k < g.N(); ++k) {
        long dk = g.degrees[static_cast<size_t>(k)];
        std::vector<Mark> units(3, Mark{Rat(0), 0});
        Rat v = untwisted_correlator(dk, units, required_degree(dk, units, Theory::gw_point), Theory::gw_point);
        CheckRecord rec{"<1 1 1> at k=" + std::to_string(k + 1), v == rat(1, dk), rat_str(v), rat_str(rat(1, dk))};
        if (!rec.pass) rep.pass = false;
        rep.records.push_back(rec);
    }
    return rep;
}

VerifyReport verify_unit_derivative(const GitData& g, int k, int degree, const Window& w)
{
    VerifyReport rep{"unit-derivative", true, {}};
    auto lhs = truncate_insertions(z_d_unit(untwisted_j_function(g, k, w, degree + 1, Theory::spin_inf), k, Theory::spin_inf), g, k,
                                   Theory::spin_inf, degree);
    auto rhs = substitute_insertions(untwisted_j_function(g, k, w, degree, Theory::gw_point), g, k, degree);
    std::set<std::pair<Rat, Rat>> keys;
    for (const auto* s : {&lhs, &rhs})
        for (const auto& [e, c] : s->terms())
            for (const auto& [lab, v] : c.entries) keys.insert({e, lab.m});
    for (const auto& [e, m] : keys) {
        RatFunc a = lhs.get(e).get(k, m), b = rhs.get(e).get(k, m);
        CheckRecord rec{"k=" + std::to_string(k + 1) + " e=" + rat_str(e) + " m=" + rat_str(m), a == b, a.str(), b.str()};
        if (!rec.pass) rep.pass = false;
        rep.records.push_back(rec);
    }
    if (keys.empty()) throw MathError("insufficient window for the unit-derivative check");
    return rep;
}

VerifyReport verify_narrow_support(const GitData& g, const Window& w)
{
    VerifyReport rep{"narrow-support", true, {}};
    auto ne = glsm_i_function_noneq(g, w);
    if (ne.a2_warning) {
        rep.pass = false;
        rep.records.push_back({"assumption", false, "A2 fails", "A2 holds"});
    }
    for (long t = 1;; ++t) {
        Rat a = rat(t, g.d);
        if (-a < w.lo) break;
        if (-a > w.hi) continue;
        Rat m = frac(a);
        int J = g.rank_minus(m), I = g.rank_plus(m);
        if (J == 0 || I == 0) continue;  // no class, or narrow
        bool vanishes = ne.series.find(-a) == nullptr;
        CheckRecord rec{"e=" + rat_str(-a) + " m=" + rat_str(m), vanishes && I >= J,
                        std::string(vanishes ? "zero" : "nonzero") + ", |I|=" + std::to_string(I),
                        "zero, |J|=" + std::to_string(J)};
        if (!rec.pass) rep.pass = false;
        rep.records.push_back(rec);
    }
    return rep;
}

}  // namespace conekit
