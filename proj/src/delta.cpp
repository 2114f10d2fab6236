#include "conekit/delta.hpp"

namespace conekit {

Laurent exp_series(const Laurent& x, long hi)
{
    if (x.lo < 1) {
        for (long e = x.lo; e <= std::min(0L, x.hi()); ++e)
            if (!x.at(e).is_zero()) throw MathError("exp_series needs a series without constant or polar terms");
    }
    // n r_n = sum_{j>=1} j x_j r_{n-j}
    std::vector<RatFunc> r(static_cast<size_t>(std::max(hi, 0L) + 1));
    r[0] = RatFunc(1);
    for (long n = 1; n <= hi; ++n) {
        RatFunc s;
        for (long j = 1; j <= n; ++j) {
            RatFunc xj = x.at(j);
            if (!xj.is_zero()) s += RatFunc(j) * xj * r[static_cast<size_t>(n - j)];
        }
        r[static_cast<size_t>(n)] = s / RatFunc(n);
    }
    Laurent out{0, r};
    out.trim();
    return out;
}

Laurent inverse_series(const Laurent& x, long hi)
{
    RatFunc c0 = x.at(0);
    if (c0.is_zero()) throw MathError("inverse_series needs an invertible constant term");
    for (long e = x.lo; e < 0; ++e)
        if (!x.at(e).is_zero()) throw MathError("inverse_series needs a power series");
    std::vector<RatFunc> r(static_cast<size_t>(std::max(hi, 0L) + 1));
    RatFunc inv = c0.inverse();
    r[0] = inv;
    for (long n = 1; n <= hi; ++n) {
        RatFunc s;
        for (long j = 1; j <= n; ++j) s += x.at(j) * r[static_cast<size_t>(n - j)];
        r[static_cast<size_t>(n)] = -s * inv;
    }
    Laurent out{0, r};
    out.trim();
    return out;
}

DeltaParams ck_parameters(const GitData& g, int k, int l_max, SignConvention sc)
{
    DeltaParams p;
    p.s.assign(static_cast<size_t>(l_max + 1), {});
    p.st.assign(static_cast<size_t>(l_max + 1), {});
    RatFunc ak = alpha(k);
    for (int l = 1; l <= l_max; ++l) {
        Rat f = factorial(l - 1);
        for (long wi : g.weights) {
            RatFunc base = sc == SignConvention::printed ? RatFunc(-wi) * ak : RatFunc(wi) * ak;
            p.s[static_cast<size_t>(l)].push_back(RatFunc(f) / base.pow(l));
        }
        for (int j = 0; j < g.N(); ++j) {
            long dj = g.degrees[static_cast<size_t>(j)];
            if (j == k) {
                p.st[static_cast<size_t>(l)].push_back(RatFunc());
                continue;
            }
            RatFunc diff = RatFunc(dj) * (ak - alpha(j));
            RatFunc base = sc == SignConvention::printed ? diff : -diff;
            p.st[static_cast<size_t>(l)].push_back(RatFunc(f) / base.pow(l));
        }
    }
    return p;
}

int s_symbol(int l, int i) { return var("s" + std::to_string(l) + "_" + std::to_string(i + 1)); }
int st_symbol(int l, int j) { return var("st" + std::to_string(l) + "_" + std::to_string(j + 1)); }

DeltaParams formal_parameters(const GitData& g, int k, int l_max)
{
    DeltaParams p;
    p.s.assign(static_cast<size_t>(l_max + 1), {});
    p.st.assign(static_cast<size_t>(l_max + 1), {});
    for (int l = 0; l <= l_max; ++l) {
        for (int i = 0; i < g.M(); ++i) p.s[static_cast<size_t>(l)].push_back(RatFunc::variable(s_symbol(l, i)));
        for (int j = 0; j < g.N(); ++j)
            p.st[static_cast<size_t>(l)].push_back(j == k ? RatFunc() : RatFunc::variable(st_symbol(l, j)));
    }
    return p;
}

RatFunc delta_coefficient(const GitData& g, int k, const Rat& m, int l, const DeltaParams& p)
{
    RatFunc c;
    Rat f = factorial(l + 1);
    const auto& s = p.s.at(static_cast<size_t>(l));
    const auto& st = p.st.at(static_cast<size_t>(l));
    for (int i = 0; i < g.M(); ++i) {
        Rat b = bernoulli_poly(l + 1, frac(Rat(g.weights[static_cast<size_t>(i)]) * m)) / f;
        if (b != 0) c += s[static_cast<size_t>(i)] * RatFunc(b);
    }
    for (int j = 0; j < g.N(); ++j) {
        if (j == k) continue;
        Rat b = bernoulli_poly(l + 1, frac(-Rat(g.degrees[static_cast<size_t>(j)]) * m)) / f;
        if (b != 0) c += st[static_cast<size_t>(j)] * RatFunc(b);
    }
    return c;
}

DeltaJet delta_transform(const GitData& g, int k, int s_order, int z_order)
{
    DeltaParams p = formal_parameters(g, k, z_order);
    DeltaJet jet;
    for (const Rat& m : g.sectors_at(k)) {
        Laurent x{0, {}};
        for (int l = 0; l <= z_order; ++l) x.set(l, delta_coefficient(g, k, m, l, p));
        // every summand of x has s-degree one, so the exponential truncates exactly
        Laurent acc{0, {RatFunc(1)}}, term{0, {RatFunc(1)}};
        for (int n = 1; n <= s_order; ++n) {
            term = mul(term, x, z_order).scaled(RatFunc(rat(1, n)));
            acc += term;
        }
        acc.trim();
        jet.factor[m] = acc;
    }
    return jet;
}

DeltaJet delta_specialize_ck(const GitData& g, int k, int z_order, SignConvention sc)
{
    DeltaParams p = ck_parameters(g, k, z_order, sc);
    long dk = g.degrees.at(static_cast<size_t>(k));
    RatFunc ak = alpha(k);
    DeltaJet jet;
    for (const Rat& m : g.sectors_at(k)) {
        Laurent x{0, {}};
        for (int l = 1; l <= z_order; ++l) x.set(l, delta_coefficient(g, k, m, l, p));
        jet.factor[m] = exp_series(x, z_order);
        // exp(s_0 B_1(x)) with s_0 = -ln(weight)
        PuiseuxMonomial c(2 * dk);
        for (long wi : g.weights) {
            RatFunc v = sc == SignConvention::printed ? RatFunc(wi) * ak : RatFunc(-wi) * ak;
            Rat e = -bernoulli_poly(1, frac(Rat(wi) * m));
            c *= PuiseuxMonomial::atom(v.str(), v, e, 2 * dk);
        }
        for (int j = 0; j < g.N(); ++j) {
            if (j == k) continue;
            long dj = g.degrees[static_cast<size_t>(j)];
            RatFunc diff = RatFunc(dj) * (alpha(j) - ak);
            RatFunc v = sc == SignConvention::printed ? diff : -diff;
            Rat e = -bernoulli_poly(1, frac(-Rat(dj) * m));
            c *= PuiseuxMonomial::atom(v.str(), v, e, 2 * dk);
        }
        jet.constant[m] = c;
    }
    return jet;
}

RatFunc frame_normalization(const GitData& g, int k, const Rat& a)
{
    RatFunc ak = alpha(k), r(1);
    for (long wi : g.weights) {
        long e = to_long(floor_of(Rat(wi) * a));
        if (e != 0) r *= (RatFunc(-wi) * ak).pow(-e);
    }
    for (int j = 0; j < g.N(); ++j) {
        if (j == k) continue;
        long dj = g.degrees[static_cast<size_t>(j)];
        long e = to_long(ceil_of(Rat(dj) * a));
        if (e != 0) r *= (RatFunc(dj) * (ak - alpha(j))).pow(e);
    }
    return r;
}

}  // namespace conekit
