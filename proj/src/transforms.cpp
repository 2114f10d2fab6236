#include "conekit/transforms.hpp"

#include <functional>
#include <mutex>
#include <set>

namespace conekit {

RatFunc exp_X(int k) { return RatFunc::variable("X" + std::to_string(k + 1)); }
RatFunc exp_u() { return RatFunc::variable("u"); }
RatFunc pi_i() { return RatFunc::variable("pi_i"); }

std::vector<RatFunc> elementary_symmetric(const std::vector<RatFunc>& ys)
{
    std::vector<RatFunc> e(ys.size() + 1);
    e[0] = RatFunc(1);
    for (size_t i = 0; i < ys.size(); ++i)
        for (size_t r = i + 1; r >= 1; --r) e[r] += e[r - 1] * ys[i];
    return e;
}

RatFunc vandermonde_node(int k, const Rat& m) { return RatFunc(Cyc::exp_2pi_i(-m)) * exp_X(k); }

RatFunc ubar_node(int k, const Rat& m, const Rat& l) { return RatFunc(Cyc::exp_2pi_i(-(m + l))) * exp_X(k) * exp_u(); }

namespace {

// closed-form inverse of the Vandermonde matrix in the given nodes, row `self`
std::vector<RatFunc> inverse_row(const std::vector<RatFunc>& nodes, size_t self)
{
    size_t D = nodes.size();
    std::vector<RatFunc> others;
    for (size_t i = 0; i < D; ++i)
        if (i != self) others.push_back(nodes[i]);
    auto e = elementary_symmetric(others);
    std::vector<RatFunc> row(D);
    for (size_t rho = 0; rho < D; ++rho) {
        RatFunc t = e[D - rho - 1];
        if ((D - rho - 1) % 2) t = -t;
        for (const RatFunc& o : others) t /= nodes[self] - o;
        row[rho] = t;
    }
    return row;
}

size_t label_index(const GitData& g, int k, const Rat& m)
{
    auto labels = g.fixed_labels();
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i].first == k && labels[i].second == m) return i;
    throw MathError("inadmissible fixed label (" + std::to_string(k + 1) + ", " + rat_str(m) + ")");
}

}  // namespace

std::vector<ExpRat> ubar_terms(const GitData& g, int k, const Rat& m, const Rat& l)
{
    size_t self = label_index(g, k, m);
    std::vector<RatFunc> nodes;
    for (const auto& [kk, mm] : g.fixed_labels()) nodes.push_back(ubar_node(kk, mm, l));
    return inverse_row(nodes, self);
}

std::map<Rat, ExpRat> fourier_mukai_ubar(const GitData& g, int k, const Rat& m)
{
    static std::mutex mu;
    static std::map<std::string, std::map<Rat, ExpRat>> cache;
    std::string key = g.key() + "|" + std::to_string(k) + "|" + rat_str(m);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::map<Rat, ExpRat> out;
    for (const Rat& l : g.plus_sectors()) {
        RatFunc s;
        for (const RatFunc& t : ubar_terms(g, k, m, l)) s += t;
        out[l] = s;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, out);
    return out;
}

RatMatrix vandermonde_matrix(const GitData& g)
{
    auto labels = g.fixed_labels();
    long D = static_cast<long>(labels.size());
    RatMatrix V(D, D);
    for (long c = 0; c < D; ++c) {
        RatFunc x = vandermonde_node(labels[static_cast<size_t>(c)].first, labels[static_cast<size_t>(c)].second);
        RatFunc p(1);
        for (long rho = 0; rho < D; ++rho) {
            V(rho, c) = p;
            p *= x;
        }
    }
    return V;
}

RatMatrix ubar_matrix(const GitData& g)
{
    auto labels = g.fixed_labels();
    long D = static_cast<long>(labels.size());
    std::vector<RatFunc> nodes;
    for (const auto& [k, m] : labels) nodes.push_back(vandermonde_node(k, m));
    RatMatrix W(D, D);
    for (long r = 0; r < D; ++r) {
        auto row = inverse_row(nodes, static_cast<size_t>(r));
        for (long rho = 0; rho < D; ++rho) W(r, rho) = row[static_cast<size_t>(rho)];
    }
    return W;
}

VerifyReport verify_vandermonde(const GitData& g)
{
    VerifyReport rep{"vandermonde", true, {}};
    if (g.D != static_cast<long>(g.fixed_labels().size())) throw MathError("label count differs from D");
    RatMatrix P = ubar_matrix(g) * vandermonde_matrix(g);
    for (long i = 0; i < P.rows(); ++i)
        for (long j = 0; j < P.cols(); ++j) {
            RatFunc want = i == j ? RatFunc(1) : RatFunc();
            if (P(i, j) == want) continue;
            rep.pass = false;
            rep.records.push_back({"(" + std::to_string(i) + "," + std::to_string(j) + ")", false, P(i, j).str(), want.str()});
        }
    if (rep.pass) rep.records.push_back({"D=" + std::to_string(g.D), true, "identity", "identity"});
    return rep;
}

namespace {

VerifyReport ubar_poles_on(const GitData& g, int k, const Rat& m, const std::map<Rat, ExpRat>& coeffs, const std::string& name)
{
    VerifyReport rep{name, true, {}};
    int u = var("u");
    std::string lab = "k=" + std::to_string(k + 1) + " m=" + rat_str(m);
    for (const auto& [l, c] : coeffs) {
        for (int j = 0; j < g.N(); ++j) {
            bool exempt = j == k && l == neg_sector(m);
            RatFunc v = c.subs(u, exp_X(j).inverse());
            CheckRecord rec{lab + " (i) j=" + std::to_string(j + 1) + " l=" + rat_str(l), true, v.str(), exempt ? "exempt" : "0"};
            if (!exempt && !v.is_zero()) {
                rec.pass = false;
                rep.pass = false;
            }
            rep.records.push_back(rec);
        }
        for (int kp = 0; kp < g.N(); ++kp) {
            if (kp == k) continue;
            MPoly f = (exp_X(k) - exp_X(kp)).num().monic();
            int mult = c.den_multiplicity(f);
            CheckRecord rec{lab + " (ii) k'=" + std::to_string(kp + 1) + " l=" + rat_str(l), mult <= 1,
                            "pole order " + std::to_string(mult), "<= 1"};
            if (!rec.pass) rep.pass = false;
            rep.records.push_back(rec);
        }
    }
    return rep;
}

}  // namespace

VerifyReport verify_ubar_poles(const GitData& g, int k, const Rat& m)
{
    return ubar_poles_on(g, k, m, fourier_mukai_ubar(g, k, m), "ubar-poles");
}

VerifyReport ubar_poles_mutation(const GitData& g, int k, const Rat& m, int dropped_rho)
{
    std::map<Rat, ExpRat> coeffs;
    for (const Rat& l : g.plus_sectors()) {
        auto terms = ubar_terms(g, k, m, l);
        RatFunc s;
        for (size_t rho = 0; rho < terms.size(); ++rho)
            if (static_cast<int>(rho) != dropped_rho) s += terms[rho];
        coeffs[l] = s;
    }
    VerifyReport inner = ubar_poles_on(g, k, m, coeffs, "ubar-poles-mutated");
    VerifyReport rep{"ubar-poles-mutation", !inner.pass, {}};
    rep.records.push_back({"k=" + std::to_string(k + 1) + " m=" + rat_str(m) + " rho=" + std::to_string(dropped_rho), !inner.pass,
                           inner.pass ? "undetected" : inner.first_failure(), "detected"});
    return rep;
}

// truncated polynomials in H

namespace {

using HPoly = std::vector<RatFunc>;

HPoly hmul(const HPoly& a, const HPoly& b, size_t r)
{
    HPoly c(r);
    for (size_t i = 0; i < a.size() && i < r; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j < r; ++j)
            if (!b[j].is_zero()) c[i + j] += a[i] * b[j];
    }
    return c;
}

HPoly hexp(const RatFunc& coeff, size_t r, long max_power = -1)
{
    // exp(coeff * H)
    HPoly e(r);
    RatFunc p(1);
    for (size_t n = 0; n < r; ++n) {
        if (max_power >= 0 && static_cast<long>(n) > max_power) break;
        e[n] = p / RatFunc(factorial(static_cast<long>(n)));
        p *= coeff;
    }
    return e;
}

long degree_sum(const GitData& g)
{
    long s = 0;
    for (long dj : g.degrees) s += dj;
    return s;
}

Rat root_exponent(const GitData& g, const Rat& m)
{
    Rat s;
    for (long dj : g.degrees) s += frac(Rat(dj) * m);
    return s;
}

void check_plus_class(const GitData& g, const CohClass& c)
{
    for (const auto& [m, v] : c.entries)
        if (g.rank_plus(m) == 0) throw MathError("sector " + rat_str(m) + " has rank 0 on the plus side");
    c.validate(g, Phase::plus);
}

HPoly as_hpoly(const std::vector<RatFunc>& v, size_t r)
{
    HPoly h(r);
    for (size_t i = 0; i < v.size() && i < r; ++i) h[i] = v[i];
    return h;
}

RatFunc alpha_value(const QsdOptions& opt, int j)
{
    auto it = opt.alpha_values.find(j);
    return it == opt.alpha_values.end() ? alpha(j) : it->second;
}

}  // namespace

CohClass qsd_map(const GitData& g, const CohClass& c, const QsdOptions& opt)
{
    check_plus_class(g, c);
    RatFunc z = RatFunc::variable(z_var());
    CohClass out;
    for (const auto& [m, v] : c.entries) {
        size_t r = static_cast<size_t>(g.rank_plus(m));
        HPoly f = hexp(-pi_i() * RatFunc(degree_sum(g)) / z, r, opt.z_order);
        for (int j = 0; j < g.N(); ++j) {
            long dj = g.degrees[static_cast<size_t>(j)];
            RatFunc aj = alpha_value(opt, j);
            if (aj.is_zero()) throw MathError("division by the Euler class needs alpha_" + std::to_string(j + 1) + " != 0");
            // 1/(d_j (H - alpha_j)) = -(d_j alpha_j)^-1 sum_b (H / alpha_j)^b
            HPoly inv(r);
            for (size_t b = 0; b < r; ++b) inv[b] = -(RatFunc(dj) * aj).inverse() / aj.pow(static_cast<long>(b));
            f = hmul(f, inv, r);
        }
        RatFunc root(Cyc::exp_pi_i(root_exponent(g, m)));
        HPoly img = hmul(f, as_hpoly(v, r), r);
        for (auto& x : img) x *= root;
        out.entries[m] = img;
    }
    return out;
}

CohClass qsd_inverse(const GitData& g, const CohClass& c, const QsdOptions& opt)
{
    check_plus_class(g, c);
    RatFunc z = RatFunc::variable(z_var());
    CohClass out;
    for (const auto& [m, v] : c.entries) {
        size_t r = static_cast<size_t>(g.rank_plus(m));
        HPoly f = hexp(pi_i() * RatFunc(degree_sum(g)) / z, r, opt.z_order);
        for (int j = 0; j < g.N(); ++j) {
            long dj = g.degrees[static_cast<size_t>(j)];
            f = hmul(f, {-RatFunc(dj) * alpha_value(opt, j), RatFunc(dj)}, r);
        }
        RatFunc root(Cyc::exp_pi_i(-root_exponent(g, m)));
        HPoly img = hmul(f, as_hpoly(v, r), r);
        for (auto& x : img) x *= root;
        out.entries[m] = img;
    }
    return out;
}

CohClass pullback_to_Z(const GitData& g, const CohClass& c)
{
    CohClass out;
    for (const auto& [m, v] : c.entries) {
        long keep = g.rank_plus(m) - g.N();
        if (keep <= 0) continue;
        std::vector<RatFunc> w(v.begin(), v.begin() + std::min<long>(keep, static_cast<long>(v.size())));
        w.resize(static_cast<size_t>(keep));
        out.entries[m] = w;
    }
    return out;
}

RatFunc nonequivariant_limit(const RatFunc& f)
{
    std::map<int, RatFunc> zero;
    for (int k = 0; k < 12; ++k) zero[alpha_var(k)] = RatFunc();
    for (const auto& [p, e] : f.den())
        if (RatFunc(p).subs(zero).is_zero()) throw MathError("no non-equivariant limit: pole along " + p.str() + " in " + f.str());
    return f.subs(zero);
}

namespace {

// coefficients of the interpolating polynomial in H through (alpha_k, value_k)
std::vector<RatFunc> lagrange(const std::vector<int>& ks, const std::vector<RatFunc>& vals)
{
    size_t n = ks.size();
    std::vector<RatFunc> coef(n);
    for (size_t i = 0; i < n; ++i) {
        if (vals[i].is_zero()) continue;
        std::vector<RatFunc> others;
        RatFunc den(1);
        for (size_t j = 0; j < n; ++j)
            if (j != i) {
                others.push_back(alpha(ks[j]));
                den *= alpha(ks[i]) - alpha(ks[j]);
            }
        auto e = elementary_symmetric(others);
        RatFunc w = vals[i] / den;
        for (size_t p = 0; p < n; ++p) {
            RatFunc t = e[n - 1 - p];
            if ((n - 1 - p) % 2) t = -t;
            coef[p] += w * t;
        }
    }
    return coef;
}

std::vector<RatFunc> limit_sector(const GitData& g, const Rat& m, const std::function<RatFunc(int)>& value)
{
    std::vector<int> ks;
    std::vector<RatFunc> vals;
    for (int k = 0; k < g.N(); ++k)
        if (g.admissible(k, m)) {
            ks.push_back(k);
            vals.push_back(value(k));
        }
    auto coef = lagrange(ks, vals);
    for (auto& c : coef) c = nonequivariant_limit(c);
    return coef;
}

}  // namespace

CohClass nonequivariant_limit(const GitData& g, const EqClass& c)
{
    c.validate(g);
    std::set<Rat> sectors;
    for (const auto& [lab, v] : c.entries) sectors.insert(lab.m);
    CohClass out;
    for (const Rat& m : sectors) {
        auto coef = limit_sector(g, m, [&](int k) { return c.get(k, m); });
        bool nz = false;
        for (auto& x : coef) nz = nz || !x.is_zero();
        if (nz) out.entries[m] = coef;
    }
    return out;
}

QSeries<CohClass> nonequivariant_limit(const GitData& g, const ISeries& f)
{
    QSeries<CohClass> out(f.lo(), f.hi(), f.den());
    for (const auto& [e, vec] : f.terms()) {
        std::set<Rat> sectors;
        for (const auto& [lab, v] : vec.entries) sectors.insert(lab.m);
        CohClass c;
        for (const Rat& m : sectors) {
            auto coef = limit_sector(g, m, [&](int k) { return vec.get(k, m).to_ratfunc(); });
            bool nz = false;
            for (auto& x : coef) nz = nz || !x.is_zero();
            if (nz) c.entries[m] = coef;
        }
        if (!c.entries.empty()) out.set(e, c);
    }
    return out;
}

EqClass narrow_basis_class(const GitData& g, const Rat& m, int a)
{
    if (a < 0 || a >= g.rank_minus(m)) throw MathError("H-power out of range for sector " + rat_str(m));
    EqClass c;
    for (int k = 0; k < g.N(); ++k)
        if (g.admissible(k, m)) c.add(k, m, alpha(k).pow(a));
    return c;
}

EqClass broad_basis_class(const GitData& g, const Rat& m, int a)
{
    EqClass c = narrow_basis_class(g, m, a);
    EqClass out;
    for (const auto& [lab, v] : c.entries) {
        RatFunc e(1);
        for (long wi : g.weights)
            if (is_integer(Rat(wi) * m)) e *= RatFunc(wi) * alpha(lab.k);
        out.add(lab.k, lab.m, v * e);
    }
    return out;
}

// the limit along a ray alpha_k = eps c_k

namespace {

// Laurent series in eps with coefficients in Q(zeta)[H]/H^r
struct EpsRing {
    size_t r;
    long hi;  // eps-orders above this are dropped

    Laurent trunc(Laurent a) const
    {
        int h = var("H");
        for (auto& c : a.c) {
            if (c.is_zero()) continue;
            if (!c.is_polynomial()) throw MathError("eps-series coefficient is not polynomial in H");
            auto parts = c.num().as_poly_in(h);
            MPoly keep;
            for (size_t e = 0; e < parts.size() && e < r; ++e) keep += parts[e] * MPoly::variable(h, static_cast<int>(e));
            c = RatFunc(keep);
        }
        a.trim();
        return a;
    }
    Laurent mul(const Laurent& a, const Laurent& b) const { return trunc(conekit::mul(a, b, hi)); }

    static RatFunc H() { return RatFunc::variable("H"); }

    // e^(s H)
    RatFunc hexp(const Rat& s) const
    {
        RatFunc e, p(1);
        for (size_t n = 0; n < r; ++n) {
            e += p / RatFunc(factorial(static_cast<long>(n)));
            p *= RatFunc(s) * H();
        }
        return e;
    }

    // zeta e^(eps c)
    Laurent exp_eps(const Cyc& zeta, const Rat& c) const
    {
        Laurent l;
        Rat p(1);
        for (long n = 0; n <= std::max(hi, 0L) + 1; ++n) {
            l.set(n, RatFunc(zeta * Cyc(p / factorial(n))));
            p *= c;
        }
        l.trim();
        return l;
    }

    // inverse of a series with constant coefficients
    Laurent inverse(Laurent a) const
    {
        a.trim();
        if (a.is_zero()) throw MathError("division by the zero eps-series");
        long v = a.lo;
        RatFunc lead = a.at(v).inverse();
        std::vector<RatFunc> out;
        for (long n = 0; n <= hi + v; ++n) {
            RatFunc acc;
            for (long j = 1; j <= n; ++j) {
                RatFunc cj = a.at(v + j);
                if (!cj.is_zero()) acc += cj * out[static_cast<size_t>(n - j)];
            }
            out.push_back(n == 0 ? lead : -acc * lead);
        }
        return Laurent{-v, out};
    }
};

Rat rat_pow(const Rat& x, long n)
{
    Rat p(1);
    for (long i = 0; i < n; ++i) p *= x;
    return p;
}

// alpha_k -> eps c_k in a polynomial coefficient
Laurent eps_polynomial(const RatFunc& f, const std::vector<Rat>& ray)
{
    int eps = var("eps");
    RatFunc s = f;
    for (size_t k = 0; k < ray.size(); ++k) s = s.subs(alpha_var(static_cast<int>(k)), RatFunc(ray[k]) * RatFunc::variable(eps));
    if (!s.is_polynomial()) throw MathError("class coefficients must be polynomial in alpha");
    auto parts = s.num().as_poly_in(eps);
    Laurent l;
    for (size_t i = 0; i < parts.size(); ++i) l.set(static_cast<long>(i), RatFunc(parts[i]));
    l.trim();
    return l;
}

// the H-polynomial lim_{eps -> 0} of phi(Ubar(c)) in the plus sector l, before the root and 1/z factors
std::vector<RatFunc> ray_limit(const GitData& g, const EqClass& c, const Rat& l, const std::vector<Rat>& ray)
{
    size_t r = static_cast<size_t>(g.rank_plus(l));
    auto labels = g.fixed_labels();
    long pole_bound = static_cast<long>(r) + g.N();
    EpsRing ring{r, pole_bound};
    RatFunc H = EpsRing::H();
    Laurent total;
    for (const auto& [lab, coeff] : c.entries) {
        int k = lab.k;
        const Rat& m = lab.m;
        Laurent s = ring.trunc(eps_polynomial(coeff, ray));
        if (s.is_zero()) continue;
        for (size_t oi = 0; oi < labels.size(); ++oi) {
            auto [ko, mo] = labels[oi];
            if (ko == k && mo == m) continue;
            // 1/(y_km - y_o) = e^H / (zeta_a X_k - zeta_b X_o)
            Laurent diff = ring.exp_eps(Cyc::exp_2pi_i(-(m + l)), ray[static_cast<size_t>(k)]);
            diff += ring.exp_eps(Cyc::exp_2pi_i(-(mo + l)), ray[static_cast<size_t>(ko)]).scaled(RatFunc(-1));
            s = ring.mul(s, ring.inverse(diff).scaled(ring.hexp(Rat(1))));
            if (mo == neg_sector(l)) continue;  // paired with the Euler class below
            // 1 - zeta e^(eps c - H)
            Laurent num = ring.exp_eps(Cyc::exp_2pi_i(-(mo + l)), ray[static_cast<size_t>(ko)]).scaled(-ring.hexp(Rat(-1)));
            num += Laurent{0, {RatFunc(1)}};
            s = ring.mul(s, num);
        }
        for (int j = 0; j < g.N(); ++j) {
            long dj = g.degrees[static_cast<size_t>(j)];
            Rat cj = ray[static_cast<size_t>(j)];
            if (j == k && neg_sector(l) == m) {
                // 1/(d_k (H - eps c_k)) = -1/(d_k eps c_k) sum_b (H / (eps c_k))^b
                Laurent geo{-static_cast<long>(r), std::vector<RatFunc>(r)};
                for (size_t b = 0; b < r; ++b)
                    geo.set(-static_cast<long>(b) - 1, -H.pow(static_cast<long>(b)) / RatFunc(Rat(dj) * rat_pow(cj, static_cast<long>(b) + 1)));
                s = ring.mul(s, geo);
                continue;
            }
            // (1 - e^(eps c_j - H)) / (d_j (H - eps c_j)) = E(eps c_j - H) / d_j, E(t) = (e^t - 1)/t
            Laurent E;
            for (long n = 0; n <= ring.hi + static_cast<long>(r); ++n) {
                // (eps c - H)^n / (n+1)!
                RatFunc invf = RatFunc(Rat(1) / factorial(n + 1));
                for (long p = 0; p <= n && p <= ring.hi; ++p) {
                    long q = n - p;
                    if (q >= static_cast<long>(r)) continue;
                    Rat bin = binomial(n, p);
                    RatFunc term = invf * RatFunc(bin * rat_pow(cj, p)) * (-H).pow(q);
                    E.set(p, E.at(p) + term);
                }
            }
            s = ring.mul(s, ring.trunc(E).scaled(RatFunc(rat(1, dj))));
        }
        total += s;
    }
    total = ring.trunc(total);
    for (long e = total.lo; e < 0; ++e)
        if (!total.at(e).is_zero())
            throw MathError("no non-equivariant limit: eps^" + std::to_string(e) + " term " + total.at(e).str() + " in sector " + rat_str(l));
    RatFunc lim = total.at(0);
    int h = var("H");
    auto parts = lim.num().as_poly_in(h);
    std::vector<RatFunc> out(r);
    for (size_t i = 0; i < parts.size() && i < r; ++i) out[i] = RatFunc(parts[i]);
    return out;
}

}  // namespace

ComposeResult compose_V(const GitData& g, const EqClass& c, const QsdOptions& opt)
{
    auto rep = check_assumptions(g);
    if (!rep.a1 || !rep.a2 || !rep.cy) throw MathError("compose_V needs (A1), (A2) and the Calabi-Yau condition");
    c.validate(g);
    ComposeResult res;
    std::set<Rat> broad;
    for (const auto& [lab, v] : c.entries)
        if (!g.is_narrow(lab.m)) broad.insert(lab.m);
    res.broad_sectors.assign(broad.begin(), broad.end());
    res.narrow = broad.empty();
    std::vector<Rat> ray1, ray2;
    for (int k = 0; k < g.N(); ++k) {
        ray1.push_back(Rat(k + 1));
        ray2.push_back(Rat(2 * k * k + 3));
    }
    RatFunc z = RatFunc::variable(z_var());
    CohClass plus;
    for (const Rat& l : g.plus_sectors()) {
        auto lim = ray_limit(g, c, l, ray1);
        if (ray_limit(g, c, l, ray2) != lim) throw MathError("no non-equivariant limit: direction-dependent value in sector " + rat_str(l));
        size_t r = lim.size();
        HPoly f = hexp(-pi_i() * RatFunc(degree_sum(g)) / z, r, opt.z_order);
        HPoly img = hmul(f, lim, r);
        RatFunc root(Cyc::exp_pi_i(root_exponent(g, l)));
        bool nz = false;
        for (auto& x : img) {
            x *= root;
            nz = nz || !x.is_zero();
        }
        if (nz) plus.entries[l] = img;
    }
    res.image = pullback_to_Z(g, plus);
    return res;
}

}  // namespace conekit
