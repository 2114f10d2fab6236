#include "conekit/series.hpp"

#include <algorithm>
#include <sstream>

namespace conekit {

ZRat ZVec::get(int k, const Rat& m) const
{
    auto it = entries.find(FixedLabel{k, m});
    return it == entries.end() ? ZRat() : it->second;
}

void ZVec::add(int k, const Rat& m, const ZRat& v)
{
    if (v.is_zero()) return;
    auto [it, inserted] = entries.try_emplace(FixedLabel{k, m}, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) entries.erase(it);
    }
}

ZVec& ZVec::operator+=(const ZVec& o)
{
    for (const auto& [l, v] : o.entries) add(l.k, l.m, v);
    return *this;
}

bool operator==(const ZVec& a, const ZVec& b)
{
    for (const auto& [l, v] : a.entries)
        if (b.get(l.k, l.m) != v) return false;
    for (const auto& [l, v] : b.entries)
        if (a.get(l.k, l.m) != v) return false;
    return true;
}

std::vector<Rat> b_range(const Rat& target, const Rat& upper, bool lower_strict, bool upper_strict)
{
    std::vector<Rat> r;
    Rat b = frac(target);
    if (lower_strict && b == 0) b = 1;
    for (; upper_strict ? b < upper : b <= upper; b += 1) r.push_back(b);
    return r;
}

namespace {

RatFunc Zf() { return RatFunc::variable(z_var()); }

// positive a in (1/d)Z with -a inside the window
std::vector<Rat> window_a(const Window& w, long den)
{
    std::vector<Rat> r;
    for (long t = 1;; ++t) {
        Rat a = rat(t, den);
        if (-a < w.lo) break;
        if (-a <= w.hi) r.push_back(a);
    }
    return r;
}

}  // namespace

ZRat i_coefficient(const GitData& g, int k, const Rat& a)
{
    if (a <= 0 || !g.admissible(k, a)) throw MathError("I-function coefficient needs a > 0 with a d_k integral");
    RatFunc scalar(1);
    std::vector<ZRat::Root> num{{RatFunc(), 1}}, den;
    RatFunc ak = alpha(k);
    for (long wi : g.weights) {
        Rat x = a * Rat(wi);
        for (const Rat& b : b_range(x, x, false, true)) {
            // -b z - w_i alpha_k
            if (b == 0)
                scalar *= RatFunc(-wi) * ak;
            else {
                scalar *= RatFunc(-b);
                num.emplace_back(RatFunc(-wi) * ak / RatFunc(b), 1);
            }
        }
    }
    for (int j = 0; j < g.N(); ++j) {
        long dj = g.degrees[static_cast<size_t>(j)];
        Rat x = a * Rat(dj);
        RatFunc shift = RatFunc(dj) * (ak - alpha(j));
        for (const Rat& b : b_range(x, x, true, true)) {
            // b z + d_j (alpha_k - alpha_j)
            scalar /= RatFunc(b);
            den.emplace_back(-shift / RatFunc(b), 1);
        }
    }
    return ZRat::from_roots(scalar, num, den);
}

ISeries local_i_function(const GitData& g, int k, const Window& w)
{
    long dk = g.degrees.at(static_cast<size_t>(k));
    ISeries s(w.lo, w.hi, g.d);
    for (const Rat& a : window_a(w, dk)) {
        ZVec v;
        v.add(k, frac(a), i_coefficient(g, k, a));
        s.set(-a, v);
    }
    return s;
}

ISeries glsm_i_function(const GitData& g, const Window& w)
{
    int h = var("H");
    RatFunc H = RatFunc::variable(h), z = Zf();
    ISeries s(w.lo, w.hi, g.d);
    for (const Rat& a : window_a(w, g.d)) {
        // the restriction of the hyperplane class to P_k is alpha_k
        RatFunc num = z;
        // kept as separate factors so every denominator stays linear in z
        std::vector<RatFunc> den;
        for (long wi : g.weights) {
            Rat x = a * Rat(wi);
            for (const Rat& b : b_range(x, x, false, true)) num *= RatFunc(-b) * z - RatFunc(wi) * H;
        }
        for (int j = 0; j < g.N(); ++j) {
            long dj = g.degrees[static_cast<size_t>(j)];
            Rat x = a * Rat(dj);
            for (const Rat& b : b_range(x, x, true, true)) den.push_back(RatFunc(b) * z + RatFunc(dj) * (H - alpha(j)));
        }
        ZVec v;
        for (int k = 0; k < g.N(); ++k) {
            if (!g.admissible(k, a)) continue;
            RatFunc c = num.subs(h, alpha(k));
            for (const RatFunc& f : den) c /= f.subs(h, alpha(k));
            v.add(k, frac(a), ZRat::from_ratfunc(c));
        }
        if (!v.is_zero()) s.set(-a, v);
    }
    return s;
}

namespace {

// truncated polynomials in a nilpotent H: c[e] multiplies H^e
using HPoly = std::vector<RatFunc>;

HPoly hmul(const HPoly& a, const HPoly& b, size_t r)
{
    HPoly c(r);
    for (size_t i = 0; i < a.size() && i < r; ++i)
        for (size_t j = 0; j < b.size() && i + j < r; ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

NoneqISeries glsm_i_function_noneq(const GitData& g, const Window& w)
{
    NoneqISeries out;
    out.a2_warning = !check_assumptions(g).a2;
    out.series = QSeries<CohClass>(w.lo, w.hi, g.d);
    RatFunc z = Zf();
    for (const Rat& a : window_a(w, g.d)) {
        Rat m = frac(a);
        size_t r = static_cast<size_t>(g.rank_minus(m));
        if (r == 0) continue;
        HPoly acc(r);
        acc[0] = z;
        for (long wi : g.weights) {
            Rat x = a * Rat(wi);
            for (const Rat& b : b_range(x, x, false, true)) acc = hmul(acc, {RatFunc(-b) * z, RatFunc(wi)}, r);
        }
        for (long dj : g.degrees) {
            Rat x = a * Rat(dj);
            for (const Rat& b : b_range(x, x, true, true)) {
                // 1/(bz + d_j H) = sum_e (-d_j H)^e / (bz)^(e+1)
                HPoly inv(r);
                RatFunc bz = RatFunc(b) * z;
                for (size_t e = 0; e < r; ++e) inv[e] = RatFunc(-dj).pow(static_cast<long>(e)) / bz.pow(static_cast<long>(e + 1));
                acc = hmul(acc, inv, r);
            }
        }
        bool nonzero = std::any_of(acc.begin(), acc.end(), [](const RatFunc& x) { return !x.is_zero(); });
        if (!nonzero) continue;
        CohClass c;
        c.entries[m] = acc;
        out.series.set(-a, c);
        if (!g.is_narrow(m) && std::find(out.non_narrow_support.begin(), out.non_narrow_support.end(), m) == out.non_narrow_support.end())
            out.non_narrow_support.push_back(m);
    }
    return out;
}

ISeries epsilon_i_function(const GitData& g, int k, long eps, const Window& w, const ClassCallback& c)
{
    if (eps < 0) throw MathError("epsilon must be non-negative");
    long dk = g.degrees.at(static_cast<size_t>(k));
    ISeries s(w.lo, w.hi, g.d);
    RatFunc z = Zf();
    for (long a = 0; a < eps; ++a) {
        Rat e = -rat(a + 1, dk);
        if (!s.in_window(e)) continue;
        RatFunc cls = c ? c(a) : RatFunc(1);
        // (z/d_k) z^-a / a! times the dual d_k 1_((a+1)/d_k)
        RatFunc coeff = z.pow(1 - a) / RatFunc(factorial(a)) * cls;
        ZVec v;
        v.add(k, frac(-e), ZRat::from_ratfunc(coeff));
        s.accumulate(e, v);
    }
    return s;
}

Rat psi_integral(const std::vector<long>& a)
{
    long n = static_cast<long>(a.size());
    if (n < 3) throw MathError("descendant integrals need at least 3 marks");
    long s = 0;
    for (long x : a) {
        if (x < 0) throw MathError("negative psi power");
        s += x;
    }
    if (s != n - 3) return 0;
    Rat r = factorial(n - 3);
    for (long x : a) r /= factorial(x);
    return r;
}

Rat psi_integral_string(std::vector<long> a)
{
    long n = static_cast<long>(a.size());
    if (n < 3) throw MathError("descendant integrals need at least 3 marks");
    long s = 0;
    for (long x : a) s += x;
    if (s != n - 3) return 0;
    if (n == 3) return 1;
    // remove a mark without psi and distribute the lowering
    auto it = std::find(a.begin(), a.end(), 0L);
    if (it == a.end()) return 0;
    a.erase(it);
    Rat r = 0;
    for (auto& x : a)
        if (x > 0) {
            --x;
            r += psi_integral_string(a);
            ++x;
        }
    return r;
}

Rat required_degree(long dk, const std::vector<Mark>& marks, Theory th)
{
    Rat s = 0;
    for (const auto& mk : marks) s += mk.m;
    if (th == Theory::gw_point) return -s;
    return rat(static_cast<long>(marks.size()) - 2, dk) - s;
}

namespace {

bool monodromy_ok(const std::vector<Mark>& marks)
{
    Rat s = 0;
    for (const auto& mk : marks) s += mk.m;
    return is_integer(s);
}

}  // namespace

Rat untwisted_correlator(long dk, const std::vector<Mark>& marks, const Rat& beta, Theory th)
{
    if (marks.size() < 3) return 0;
    if (beta != required_degree(dk, marks, th) || !monodromy_ok(marks)) return 0;
    std::vector<long> a;
    for (const auto& mk : marks) a.push_back(mk.psi);
    return psi_integral(a) / Rat(dk);
}

std::string correlator_note(long dk, const std::vector<Mark>& marks, const Rat& beta, Theory th)
{
    if (marks.size() < 3) return "unstable";
    if (beta != required_degree(dk, marks, th)) return "wrong degree";
    if (!monodromy_ok(marks)) return "monodromy does not multiply out";
    return "ok";
}

int insertion_var(Theory th, int k, long t)
{
    return var(std::string(th == Theory::gw_point ? "tau" : "t") + std::to_string(k + 1) + "_" + std::to_string(t));
}

namespace {

// all multisets of size n over {0..d-1}, as counts
void multisets(long d, int n, std::vector<int>& cur, size_t pos, std::vector<std::vector<int>>& out)
{
    if (pos + 1 == cur.size()) {
        cur[pos] = n;
        out.push_back(cur);
        return;
    }
    for (int c = 0; c <= n; ++c) {
        cur[pos] = c;
        multisets(d, n - c, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

std::set<int> insertion_vars(const GitData& g, int k, Theory th)
{
    std::set<int> vs;
    long dk = g.degrees.at(static_cast<size_t>(k));
    for (long t = 0; t < dk; ++t) vs.insert(insertion_var(th, k, t));
    return vs;
}

}  // namespace

QSeries<EqClass> untwisted_j_function(const GitData& g, int k, const Window& w, int degree, Theory th)
{
    long dk = g.degrees.at(static_cast<size_t>(k));
    QSeries<EqClass> s(w.lo, w.hi, dk);
    RatFunc z = Zf();
    auto put = [&](const Rat& e, const Rat& m, const RatFunc& v) {
        if (!s.in_window(e)) return;
        EqClass c;
        c.add(k, m, v);
        s.accumulate(e, c);
    };
    if (th == Theory::gw_point)
        put(0, 0, z);
    else
        put(rat(1, dk), rat(1, dk), z);
    if (degree >= 1)
        for (long t = 0; t < dk; ++t) put(0, rat(t, dk), RatFunc::variable(insertion_var(th, k, t)));
    for (int n = 2; n <= degree; ++n) {
        std::vector<std::vector<int>> ms;
        std::vector<int> cur(static_cast<size_t>(dk), 0);
        multisets(dk, n, cur, 0, ms);
        for (const auto& c : ms) {
            RatFunc mono(1);
            std::vector<Mark> marks;
            for (long t = 0; t < dk; ++t) {
                int ct = c[static_cast<size_t>(t)];
                if (ct == 0) continue;
                mono *= RatFunc::variable(insertion_var(th, k, t)).pow(ct) / RatFunc(factorial(ct));
                for (int i = 0; i < ct; ++i) marks.push_back({rat(t, dk), 0});
            }
            // the last mark carries 1/(z - psi); only psi^(n-2) survives
            for (long t = 0; t < dk; ++t) {
                Rat m = rat(t, dk);
                auto all = marks;
                all.push_back({m, n - 2});
                Rat beta = required_degree(dk, all, th);
                Rat val = untwisted_correlator(dk, all, beta, th);
                if (val == 0) continue;
                // dual of 1_m is d_k Q^{m + <-m>} 1_{<-m>}
                Rat e = beta + m + neg_sector(m);
                put(e, neg_sector(m), mono * RatFunc(val * Rat(dk)) * z.pow(1 - n));
            }
        }
    }
    return s;
}

QSeries<EqClass> z_d_unit(const QSeries<EqClass>& j, int k, Theory th)
{
    int v = insertion_var(th, k, 0);
    RatFunc z = Zf();
    QSeries<EqClass> r(j.lo(), j.hi(), j.den());
    for (const auto& [e, c] : j.terms()) {
        EqClass out;
        for (const auto& [l, f] : c.entries) {
            for (const auto& [p, mult] : f.den())
                if (p.contains(v)) throw MathError("insertion variable in a denominator");
            RatFunc d = RatFunc::fraction(f.num().derivative(v), f.den_poly());
            out.add(l.k, l.m, z * d);
        }
        if (!out.entries.empty()) r.accumulate(e, out);
    }
    return r;
}

QSeries<EqClass> substitute_insertions(const QSeries<EqClass>& j, const GitData& g, int k, int degree)
{
    long dk = g.degrees.at(static_cast<size_t>(k));
    auto vs = insertion_vars(g, k, Theory::gw_point);
    std::map<int, MPoly> rename;
    for (long t = 0; t < dk; ++t) rename[insertion_var(Theory::gw_point, k, t)] = MPoly::variable(insertion_var(Theory::spin_inf, k, t));
    QSeries<EqClass> r(j.lo(), j.hi(), dk);
    for (const auto& [e, c] : j.terms())
        for (const auto& [l, f] : c.entries)
            for (int n = 0; n <= degree; ++n) {
                MPoly part = f.num().homogeneous_part(vs, n);
                if (part.is_zero()) continue;
                EqClass out;
                out.add(l.k, l.m, RatFunc::fraction(part.subs(rename), f.den_poly()));
                r.accumulate(e + rat(n, dk), out);
            }
    return r;
}

QSeries<EqClass> truncate_insertions(const QSeries<EqClass>& j, const GitData& g, int k, Theory th, int degree)
{
    auto vs = insertion_vars(g, k, th);
    QSeries<EqClass> r(j.lo(), j.hi(), j.den());
    for (const auto& [e, c] : j.terms()) {
        EqClass out;
        for (const auto& [l, f] : c.entries) {
            MPoly keep;
            for (int n = 0; n <= degree; ++n) keep += f.num().homogeneous_part(vs, n);
            out.add(l.k, l.m, RatFunc::fraction(keep, f.den_poly()));
        }
        if (!out.entries.empty()) r.accumulate(e, out);
    }
    return r;
}

}  // namespace conekit
