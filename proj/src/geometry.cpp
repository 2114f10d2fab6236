#include "conekit/geometry.hpp"

#include <numeric>
#include <sstream>

namespace conekit {

GitData GitData::make(std::vector<long> w, std::vector<long> deg)
{
    if (w.empty() || deg.empty()) throw std::invalid_argument("weights and degrees must be non-empty");
    for (long x : w)
        if (x <= 0) throw std::invalid_argument("weights must be positive");
    for (long x : deg)
        if (x <= 0) throw std::invalid_argument("degrees must be positive");
    if (deg.size() > 12) throw std::invalid_argument("at most 12 degrees are supported");
    long gcd = 0;
    for (long x : w) gcd = gcd_l(gcd, x);
    for (long x : deg) gcd = gcd_l(gcd, x);
    if (gcd != 1) throw std::invalid_argument("gcd of weights and degrees must be 1");
    GitData g;
    g.weights = std::move(w);
    g.degrees = std::move(deg);
    g.d = 1;
    g.D = 0;
    for (long x : g.degrees) {
        g.d = lcm_l(g.d, x);
        g.D += x;
    }
    return g;
}

long GitData::weight_sum() const { return std::accumulate(weights.begin(), weights.end(), 0L); }

std::vector<Rat> GitData::sectors() const
{
    std::vector<Rat> r;
    for (long t = 0; t < d; ++t) r.push_back(rat(t, d));
    return r;
}

std::vector<Rat> GitData::sectors_at(int k) const
{
    std::vector<Rat> r;
    long dk = degrees.at(static_cast<size_t>(k));
    for (long t = 0; t < dk; ++t) r.push_back(rat(t, dk));
    return r;
}

bool GitData::admissible(int k, const Rat& m) const
{
    if (k < 0 || k >= N()) return false;
    return is_integer(m * Rat(degrees[static_cast<size_t>(k)]));
}

int GitData::rank_minus(const Rat& m) const
{
    int r = 0;
    for (long dj : degrees)
        if (is_integer(m * Rat(dj))) ++r;
    return r;
}

int GitData::rank_plus(const Rat& m) const
{
    int r = 0;
    for (long wi : weights)
        if (is_integer(m * Rat(wi))) ++r;
    return r;
}

bool GitData::is_narrow(const Rat& m) const { return rank_minus(m) > 0 && rank_plus(m) == 0; }

std::vector<Rat> GitData::narrow_sectors() const
{
    std::vector<Rat> r;
    for (const Rat& m : sectors())
        if (is_narrow(m)) r.push_back(m);
    return r;
}

std::vector<std::pair<int, Rat>> GitData::fixed_labels() const
{
    std::vector<std::pair<int, Rat>> r;
    for (int k = 0; k < N(); ++k)
        for (const Rat& m : sectors_at(k)) r.emplace_back(k, m);
    return r;
}

std::vector<Rat> GitData::plus_sectors() const
{
    // plus-side multiplicities live in (1/lcm w)Z/Z
    long lw = 1;
    for (long x : weights) lw = lcm_l(lw, x);
    std::vector<Rat> r;
    for (long t = 0; t < lw; ++t) {
        Rat m = rat(t, lw);
        if (rank_plus(m) > 0) r.push_back(m);
    }
    return r;
}

std::string GitData::key() const
{
    std::ostringstream os;
    os << "w=";
    for (size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
    os << ";d=";
    for (size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
    return os.str();
}

int alpha_var(int k) { return var("a" + std::to_string(k + 1)); }
RatFunc alpha(int k) { return RatFunc::variable(alpha_var(k)); }

Rat neg_sector(const Rat& m) { return frac(-m); }

AssumptionReport check_assumptions(const GitData& g)
{
    AssumptionReport r;
    long gcd = 0;
    for (long x : g.weights) gcd = gcd_l(gcd, x);
    for (long x : g.degrees) gcd = gcd_l(gcd, x);
    r.gcd_ok = gcd == 1;
    r.a1 = true;
    for (int i = 0; i < g.M() && r.a1; ++i)
        for (int j = 0; j < g.N(); ++j)
            if (g.degrees[static_cast<size_t>(j)] % g.weights[static_cast<size_t>(i)] != 0) {
                r.a1 = false;
                r.a1_witness = std::make_pair(i, j);
                break;
            }
    r.a2 = true;
    for (const Rat& m : g.sectors()) {
        int ri = g.rank_plus(m), rj = g.rank_minus(m);
        if (ri > 0 && ri < rj) {
            r.a2 = false;
            r.a2_witness = m;
            break;
        }
    }
    r.cy = g.weight_sum() == g.D;
    return r;
}

RankReport state_rank_check(const GitData& g)
{
    RankReport r;
    for (const Rat& m : g.sectors()) r.minus_rank += g.rank_minus(m);
    for (const Rat& m : g.plus_sectors()) r.plus_rank += g.rank_plus(m);
    r.minus_ok = r.minus_rank == g.D;
    r.cy = g.weight_sum() == g.D;
    r.equal = r.minus_rank == r.plus_rank;
    return r;
}

RatFunc euler_normal(const GitData& g, int k, const Rat& m)
{
    if (!g.admissible(k, m)) throw MathError("inadmissible fixed label (" + std::to_string(k + 1) + ", " + rat_str(m) + ")");
    RatFunc e(1);
    for (int j = 0; j < g.N(); ++j) {
        if (j == k) continue;
        long dj = g.degrees[static_cast<size_t>(j)];
        if (is_integer(m * Rat(dj))) e *= RatFunc(dj) * (alpha(k) - alpha(j));
    }
    return e;
}

RatFunc EqClass::get(int k, const Rat& m) const
{
    auto it = entries.find(FixedLabel{k, m});
    return it == entries.end() ? RatFunc() : it->second;
}

void EqClass::add(int k, const Rat& m, const RatFunc& v)
{
    if (v.is_zero()) return;
    auto [it, inserted] = entries.try_emplace(FixedLabel{k, m}, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) entries.erase(it);
    }
}

EqClass& EqClass::operator+=(const EqClass& o)
{
    for (const auto& [l, v] : o.entries) add(l.k, l.m, v);
    return *this;
}

EqClass EqClass::scaled(const RatFunc& s) const
{
    EqClass r;
    for (const auto& [l, v] : entries) r.add(l.k, l.m, v * s);
    return r;
}

void EqClass::validate(const GitData& g) const
{
    for (const auto& [l, v] : entries)
        if (!g.admissible(l.k, l.m))
            throw MathError("inadmissible fixed label (" + std::to_string(l.k + 1) + ", " + rat_str(l.m) + ")");
}

CohClass CohClass::basis(const GitData& g, const Rat& m, int power, Phase p)
{
    int r = g.rank(p, m);
    if (r == 0) throw MathError("sector " + rat_str(m) + " has rank 0");
    if (power < 0 || power >= r) throw MathError("H-power out of range for sector " + rat_str(m));
    CohClass c;
    c.entries[m].assign(static_cast<size_t>(r), RatFunc());
    c.entries[m][static_cast<size_t>(power)] = RatFunc(1);
    return c;
}

CohClass& CohClass::operator+=(const CohClass& o)
{
    for (const auto& [m, v] : o.entries) {
        auto& mine = entries[m];
        if (mine.size() < v.size()) mine.resize(v.size());
        for (size_t i = 0; i < v.size(); ++i) mine[i] += v[i];
    }
    return *this;
}

RatFunc CohClass::get(const Rat& m, int power) const
{
    auto it = entries.find(m);
    if (it == entries.end() || power < 0 || power >= static_cast<int>(it->second.size())) return RatFunc();
    return it->second[static_cast<size_t>(power)];
}

CohClass CohClass::scaled(const RatFunc& s) const
{
    CohClass r = *this;
    for (auto& [m, v] : r.entries)
        for (auto& x : v) x *= s;
    return r;
}

bool CohClass::is_zero() const
{
    for (const auto& [m, v] : entries)
        for (const auto& x : v)
            if (!x.is_zero()) return false;
    return true;
}

void CohClass::validate(const GitData& g, Phase p) const
{
    for (const auto& [m, v] : entries)
        if (static_cast<int>(v.size()) != g.rank(p, m))
            throw MathError("coefficient list for sector " + rat_str(m) + " does not match its rank");
}

RatFunc pairing_minus(const GitData& g, const EqClass& a, const EqClass& b)
{
    RatFunc s;
    for (const auto& [la, va] : a.entries)
        for (const auto& [lb, vb] : b.entries) {
            if (la.k != lb.k || !is_integer(la.m + lb.m)) continue;
            long dk = g.degrees.at(static_cast<size_t>(la.k));
            s += va * vb / (RatFunc(dk) * euler_normal(g, la.k, la.m));
        }
    return s;
}

std::vector<Rat> edge_degree_set(int k, int kp, const Rat& m, const Rat& mp, const Rat& cutoff)
{
    if (k == kp) throw MathError("edge degrees need distinct fixed points");
    std::vector<Rat> r;
    // largest negative element of Z - m - m'
    Rat f = frac(-m - mp);
    Rat beta = f == 0 ? Rat(-1) : f - 1;
    for (; beta >= cutoff; beta -= 1) r.push_back(beta);
    return r;
}

}  // namespace conekit
