#include "conekit/poly.hpp"

#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace conekit {

namespace {

struct SymbolTable {
    std::mutex mu;
    std::unordered_map<std::string, int> ids;
    std::deque<std::string> names;  // deque keeps references stable

    // fixed registration order keeps the monomial order, and hence printed
    // output, independent of which computation touches a symbol first
    SymbolTable()
    {
        auto add = [this](const std::string& n) {
            ids.emplace(n, static_cast<int>(names.size()));
            names.push_back(n);
        };
        for (int i = 1; i <= 12; ++i) add("a" + std::to_string(i));
        add("z");
        add("H");
        add("u");
        for (int i = 1; i <= 12; ++i) add("X" + std::to_string(i));
        add("pi_i");
        add("eps");
    }
};

SymbolTable& symbols()
{
    static SymbolTable table;
    return table;
}

}  // namespace

int var(const std::string& name)
{
    auto& s = symbols();
    std::lock_guard<std::mutex> lock(s.mu);
    auto it = s.ids.find(name);
    if (it != s.ids.end()) return it->second;
    int id = static_cast<int>(s.names.size());
    s.names.push_back(name);
    s.ids.emplace(name, id);
    return id;
}

const std::string& var_name(int v)
{
    auto& s = symbols();
    std::lock_guard<std::mutex> lock(s.mu);
    return s.names.at(static_cast<size_t>(v));
}

Monomial mono_mul(const Monomial& a, const Monomial& b)
{
    Monomial r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b)
{
    Monomial r;
    size_t i = 0;
    for (const auto& [v, e] : b) {
        while (i < a.size() && a[i].first < v) r.push_back(a[i++]);
        if (i == a.size() || a[i].first != v || a[i].second < e) return std::nullopt;
        if (a[i].second > e) r.emplace_back(v, a[i].second - e);
        ++i;
    }
    while (i < a.size()) r.push_back(a[i++]);
    return r;
}

Monomial mono_gcd(const Monomial& a, const Monomial& b)
{
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            ++i;
        else if (b[j].first < a[i].first)
            ++j;
        else {
            r.emplace_back(a[i].first, std::min(a[i].second, b[j].second));
            ++i;
            ++j;
        }
    }
    return r;
}

int mono_deg(const Monomial& m, int v)
{
    for (const auto& [w, e] : m)
        if (w == v) return e;
    return 0;
}

int mono_total(const Monomial& m)
{
    int s = 0;
    for (const auto& p : m) s += p.second;
    return s;
}

bool MonoGreater::operator()(const Monomial& a, const Monomial& b) const
{
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first != b[j].first) return a[i].first < b[j].first;
        if (a[i].second != b[j].second) return a[i].second > b[j].second;
        ++i;
        ++j;
    }
    return i < a.size() && j == b.size();
}

MPoly::MPoly(const Cyc& c)
{
    if (!c.is_zero()) t_.emplace(Monomial{}, c);
}

MPoly MPoly::variable(int v, int e)
{
    MPoly p;
    if (e == 0)
        p.t_.emplace(Monomial{}, Cyc(1));
    else
        p.t_.emplace(Monomial{{v, e}}, Cyc(1));
    return p;
}

MPoly MPoly::term(const Monomial& m, const Cyc& c)
{
    MPoly p;
    if (!c.is_zero()) p.t_.emplace(m, c);
    return p;
}

bool MPoly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

Cyc MPoly::constant_term() const
{
    auto it = t_.find(Monomial{});
    return it == t_.end() ? Cyc(0) : it->second;
}

const Monomial& MPoly::leading_monomial() const
{
    if (t_.empty()) throw MathError("leading monomial of zero polynomial");
    return t_.begin()->first;
}

const Cyc& MPoly::leading_coeff() const
{
    if (t_.empty()) throw MathError("leading coefficient of zero polynomial");
    return t_.begin()->second;
}

void MPoly::add_term(const Monomial& m, const Cyc& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

MPoly MPoly::operator-() const
{
    MPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o)
{
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b)
{
    MPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

MPoly& MPoly::operator*=(const MPoly& o)
{
    *this = *this * o;
    return *this;
}

MPoly& MPoly::operator*=(const Cyc& c)
{
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

bool operator==(const MPoly& a, const MPoly& b)
{
    if (a.t_.size() != b.t_.size()) return false;
    auto i = a.t_.begin();
    auto j = b.t_.begin();
    for (; i != a.t_.end(); ++i, ++j)
        if (i->first != j->first || i->second != j->second) return false;
    return true;
}

bool operator<(const MPoly& a, const MPoly& b)
{
    if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size();
    MonoGreater gt;
    auto i = a.t_.begin();
    auto j = b.t_.begin();
    for (; i != a.t_.end(); ++i, ++j) {
        if (i->first != j->first) return gt(i->first, j->first);
        if (i->second != j->second) return i->second < j->second;
    }
    return false;
}

MPoly MPoly::pow(unsigned e) const
{
    MPoly r(1), b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return r;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const
{
    if (d.is_zero()) throw MathError("polynomial division by zero");
    if (is_zero()) return MPoly();
    const Monomial& lm = d.leading_monomial();
    Cyc lc_inv = d.leading_coeff().inverse();
    MPoly rem = *this, q;
    while (!rem.is_zero()) {
        auto qm = mono_div(rem.leading_monomial(), lm);
        if (!qm) return std::nullopt;
        Cyc qc = rem.leading_coeff() * lc_inv;
        MPoly t = MPoly::term(*qm, qc);
        q.add_term(*qm, qc);
        rem -= t * d;
    }
    return q;
}

int MPoly::degree(int v) const
{
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, mono_deg(m, v));
    return d;
}

int MPoly::total_degree() const
{
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, mono_total(m));
    return d;
}

std::set<int> MPoly::variables() const
{
    std::set<int> s;
    for (const auto& [m, c] : t_)
        for (const auto& p : m) s.insert(p.first);
    return s;
}

MPoly MPoly::coeff(int v, int e) const
{
    MPoly r;
    for (const auto& [m, c] : t_) {
        if (mono_deg(m, v) != e) continue;
        Monomial rest;
        for (const auto& p : m)
            if (p.first != v) rest.push_back(p);
        r.add_term(rest, c);
    }
    return r;
}

std::vector<MPoly> MPoly::as_poly_in(int v) const
{
    std::vector<MPoly> r(static_cast<size_t>(degree(v)) + 1);
    for (const auto& [m, c] : t_) {
        Monomial rest;
        int e = 0;
        for (const auto& p : m) {
            if (p.first == v)
                e = p.second;
            else
                rest.push_back(p);
        }
        r[static_cast<size_t>(e)].add_term(rest, c);
    }
    return r;
}

MPoly MPoly::subs(int v, const MPoly& value) const
{
    if (!contains(v)) return *this;
    auto parts = as_poly_in(v);
    MPoly r;
    for (size_t e = parts.size(); e-- > 0;) {
        r = r * value;
        r += parts[e];
    }
    return r;
}

MPoly MPoly::subs(const std::map<int, MPoly>& values) const
{
    MPoly r = *this;
    for (const auto& [v, p] : values) r = r.subs(v, p);
    return r;
}

MPoly MPoly::homogeneous_part(const std::set<int>& vs, int deg) const
{
    MPoly r;
    for (const auto& [m, c] : t_) {
        int d = 0;
        for (const auto& p : m)
            if (vs.count(p.first)) d += p.second;
        if (d == deg) r.t_.emplace(m, c);
    }
    return r;
}

MPoly MPoly::derivative(int v) const
{
    MPoly r;
    for (const auto& [m, c] : t_) {
        int e = mono_deg(m, v);
        if (e == 0) continue;
        Monomial n;
        for (const auto& p : m)
            if (p.first != v)
                n.push_back(p);
            else if (e > 1)
                n.emplace_back(v, e - 1);
        r.add_term(n, c * Cyc(e));
    }
    return r;
}

Monomial MPoly::monomial_content() const
{
    if (t_.empty()) return {};
    Monomial g = t_.begin()->first;
    for (const auto& [m, c] : t_) {
        g = mono_gcd(g, m);
        if (g.empty()) break;
    }
    return g;
}

MPoly MPoly::monic() const
{
    if (is_zero()) return *this;
    MPoly r = *this;
    r *= leading_coeff().inverse();
    return r;
}

std::string MPoly::str() const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        std::string cs = c.str();
        bool neg = c.is_rational() && c.rational() < 0;
        if (neg) cs = (-c).str();
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = c.is_rational() && (c.rational() == 1 || c.rational() == -1);
        if (m.empty()) {
            os << cs;
            continue;
        }
        if (!unit) os << cs << "*";
        bool firstv = true;
        for (const auto& [v, e] : m) {
            if (!firstv) os << "*";
            firstv = false;
            os << var_name(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace conekit
