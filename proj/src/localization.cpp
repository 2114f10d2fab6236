#include "conekit/localization.hpp"

#include "conekit/delta.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

namespace conekit {

namespace {

std::string label_str(int k, const Rat& m) { return "k=" + std::to_string(k + 1) + " m=" + rat_str(m); }

// numerator and denominator products shared by the recursion term and the edge term
RatFunc edge_products(const GitData& g, const EdgeData& e, bool num_from_zero, bool den_from_zero)
{
    RatFunc ak = alpha(e.k), akp = alpha(e.kp), r(1);
    for (long wi : g.weights) {
        Rat x = -e.beta * Rat(wi);
        for (const Rat& b : b_range(e.m * Rat(wi), x, !num_from_zero, true))
            r *= RatFunc(b / e.beta) * (akp - ak) - RatFunc(wi) * ak;
    }
    for (int j = 0; j < g.N(); ++j) {
        long dj = g.degrees[static_cast<size_t>(j)];
        Rat x = -e.beta * Rat(dj);
        for (const Rat& b : b_range(e.m * Rat(dj), x, !den_from_zero, false)) {
            RatFunc f = RatFunc(b / e.beta) * (ak - akp) + RatFunc(dj) * (ak - alpha(j));
            if (!f.is_zero()) r /= f;
        }
    }
    return r;
}

}  // namespace

void check_edge(const GitData& g, const EdgeData& e)
{
    if (e.k < 0 || e.kp < 0 || e.k >= g.N() || e.kp >= g.N()) throw MathError("edge endpoint out of range");
    if (e.k == e.kp) throw MathError("an edge joins two distinct fixed points");
    if (!g.admissible(e.k, e.m) || !g.admissible(e.kp, e.mp)) throw MathError("edge flag sector is not admissible");
    if (e.beta >= 0 || !is_integer(e.beta + e.m + e.mp))
        throw MathError("edge degree " + rat_str(e.beta) + " is not in the edge degree set");
}

RatFunc recursion_coefficient(const GitData& g, const EdgeData& e)
{
    check_edge(g, e);
    long dkp = g.degrees[static_cast<size_t>(e.kp)];
    return edge_products(g, e, true, false) / RatFunc(Rat(dkp) * e.beta);
}

RatFunc edge_contribution(const GitData& g, const EdgeData& e)
{
    check_edge(g, e);
    long dk = g.degrees[static_cast<size_t>(e.k)], dkp = g.degrees[static_cast<size_t>(e.kp)];
    return edge_products(g, e, false, true) / RatFunc(Rat(dk * dkp) * e.beta);
}

RatFunc unstable_vertex_contribution(int kv, int kve, const Rat& beta_e, long a)
{
    return ((alpha(kv) - alpha(kve)) / RatFunc(beta_e)).pow(a);
}

RatFunc flag_contribution(const GitData& g, int k, const Rat& m, bool unstable_vertex)
{
    if (unstable_vertex) return RatFunc(1);
    return euler_normal(g, k, m);
}

RatFunc edge_pole(int k, int kp, const Rat& beta) { return (alpha(kp) - alpha(k)) / RatFunc(beta); }

std::string VerifyReport::first_failure() const
{
    for (const auto& r : records)
        if (!r.pass) return condition + " " + r.tuple + ": " + r.lhs + " vs " + r.rhs;
    return {};
}

namespace {

std::vector<Rat> grid(const Rat& lo, const Rat& hi, long den)
{
    std::vector<Rat> r;
    Rat step = rat(1, den);
    Rat e = ceil_of(hi * Rat(den)) / Rat(den);
    if (e > hi) e -= step;
    for (; e >= lo; e -= step) r.push_back(e);
    return r;
}

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
}

}  // namespace

VerifyReport verify_C1(const ISeries& f, const GitData& g)
{
    VerifyReport rep{"C1", true, {}};
    for (const auto& [e, vec] : f.terms())
        for (const auto& [lab, c] : vec.entries) {
            CheckRecord rec;
            rec.tuple = label_str(lab.k, lab.m) + " e=" + rat_str(e);
            std::vector<std::string> locs, bad;
            for (const RatFunc& p : c.pole_locations()) {
                locs.push_back(p.str());
                if (p.is_zero()) continue;
                bool ok = false;
                for (int kp = 0; kp < g.N() && !ok; ++kp) {
                    if (kp == lab.k) continue;
                    RatFunc q = (alpha(kp) - alpha(lab.k)) / p;
                    if (!q.is_constant() || !q.constant().is_rational()) continue;
                    Rat beta = q.constant().rational();
                    if (beta >= 0) continue;
                    Rat mp = frac(-beta - lab.m);
                    ok = g.admissible(kp, mp);
                }
                if (!ok) bad.push_back(p.str());
            }
            rec.lhs = "[" + join(locs) + "]";
            rec.pass = bad.empty();
            rec.rhs = rec.pass ? "allowed" : "unexpected [" + join(bad) + "]";
            if (!rec.pass) rep.pass = false;
            rep.records.push_back(std::move(rec));
        }
    return rep;
}

VerifyReport verify_C2(const ISeries& f, const GitData& g, const Rat& cutoff)
{
    VerifyReport rep{"C2", true, {}};
    auto labels = g.fixed_labels();
    auto exps = grid(f.lo(), f.hi(), f.den());
    for (const auto& [k, m] : labels)
        for (const auto& [kp, mp] : labels) {
            if (k == kp) continue;
            for (const Rat& beta : edge_degree_set(k, kp, m, mp, cutoff)) {
                EdgeData ed{k, kp, m, mp, beta};
                RatFunc rc = recursion_coefficient(g, ed);
                RatFunc pole = edge_pole(k, kp, beta);
                Rat target = neg_sector(mp);
                int compared = 0;
                for (const Rat& e : exps) {
                    // only exponents carrying sector m at k
                    if (frac(-e) != m || !g.admissible(k, frac(-e))) continue;
                    if (!f.in_window(e - beta)) continue;
                    ++compared;
                    RatFunc lhs = f.get(e).get(k, m).residue(pole);
                    RatFunc rhs = rc * f.get(e - beta).get(kp, target).eval(pole);
                    if (lhs == rhs) continue;
                    rep.pass = false;
                    rep.records.push_back({label_str(k, m) + " k'=" + std::to_string(kp + 1) + " m'=" + rat_str(mp) +
                                               " beta=" + rat_str(beta) + " e=" + rat_str(e),
                                           false, lhs.str(), rhs.str()});
                }
                if (compared == 0)
                    throw MathError("insufficient window for C2 at " + label_str(k, m) + " k'=" + std::to_string(kp + 1) +
                                    " m'=" + rat_str(mp) + " beta=" + rat_str(beta));
                rep.records.push_back({label_str(k, m) + " k'=" + std::to_string(kp + 1) + " m'=" + rat_str(mp) +
                                           " beta=" + rat_str(beta),
                                       true, std::to_string(compared) + " exponents", "equal"});
            }
        }
    return rep;
}

int deformation_var() { return var("x"); }
RatFunc deformation_x() { return RatFunc::variable(deformation_var()); }

std::pair<ZRat, ZRat> split_deformation(const ZRat& c)
{
    int x = deformation_var();
    auto check = [&](const RatFunc& r) {
        for (const auto& [p, mult] : r.den())
            if (p.contains(x)) throw MathError("deformation variable in a denominator");
        if (r.num().degree(x) > 1) throw MathError("only first-order deformations (x^2 = 0) are supported");
    };
    for (const auto& p : c.poles()) {
        if (p.at.contains(x)) throw MathError("pole location depends on the deformation variable");
        for (const auto& v : p.c) check(v);
    }
    for (const auto& v : c.poly()) check(v);
    ZRat c0 = c.subs(x, RatFunc());
    ZRat c1 = c.subs(x, RatFunc(1)) - c0;
    return {c0, c1};
}

std::pair<ISeries, ISeries> split_deformation(const ISeries& f)
{
    ISeries a(f.lo(), f.hi(), f.den()), b(f.lo(), f.hi(), f.den());
    for (const auto& [e, vec] : f.terms()) {
        ZVec v0, v1;
        for (const auto& [lab, c] : vec.entries) {
            auto [c0, c1] = split_deformation(c);
            v0.add(lab.k, lab.m, c0);
            v1.add(lab.k, lab.m, c1);
        }
        if (!v0.is_zero()) a.set(e, v0);
        if (!v1.is_zero()) b.set(e, v1);
    }
    return {a, b};
}

namespace {

// the integral frame at fixed point k, shared by the verifier and the solver
struct Frame {
    const GitData& g;
    int k;
    long dk;
    long zo;  // z-order of the grade pieces
    std::map<Rat, Laurent> mult, mult_inv;

    Frame(const GitData& g_, int k_, int top_grade, long margin) : g(g_), k(k_), dk(g_.degrees[static_cast<size_t>(k_)])
    {
        zo = top_grade + margin;
        long order = 2 * zo + 2;
        auto jet = delta_specialize_ck(g, k, static_cast<int>(order), SignConvention::cone);
        for (const auto& [m, fac] : jet.factor) {
            mult_inv[m] = fac;
            mult[m] = inverse_series(fac, order);
        }
    }

    Rat a_of(int grade) const { return rat(grade, dk); }
    long sector(int grade) const { return grade % dk; }

    // R_a M_m(z) times the Laurent expansion at 0
    Laurent lift(int grade, const ZRat& c) const
    {
        Rat a = a_of(grade);
        Laurent l = c.laurent_at_zero(zo);
        Laurent h = mul(mult.at(frac(a)), l, zo).scaled(frame_normalization(g, k, a));
        h.trim();
        return h;
    }

    // the principal part at 0 whose lift has the given negative part
    ZRat principal_for(int grade, const Laurent& required) const
    {
        Rat a = a_of(grade);
        if (required.is_zero()) return ZRat();
        Laurent x = required.scaled(frame_normalization(g, k, a).inverse());
        Laurent p = mul(mult_inv.at(frac(a)), x, -1);
        ZRat r;
        for (long e = p.lo; e < 0; ++e) {
            RatFunc c = p.at(e);
            if (!c.is_zero()) r += ZRat::pole_term(RatFunc(), static_cast<int>(-e), c);
        }
        return r;
    }
};

int top_grade(const Rat& lo, long dk) { return static_cast<int>(to_long(floor_of(-lo * Rat(dk)))); }

std::string failure_at(int k, const std::string& what) { return "fixed point " + std::to_string(k + 1) + ": " + what; }

}  // namespace

VerifyReport verify_C3(const ISeries& f_in, const GitData& g, const ConeOptions& opt)
{
    VerifyReport rep{"C3", true, {}};
    auto [f, f1] = split_deformation(f_in);
    for (const auto& [e, vec] : f.terms())
        if (e > 0) throw MathError("C3 expects no positive Q-exponents");
    for (int k = 0; k < g.N(); ++k) {
        long dk = g.degrees[static_cast<size_t>(k)];
        int G = top_grade(f.lo(), dk);
        Frame fr(g, k, G, opt.z_margin);
        std::vector<GradePiece> h(static_cast<size_t>(G + 1));
        for (int n = 0; n <= G; ++n) {
            Rat a = fr.a_of(n);
            ZRat c = f.get(-a).get(k, frac(a));
            Laurent l = fr.lift(n, c);
            if (!l.is_zero()) h[static_cast<size_t>(n)][fr.sector(n)] = l;
        }
        CheckRecord rec;
        rec.tuple = "k=" + std::to_string(k + 1) + " grades 0.." + std::to_string(G);
        ConeSolver solver(dk);
        for (int n = 0; n <= G; ++n)
            if (!solver.step([&](int, const GradePiece&) { return h[static_cast<size_t>(n)]; })) break;
        rec.pass = solver.ok();
        rec.lhs = rec.pass ? "on cone" : solver.failure();
        if (rec.pass && solver.leading_grade() < 0 && !f.terms().empty()) {
            // a nonzero series whose fixed-point part vanishes has no leading term
            rec.pass = false;
            rec.lhs = "zero at this fixed point";
        }
        rec.rhs = "leading grade " + std::to_string(solver.leading_grade());
        if (!rec.pass) rep.pass = false;
        rep.records.push_back(rec);
        if (!f1.terms().empty() && solver.ok() && solver.leading_grade() >= 0) {
            // tangent check on the grades the base point determines
            TangentSolver tan(solver);
            CheckRecord trec;
            int tg = std::min(G, solver.final_exp_grades() - 1);
            trec.tuple = "k=" + std::to_string(k + 1) + " x-linear grades 0.." + std::to_string(tg);
            for (int n = 0; n <= tg; ++n) {
                Rat a = fr.a_of(n);
                Laurent l = fr.lift(n, f1.get(-a).get(k, frac(a)));
                GradePiece piece;
                if (!l.is_zero()) piece[fr.sector(n)] = l;
                if (!tan.step([&](int, const GradePiece&) { return piece; })) break;
            }
            trec.pass = tan.ok();
            trec.lhs = trec.pass ? "tangent" : tan.failure();
            trec.rhs = "";
            if (!trec.pass) rep.pass = false;
            rep.records.push_back(trec);
        }
    }
    return rep;
}

ISeries positive_part(const ISeries& f)
{
    ISeries r(f.lo(), f.hi(), f.den());
    for (const auto& [e, vec] : f.terms()) {
        ZVec v;
        for (const auto& [lab, c] : vec.entries) v.add(lab.k, lab.m, c.polynomial_part());
        if (!v.is_zero()) r.set(e, v);
    }
    return r;
}

ISeries negate_z(const ISeries& f)
{
    ISeries r(f.lo(), f.hi(), f.den());
    for (const auto& [e, vec] : f.terms()) {
        ZVec v;
        for (const auto& [lab, c] : vec.entries) v.add(lab.k, lab.m, c.negate_z());
        r.set(e, v);
    }
    return r;
}

namespace {

class LevelSolver {
public:
    // base level when `base` is null, otherwise the x-linear level over it
    LevelSolver(const GitData& g, const Rat& lo, long margin, const std::vector<std::unique_ptr<ConeSolver>>* base)
        : g_(g), lo_(lo), base_(base), out_(lo, Rat(0), g.d)
    {
        for (int k = 0; k < g.N(); ++k) {
            frames_.emplace_back(g, k, top_grade(lo, g.degrees[static_cast<size_t>(k)]), margin);
            if (base)
                tangent_.push_back(std::make_unique<TangentSolver>(*(*base)[static_cast<size_t>(k)]));
            else
                cone_.push_back(std::make_unique<ConeSolver>(g.degrees[static_cast<size_t>(k)]));
        }
    }

    void run(const ISeries& positive)
    {
        for (const Rat& e : grid(lo_, Rat(0), g_.d)) {
            ZVec vec;
            for (int k = 0; k < g_.N(); ++k) {
                long dk = g_.degrees[static_cast<size_t>(k)];
                if (!is_integer(-e * Rat(dk))) continue;
                int grade = static_cast<int>(to_long(floor_of(-e * Rat(dk))));
                Rat m = frac(-e);
                ZRat known = positive.get(e).get(k, m);
                add_recursion(known, k, m, e);
                const Frame& fr = frames_[static_cast<size_t>(k)];
                ZRat principal;
                auto provider = [&](int n, const GradePiece& required) {
                    auto it = required.find(fr.sector(n));
                    principal = it == required.end() ? ZRat() : fr.principal_for(n, it->second);
                    GradePiece piece;
                    Laurent l = fr.lift(n, known + principal);
                    if (!l.is_zero()) piece[fr.sector(n)] = l;
                    return piece;
                };
                bool ok;
                std::string why;
                if (base_) {
                    auto& t = *tangent_[static_cast<size_t>(k)];
                    if (t.next_grade() != grade) throw MathError("grade bookkeeping out of step");
                    ok = t.step(provider);
                    why = t.failure();
                } else {
                    auto& c = *cone_[static_cast<size_t>(k)];
                    if (c.next_grade() != grade) throw MathError("grade bookkeeping out of step");
                    ok = c.step(provider);
                    why = c.failure();
                }
                if (!ok) throw MathError("cone solve failed, " + failure_at(k, why));
                vec.add(k, m, known + principal);
            }
            if (!vec.is_zero()) out_.set(e, vec);
        }
    }

    const ISeries& result() const { return out_; }
    const std::vector<std::unique_ptr<ConeSolver>>& solvers() const { return cone_; }

private:
    const GitData& g_;
    Rat lo_;
    const std::vector<std::unique_ptr<ConeSolver>>* base_;
    ISeries out_;
    std::vector<Frame> frames_;
    std::vector<std::unique_ptr<ConeSolver>> cone_;
    std::vector<std::unique_ptr<TangentSolver>> tangent_;

    // sum over edges of RC f_{k', <-m'>}(pole) / (z - pole), from already solved exponents
    void add_recursion(ZRat& known, int k, const Rat& m, const Rat& e) const
    {
        for (const auto& [kp, mp] : g_.fixed_labels()) {
            if (kp == k) continue;
            for (const Rat& beta : edge_degree_set(k, kp, m, mp, e)) {
                const ZVec* prev = out_.find(e - beta);
                if (!prev) continue;
                ZRat c = prev->get(kp, neg_sector(mp));
                if (c.is_zero()) continue;
                RatFunc pole = edge_pole(k, kp, beta);
                RatFunc v = recursion_coefficient(g_, {k, kp, m, mp, beta}) * c.eval(pole);
                if (!v.is_zero()) known += ZRat::pole_term(pole, 1, v);
            }
        }
    }
};

}  // namespace

ISeries determine_from_positive(const ISeries& positive, const GitData& g, const ConeOptions& opt)
{
    for (const auto& [e, vec] : positive.terms()) {
        if (e > 0) throw MathError("positive input at Q^" + rat_str(e) + ": only exponents <= 0 are supported");
        for (const auto& [lab, c] : vec.entries) {
            if (!c.poles().empty()) throw MathError("positive input has poles at " + label_str(lab.k, lab.m));
            if (lab.m != frac(-e) || !g.admissible(lab.k, lab.m))
                throw MathError("positive input at " + label_str(lab.k, lab.m) + " does not fit Q^" + rat_str(e));
        }
    }
    auto [p0, p1] = split_deformation(positive);
    bool tangent = !p1.terms().empty();
    // the tangent level needs the base point one Q-unit further
    Rat lo = positive.lo();
    LevelSolver base(g, tangent ? lo - 1 : lo, opt.z_margin, nullptr);
    base.run(p0);
    ISeries out(positive.lo(), positive.hi(), g.d);
    for (const auto& [e, v] : base.result().terms())
        if (out.in_window(e)) out.set(e, v);
    if (!tangent) return out;
    LevelSolver lin(g, lo, opt.z_margin, &base.solvers());
    lin.run(p1);
    RatFunc x = deformation_x();
    for (const auto& [e, v] : lin.result().terms()) {
        if (!out.in_window(e)) continue;
        ZVec sum = out.get(e);
        for (const auto& [lab, c] : v.entries) sum.add(lab.k, lab.m, c.scaled(x));
        out.set(e, sum);
    }
    return out;
}

ISeries recursive_determination(const ISeries& t, const GitData& g, const Window& w, const ConeOptions& opt)
{
    ISeries pos = positive_part(negate_z(glsm_i_function(g, w)));
    auto [t0, t1] = split_deformation(t);
    for (const auto& [e, v] : t0.terms())
        if (!v.is_zero()) throw MathError("t must vanish at x = 0");
    for (const auto& [e, v] : t.terms()) {
        if (!pos.in_window(e)) throw MathError("t has a term at Q^" + rat_str(e) + " outside the window");
        ZVec s = pos.get(e);
        s += v;
        pos.set(e, s);
    }
    return determine_from_positive(pos, g, opt);
}

// graphs

bool LocGraph::is_unstable(int v) const
{
    const auto& x = vertices[static_cast<size_t>(v)];
    return x.beta == 0 && x.marks.size() == 1 && valence(v) == 2;
}

int LocGraph::valence(int v) const
{
    int n = static_cast<int>(vertices[static_cast<size_t>(v)].marks.size());
    for (const auto& e : edges)
        if (e.v == v || e.vp == v) ++n;
    return n;
}

Rat LocGraph::total_degree() const
{
    Rat s;
    for (const auto& v : vertices) s += v.beta;
    for (const auto& e : edges) s += e.beta;
    return s;
}

std::string LocGraph::str() const
{
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < vertices.size(); ++i) {
        const auto& v = vertices[i];
        os << (i ? " " : "") << "v" << i << "(k=" << v.k + 1 << ",b=" << rat_str(v.beta) << ",marks=";
        for (size_t j = 0; j < v.marks.size(); ++j) os << (j ? "," : "") << v.marks[j] + 1;
        os << ")";
    }
    for (const auto& e : edges)
        os << " e(" << e.v << "-" << e.vp << ",b=" << rat_str(e.beta) << ",m=" << rat_str(e.m) << "," << rat_str(e.mp) << ")";
    os << " aut=" << automorphisms << "}";
    return os.str();
}

namespace {

// a vertex-labelled tree; decorations are filled in by the scan
struct Shape {
    int n_vertices;
    std::vector<std::pair<int, int>> edges;
};

std::vector<Shape> prufer_trees(int nv)
{
    std::vector<Shape> out;
    if (nv == 1) {
        out.push_back({1, {}});
        return out;
    }
    if (nv == 2) {
        out.push_back({2, {{0, 1}}});
        return out;
    }
    int len = nv - 2;
    std::vector<int> seq(static_cast<size_t>(len), 0);
    while (true) {
        std::vector<int> degree(static_cast<size_t>(nv), 1);
        for (int s : seq) ++degree[static_cast<size_t>(s)];
        Shape sh{nv, {}};
        for (int s : seq) {
            int leaf = 0;
            while (degree[static_cast<size_t>(leaf)] != 1) ++leaf;
            sh.edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
            --degree[static_cast<size_t>(leaf)];
            --degree[static_cast<size_t>(s)];
        }
        int u = -1, w = -1;
        for (int i = 0; i < nv; ++i)
            if (degree[static_cast<size_t>(i)] == 1) (u < 0 ? u : w) = i;
        sh.edges.emplace_back(u, w);
        std::sort(sh.edges.begin(), sh.edges.end());
        out.push_back(std::move(sh));
        int i = len - 1;
        while (i >= 0 && ++seq[static_cast<size_t>(i)] == nv) seq[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return out;
}

// trees on nv labelled vertices from all (nv-1)-subsets of the complete graph
std::vector<Shape> subset_trees(int nv)
{
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j) all.emplace_back(i, j);
    std::vector<Shape> out;
    int ne = nv - 1;
    size_t total = all.size();
    if (ne == 0) return {{nv, {}}};
    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + ne, true);
    do {
        Shape sh{nv, {}};
        for (size_t i = 0; i < total; ++i)
            if (pick[i]) sh.edges.push_back(all[i]);
        std::vector<int> parent(static_cast<size_t>(nv));
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); };
        bool acyclic = true;
        for (auto [a, b] : sh.edges) {
            int ra = find(a), rb = find(b);
            if (ra == rb) acyclic = false;
            parent[static_cast<size_t>(ra)] = rb;
        }
        if (acyclic) out.push_back(std::move(sh));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

struct Decorator {
    const GitData& g;
    const std::vector<Rat>& sectors;
    Rat beta;
    GraphBounds bounds;

    // calls emit for every decoration of the shape satisfying all constraints
    template <class Emit>
    void decorate(const Shape& sh, Emit&& emit) const
    {
        int nv = sh.n_vertices, n = static_cast<int>(sectors.size());
        LocGraph gr;
        gr.vertices.resize(static_cast<size_t>(nv));
        for (auto [a, b] : sh.edges) gr.edges.push_back({a, b, Rat(), Rat(), Rat()});
        // marks -> vertices
        std::vector<int> assign(static_cast<size_t>(n), 0);
        std::function<void(int)> marks_rec, ks_rec, edges_rec, degs_rec;
        auto final_check = [&]() {
            for (int v = 0; v < nv; ++v) {
                const auto& x = gr.vertices[static_cast<size_t>(v)];
                int val = gr.valence(v);
                bool stable = val > 2 || (val == 2 && x.beta < 0);
                if (!stable && !gr.is_unstable(v)) return;
                Rat s = x.beta;
                for (int i : x.marks) s -= sectors[static_cast<size_t>(i)];
                for (const auto& e : gr.edges) {
                    if (e.v == v) s -= e.m;
                    if (e.vp == v) s -= e.mp;
                }
                if (!is_integer(s)) return;
            }
            emit(gr);
        };
        // vertex degrees: beta_v <= 0 on the 1/d grid summing to the remainder
        degs_rec = [&](int v) {
            if (v == nv) {
                if (gr.total_degree() == beta) final_check();
                return;
            }
            Rat used;
            for (int u = 0; u < v; ++u) used += gr.vertices[static_cast<size_t>(u)].beta;
            for (const auto& e : gr.edges) used += e.beta;
            Rat rest = beta - used;
            if (v == nv - 1) {
                if (rest <= 0 && is_integer(rest * Rat(g.d))) {
                    gr.vertices[static_cast<size_t>(v)].beta = rest;
                    final_check();
                }
                return;
            }
            for (Rat b = 0; b >= rest; b -= rat(1, g.d)) {
                gr.vertices[static_cast<size_t>(v)].beta = b;
                degs_rec(v + 1);
            }
        };
        edges_rec = [&](int i) {
            if (i == static_cast<int>(gr.edges.size())) {
                degs_rec(0);
                return;
            }
            // vertex degrees are <= 0, so the edge degrees alone may not undershoot beta
            Rat partial;
            for (int j = 0; j < i; ++j) partial += gr.edges[static_cast<size_t>(j)].beta;
            auto& e = gr.edges[static_cast<size_t>(i)];
            int k = gr.vertices[static_cast<size_t>(e.v)].k, kp = gr.vertices[static_cast<size_t>(e.vp)].k;
            for (const Rat& m : g.sectors_at(k))
                for (const Rat& mp : g.sectors_at(kp))
                    for (const Rat& b : edge_degree_set(k, kp, m, mp, std::max(bounds.edge_cutoff, Rat(beta - partial)))) {
                        e.m = m;
                        e.mp = mp;
                        e.beta = b;
                        edges_rec(i + 1);
                    }
        };
        ks_rec = [&](int v) {
            if (v == nv) {
                for (const auto& e : gr.edges)
                    if (gr.vertices[static_cast<size_t>(e.v)].k == gr.vertices[static_cast<size_t>(e.vp)].k) return;
                for (int u = 0; u < nv; ++u)
                    for (int i : gr.vertices[static_cast<size_t>(u)].marks)
                        if (!g.admissible(gr.vertices[static_cast<size_t>(u)].k, sectors[static_cast<size_t>(i)])) return;
                edges_rec(0);
                return;
            }
            for (int k = 0; k < g.N(); ++k) {
                gr.vertices[static_cast<size_t>(v)].k = k;
                ks_rec(v + 1);
            }
        };
        marks_rec = [&](int i) {
            if (i == n) {
                for (auto& x : gr.vertices) x.marks.clear();
                for (int j = 0; j < n; ++j) gr.vertices[static_cast<size_t>(assign[static_cast<size_t>(j)])].marks.push_back(j);
                // a vertex of valence below 2 is never allowed
                for (int v = 0; v < nv; ++v)
                    if (gr.valence(v) < 2) return;
                ks_rec(0);
                return;
            }
            for (int v = 0; v < nv; ++v) {
                assign[static_cast<size_t>(i)] = v;
                marks_rec(i + 1);
            }
        };
        marks_rec(0);
    }
};

// encoding of the graph after relabelling vertices by perm (new index of old vertex)
std::string encode(const LocGraph& gr, const std::vector<int>& perm)
{
    size_t nv = gr.vertices.size();
    std::vector<std::string> vs(nv);
    for (size_t i = 0; i < nv; ++i) {
        const auto& v = gr.vertices[i];
        std::string s = std::to_string(v.k) + "/" + rat_str(v.beta) + "/";
        for (int mk : v.marks) s += std::to_string(mk) + ",";
        vs[static_cast<size_t>(perm[i])] = s;
    }
    std::vector<std::string> es;
    for (const auto& e : gr.edges) {
        int a = perm[static_cast<size_t>(e.v)], b = perm[static_cast<size_t>(e.vp)];
        Rat ma = e.m, mb = e.mp;
        if (a > b) {
            std::swap(a, b);
            std::swap(ma, mb);
        }
        es.push_back(std::to_string(a) + "-" + std::to_string(b) + ":" + rat_str(e.beta) + ":" + rat_str(ma) + ":" + rat_str(mb));
    }
    std::sort(es.begin(), es.end());
    std::string out;
    for (auto& s : vs) out += s + "|";
    out += "#";
    for (auto& s : es) out += s + "|";
    return out;
}

}  // namespace

std::vector<LocGraph> enumerate_graphs(const GitData& g, const std::vector<Rat>& mark_sectors, const Rat& beta,
                                       const GraphBounds& bounds)
{
    if (bounds.max_edges < 0 || bounds.edge_cutoff >= 0) throw MathError("graph bounds must be finite and negative");
    Decorator dec{g, mark_sectors, beta, bounds};
    std::map<std::string, LocGraph> seen;
    for (int nv = 1; nv <= bounds.max_edges + 1; ++nv) {
        std::vector<int> perm(static_cast<size_t>(nv));
        for (const Shape& sh : prufer_trees(nv))
            dec.decorate(sh, [&](const LocGraph& gr) {
                std::iota(perm.begin(), perm.end(), 0);
                std::string best, self = encode(gr, perm);
                long aut = 0;
                do {
                    std::string s = encode(gr, perm);
                    if (best.empty() || s < best) best = s;
                    if (s == self) ++aut;
                } while (std::next_permutation(perm.begin(), perm.end()));
                if (seen.count(best)) return;
                LocGraph copy = gr;
                copy.automorphisms = aut;
                seen.emplace(best, std::move(copy));
            });
    }
    std::vector<LocGraph> out;
    for (auto& [key, gr] : seen) out.push_back(std::move(gr));
    return out;
}

long count_labelled_graphs(const GitData& g, const std::vector<Rat>& mark_sectors, const Rat& beta, const GraphBounds& bounds)
{
    Decorator dec{g, mark_sectors, beta, bounds};
    long count = 0;
    for (int nv = 1; nv <= bounds.max_edges + 1; ++nv)
        for (const Shape& sh : subset_trees(nv)) dec.decorate(sh, [&](const LocGraph&) { ++count; });
    return count;
}

RatFunc assemble_graph_sum(const GitData& g, const std::vector<LocGraph>& graphs, const std::vector<Rat>& mark_sectors,
                           const std::vector<long>& psi_powers, const VertexOracle& oracle)
{
    if (psi_powers.size() != mark_sectors.size()) throw MathError("one psi power per mark expected");
    RatFunc total;
    for (const LocGraph& gr : graphs) {
        try {
            RatFunc c = RatFunc(rat(1, gr.automorphisms));
            for (int v = 0; v < static_cast<int>(gr.vertices.size()); ++v) {
                const auto& x = gr.vertices[static_cast<size_t>(v)];
                if (gr.is_unstable(v)) {
                    const LocEdge* e = nullptr;
                    for (const auto& ed : gr.edges)
                        if (ed.v == v || ed.vp == v) e = &ed;
                    int other = e->v == v ? e->vp : e->v;
                    c *= unstable_vertex_contribution(x.k, gr.vertices[static_cast<size_t>(other)].k, e->beta,
                                                      psi_powers[static_cast<size_t>(x.marks[0])]);
                    continue;
                }
                std::vector<Mark> marks;
                for (int i : x.marks) marks.push_back({mark_sectors[static_cast<size_t>(i)], psi_powers[static_cast<size_t>(i)]});
                std::vector<OracleFlag> flags;
                for (const auto& ed : gr.edges) {
                    if (ed.v != v && ed.vp != v) continue;
                    bool here = ed.v == v;
                    int other = here ? ed.vp : ed.v;
                    Rat m = here ? ed.m : ed.mp;
                    flags.push_back({m, edge_pole(x.k, gr.vertices[static_cast<size_t>(other)].k, ed.beta)});
                    c *= flag_contribution(g, x.k, m);
                }
                c *= oracle(x.k, marks, flags, x.beta);
            }
            for (const auto& ed : gr.edges) {
                int k = gr.vertices[static_cast<size_t>(ed.v)].k, kp = gr.vertices[static_cast<size_t>(ed.vp)].k;
                c *= edge_contribution(g, {k, kp, ed.m, ed.mp, ed.beta});
            }
            total += c;
        } catch (const MathError& err) {
            throw MathError(std::string(err.what()) + " in graph " + gr.str());
        }
    }
    return total;
}

VertexOracle untwisted_point_oracle(const GitData& g, Theory th)
{
    return [&g, th](int k, const std::vector<Mark>& marks, const std::vector<OracleFlag>& flags, const Rat& beta_v) {
        long dk = g.degrees.at(static_cast<size_t>(k));
        int n = static_cast<int>(marks.size() + flags.size());
        long budget = n - 3;
        RatFunc total;
        if (budget < 0) return total;
        long used = 0;
        for (const auto& mk : marks) used += mk.psi;
        if (used > budget) return total;
        // distribute the remaining psi degree over the edge flags
        std::vector<long> b(flags.size(), 0);
        std::function<void(size_t, long)> rec = [&](size_t i, long left) {
            if (i == flags.size()) {
                if (left != 0) return;
                std::vector<Mark> all = marks;
                RatFunc w(1);
                for (size_t j = 0; j < flags.size(); ++j) {
                    all.push_back({flags[j].m, b[j]});
                    // d_k / (pole - psi) = d_k sum_b psi^b / pole^(b+1)
                    w *= RatFunc(dk) / flags[j].pole.pow(b[j] + 1);
                }
                Rat c = untwisted_correlator(dk, all, beta_v, th);
                if (c != 0) total += w * RatFunc(c);
                return;
            }
            for (long x = 0; x <= left; ++x) {
                b[i] = x;
                rec(i + 1, left - x);
            }
        };
        rec(0, budget - used);
        return total;
    };
}

}  // namespace conekit
