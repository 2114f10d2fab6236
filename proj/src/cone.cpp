#include "conekit/cone.hpp"

namespace conekit {

namespace {

void add_into(GradePiece& a, long s, const Laurent& v)
{
    if (v.is_zero()) return;
    auto it = a.find(s);
    if (it == a.end())
        a.emplace(s, v);
    else
        it->second += v;
}

bool piece_zero(const GradePiece& a)
{
    for (const auto& [s, l] : a)
        if (!l.is_zero()) return false;
    return true;
}

GradePiece negatives_of(const GradePiece& K)
{
    GradePiece r;
    for (const auto& [s, l] : K) {
        if (l.lo >= 0) continue;
        Laurent neg = l.window(l.lo, -1).scaled(RatFunc(-1));
        neg.trim();
        if (!neg.is_zero()) r[s] = neg;
    }
    return r;
}

std::string describe(int n, long s, long p)
{
    return "grade " + std::to_string(n) + ", sector " + std::to_string(s) + ", z^" + std::to_string(p);
}

// first negative power left in h + K, if any
std::string negative_mismatch(int n, const GradePiece& K, const GradePiece& h, GradePiece* total_out)
{
    GradePiece total = K;
    for (const auto& [s, l] : h) add_into(total, s, l);
    for (const auto& [s, l] : total)
        for (long e = l.lo; e < 0; ++e)
            if (!l.at(e).is_zero()) return "not on the cone at " + describe(n, s, e);
    if (total_out) *total_out = std::move(total);
    return {};
}

}  // namespace

GradePiece grade_mul(const GradePiece& a, const GradePiece& b, long d, const RatFunc& twist, long hi)
{
    GradePiece r;
    for (const auto& [s1, l1] : a)
        for (const auto& [s2, l2] : b) {
            long s = s1 + s2;
            Laurent prod = mul(l1, l2, hi);
            if (s >= d) {
                s -= d;
                prod = prod.scaled(twist);
            }
            add_into(r, s, prod);
        }
    return r;
}

ConeSolver::ConeSolver(long d, RatFunc twist) : d_(d), twist_(std::move(twist))
{
    if (d_ <= 0) throw MathError("cone algebra needs d >= 1");
    Y_.push_back(GradePiece{{0, Laurent{0, {RatFunc(1)}}}});
}

int ConeSolver::final_exp_grades() const
{
    if (u_ < 0) return 1;
    // Y_g is final once sigma_g is known, i.e. grade g + u solved
    return std::max(1, next_grade() - u_);
}

bool ConeSolver::step(const GradeProvider& grade)
{
    if (!ok()) return false;
    int n = next_grade();
    if (u_ < 0) {
        GradePiece h = grade(n, {});
        h_.push_back(h);
        sigma_.emplace_back();
        if (piece_zero(h)) return true;
        // leading grade: must be c z e_s + O(z^2)
        for (const auto& [s, l] : h)
            for (long e = l.lo; e <= std::min(0L, l.hi()); ++e)
                if (!l.at(e).is_zero()) {
                    failure_ = "leading term is not z-linear at " + describe(n, s, e);
                    return false;
                }
        int count = 0;
        for (const auto& [s, l] : h)
            if (!l.at(1).is_zero()) {
                ++count;
                lead_sector_ = s;
                lead_coeff_ = l.at(1);
            }
        if (count != 1) {
            failure_ = "leading z-linear term at grade " + std::to_string(n) + " is not a single basis vector";
            return false;
        }
        u_ = n;
        return true;
    }
    int g0 = n - u_;  // sigma_{g0} is fixed at this grade
    size_t ug0 = static_cast<size_t>(g0);
    if (Y_.size() <= ug0) Y_.resize(ug0 + 1);
    // partial Y_{g0}: g0 Y_{g0} = sum_j j S_j Y_{g0-j}, leaving out S_{g0}
    GradePiece yp;
    for (int j = 1; j < g0; ++j) {
        GradePiece sj;
        for (const auto& [s, c] : sigma_[static_cast<size_t>(j)]) sj[s] = Laurent{-1, {c}};
        GradePiece t = grade_mul(sj, Y_[static_cast<size_t>(g0 - j)], d_, twist_, -1);
        for (auto& [s, l] : t) add_into(yp, s, l.scaled(RatFunc(rat(j, g0))));
    }
    Y_[ug0] = yp;
    GradePiece K;
    for (int g = 1; g <= g0; ++g) {
        GradePiece t = grade_mul(Y_[static_cast<size_t>(g)], h_[static_cast<size_t>(n - g)], d_, twist_, 0);
        for (auto& [s, l] : t) add_into(K, s, l);
    }
    GradePiece h = grade(n, negatives_of(K));
    h_.push_back(h);
    sigma_.emplace_back();
    GradePiece total;
    failure_ = negative_mismatch(n, K, h, &total);
    if (!failure_.empty()) return false;
    std::map<long, RatFunc> sig;
    for (const auto& [s, l] : total) {
        RatFunc c0 = l.at(0);
        if (c0.is_zero()) continue;
        long t = s - lead_sector_;
        RatFunc c = -c0 / lead_coeff_;
        if (t < 0) {
            t += d_;
            c /= twist_;
        }
        sig[t] += c;
    }
    if (sigma_.size() <= ug0) sigma_.resize(ug0 + 1);
    sigma_[ug0] = sig;
    for (const auto& [s, c] : sig) add_into(Y_[ug0], s, Laurent{-1, {c}});
    return true;
}

TangentSolver::TangentSolver(const ConeSolver& base) : base_(base)
{
    if (!base.ok() || base.leading_grade() < 0) throw MathError("tangent solve needs a solved base point");
}

bool TangentSolver::step(const GradeProvider& grade)
{
    if (!ok()) return false;
    int n = next_grade();
    if (n >= base_.final_exp_grades()) {
        failure_ = "base point not solved far enough for tangent grade " + std::to_string(n);
        return false;
    }
    const auto& Y = base_.exp_sigma();
    GradePiece K;
    for (int g = 1; g <= n; ++g) {
        GradePiece t = grade_mul(Y[static_cast<size_t>(g)], h_[static_cast<size_t>(n - g)], base_.d(), base_.twist(), -1);
        for (auto& [s, l] : t) add_into(K, s, l);
    }
    GradePiece h = grade(n, negatives_of(K));
    h_.push_back(h);
    failure_ = negative_mismatch(n, K, h, nullptr);
    return ok();
}

ConeSolution cone_slice_solve(long d, const RatFunc& twist, int top_grade, const GradeProvider& grade)
{
    ConeSolver s(d, twist);
    ConeSolution out;
    for (int n = 0; n <= top_grade; ++n)
        if (!s.step(grade)) break;
    out.failure = s.failure();
    if (s.ok() && s.leading_grade() < 0) out.failure = "series is zero";
    out.ok = out.failure.empty();
    out.leading_grade = s.leading_grade();
    out.h = s.h();
    out.sigma = s.sigma();
    return out;
}

ConeSolution cone_check(long d, const RatFunc& twist, const std::vector<GradePiece>& h)
{
    return cone_slice_solve(d, twist, static_cast<int>(h.size()) - 1,
                            [&](int n, const GradePiece&) { return h[static_cast<size_t>(n)]; });
}

ConeSolution cone_complete(long d, const RatFunc& twist, const std::vector<GradePiece>& positive)
{
    return cone_slice_solve(d, twist, static_cast<int>(positive.size()) - 1, [&](int n, const GradePiece& required) {
        GradePiece r;
        for (const auto& [s, l] : positive[static_cast<size_t>(n)]) {
            if (l.hi() < 0) continue;
            Laurent pos = l.window(0, l.hi());
            pos.trim();
            if (!pos.is_zero()) r[s] = pos;
        }
        for (const auto& [s, l] : required) add_into(r, s, l);
        return r;
    });
}

}  // namespace conekit
