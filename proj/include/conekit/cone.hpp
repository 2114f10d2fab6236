#pragma once

#include "conekit/zrat.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace conekit {

// element of one grade of a graded group algebra of Z/d: sector -> Laurent in z
using GradePiece = std::map<long, Laurent>;

// provides h_n; `required` is the negative part the cone forces at this grade
using GradeProvider = std::function<GradePiece(int n, const GradePiece& required)>;

GradePiece grade_mul(const GradePiece& a, const GradePiece& b, long d, const RatFunc& twist, long hi);

// Graded commutative algebra spanned by e_(n,s), n >= 0 the grade and s in Z/d,
// with e_(n,s) e_(n',s') = twist^floor((s+s')/d) e_(n+n', s+s' mod d).
// A point h = sum_n h_n lies on the untwisted cone iff exp(sigma/z) h has no
// z^p with p <= 0 for some sigma of positive grade. The solve is triangular:
// at grade n the negative part of h_n is forced, and the z^0 part fixes sigma.
class ConeSolver {
public:
    explicit ConeSolver(long d, RatFunc twist = RatFunc(1));

    int next_grade() const { return static_cast<int>(h_.size()); }
    bool ok() const { return failure_.empty(); }
    const std::string& failure() const { return failure_; }
    long d() const { return d_; }
    const RatFunc& twist() const { return twist_; }
    int leading_grade() const { return u_; }
    const std::vector<GradePiece>& h() const { return h_; }
    const std::vector<std::map<long, RatFunc>>& sigma() const { return sigma_; }
    // exp(sigma/z) by grade; entry g is final once grade g + leading_grade is solved
    const std::vector<GradePiece>& exp_sigma() const { return Y_; }
    // number of leading entries of exp_sigma() that are final
    int final_exp_grades() const;

    // processes grade next_grade(); returns ok()
    bool step(const GradeProvider& grade);

private:
    long d_;
    RatFunc twist_;
    int u_ = -1;
    RatFunc lead_coeff_;
    long lead_sector_ = 0;
    std::vector<GradePiece> h_;
    std::vector<std::map<long, RatFunc>> sigma_;
    std::vector<GradePiece> Y_;
    std::string failure_;
};

// first-order deformation h0 + x h1 (x^2 = 0) of a solved point: x h1 is tangent
// iff exp(sigma/z) h1 has no negative z-powers; h1 may start at any grade >= 0
class TangentSolver {
public:
    explicit TangentSolver(const ConeSolver& base);
    int next_grade() const { return static_cast<int>(h_.size()); }
    bool ok() const { return failure_.empty(); }
    const std::string& failure() const { return failure_; }
    const std::vector<GradePiece>& h() const { return h_; }
    bool step(const GradeProvider& grade);

private:
    const ConeSolver& base_;
    std::vector<GradePiece> h_;
    std::string failure_;
};

struct ConeSolution {
    bool ok = false;
    std::string failure;  // names the first failing grade, sector and z-power
    int leading_grade = -1;
    std::vector<GradePiece> h;
    std::vector<std::map<long, RatFunc>> sigma;
};

ConeSolution cone_slice_solve(long d, const RatFunc& twist, int top_grade, const GradeProvider& grade);
// verification mode: all grades given
ConeSolution cone_check(long d, const RatFunc& twist, const std::vector<GradePiece>& h);
// completion mode: only the z^{>=0} parts are used, negative parts are filled in
ConeSolution cone_complete(long d, const RatFunc& twist, const std::vector<GradePiece>& positive);

}  // namespace conekit
