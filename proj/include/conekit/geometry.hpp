#pragma once

#include "conekit/ratfunc.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conekit {

enum class Phase { minus, plus };

// Fixed-point indices k are 0-based internally and printed 1-based.
// Sectors are rationals in [0, 1).
struct GitData {
    std::vector<long> weights;  // w_i
    std::vector<long> degrees;  // d_j
    long d = 1;                 // lcm of the degrees
    long D = 0;                 // sum of the degrees

    static GitData make(std::vector<long> w, std::vector<long> deg);

    int M() const { return static_cast<int>(weights.size()); }
    int N() const { return static_cast<int>(degrees.size()); }
    long weight_sum() const;

    // t/d for t = 0..d-1
    std::vector<Rat> sectors() const;
    // sectors of the fixed point k, t/d_k for t = 0..d_k-1
    std::vector<Rat> sectors_at(int k) const;
    bool admissible(int k, const Rat& m) const;
    // #{j : m d_j integral}
    int rank_minus(const Rat& m) const;
    // #{i : m w_i integral}
    int rank_plus(const Rat& m) const;
    int rank(Phase p, const Rat& m) const { return p == Phase::minus ? rank_minus(m) : rank_plus(m); }
    bool is_narrow(const Rat& m) const;
    std::vector<Rat> narrow_sectors() const;
    // all admissible (k, m), ordered by k then m
    std::vector<std::pair<int, Rat>> fixed_labels() const;
    // plus-side sectors with positive rank
    std::vector<Rat> plus_sectors() const;

    std::string key() const;
};

RatFunc alpha(int k);
int alpha_var(int k);
// <-m> in [0, 1)
Rat neg_sector(const Rat& m);

struct AssumptionReport {
    bool gcd_ok = false;
    bool a1 = false;
    bool a2 = false;
    bool cy = false;
    std::optional<Rat> a2_witness;
    std::optional<std::pair<int, int>> a1_witness;  // (i, j) with w_i not dividing d_j
};
AssumptionReport check_assumptions(const GitData& g);

struct RankReport {
    long minus_rank = 0;
    long plus_rank = 0;
    bool minus_ok = false;  // minus rank equals the sum of degrees
    bool cy = false;
    bool equal = false;
};
RankReport state_rank_check(const GitData& g);

// prod_{j != k, m d_j integral} d_j (alpha_k - alpha_j)
RatFunc euler_normal(const GitData& g, int k, const Rat& m);

struct FixedLabel {
    int k;
    Rat m;
    friend bool operator<(const FixedLabel& a, const FixedLabel& b)
    {
        if (a.k != b.k) return a.k < b.k;
        return a.m < b.m;
    }
    friend bool operator==(const FixedLabel& a, const FixedLabel& b) { return a.k == b.k && a.m == b.m; }
};

// class in the fixed-point basis
struct EqClass {
    std::map<FixedLabel, RatFunc> entries;

    RatFunc get(int k, const Rat& m) const;
    void add(int k, const Rat& m, const RatFunc& v);
    EqClass& operator+=(const EqClass& o);
    EqClass scaled(const RatFunc& s) const;
    void validate(const GitData& g) const;
};

// per sector, coefficients of H^0..H^(r-1) where r is the sector rank of the phase
struct CohClass {
    std::map<Rat, std::vector<RatFunc>> entries;

    static CohClass basis(const GitData& g, const Rat& m, int power, Phase p = Phase::plus);
    RatFunc get(const Rat& m, int power) const;
    CohClass& operator+=(const CohClass& o);
    CohClass scaled(const RatFunc& s) const;
    bool is_zero() const;
    void validate(const GitData& g, Phase p = Phase::plus) const;
};

RatFunc pairing_minus(const GitData& g, const EqClass& a, const EqClass& b);

// {beta in Z - m - m' : cutoff <= beta < 0}; throws if k == k'
std::vector<Rat> edge_degree_set(int k, int kp, const Rat& m, const Rat& mp, const Rat& cutoff);

}  // namespace conekit
