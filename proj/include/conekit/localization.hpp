#pragma once

#include "conekit/cone.hpp"
#include "conekit/geometry.hpp"
#include "conekit/series.hpp"

#include <functional>
#include <string>
#include <vector>

namespace conekit {

// an edge between fixed points k -> k' with flag sectors m (at k), m' (at k')
struct EdgeData {
    int k = 0;
    int kp = 1;
    Rat m;
    Rat mp;
    Rat beta;
};

// throws MathError unless k != k', both flags admissible, beta < 0 and beta + m + m' integral
void check_edge(const GitData& g, const EdgeData& e);

RatFunc recursion_coefficient(const GitData& g, const EdgeData& e);
RatFunc edge_contribution(const GitData& g, const EdgeData& e);
// psi at an unstable vertex: ((alpha_kv - alpha_kve) / beta_e)^a
RatFunc unstable_vertex_contribution(int kv, int kve, const Rat& beta_e, long a);
RatFunc flag_contribution(const GitData& g, int k, const Rat& m, bool unstable_vertex = false);
// z = (alpha_k' - alpha_k) / beta
RatFunc edge_pole(int k, int kp, const Rat& beta);

// one checked item of a verifier
struct CheckRecord {
    std::string tuple;
    bool pass = true;
    std::string lhs;
    std::string rhs;
};

struct VerifyReport {
    std::string condition;
    bool pass = true;
    std::vector<CheckRecord> records;
    // first failing record, empty on pass
    std::string first_failure() const;
};

// every z-pole of every coefficient is 0 or an edge pole with beta in the E-set
VerifyReport verify_C1(const ISeries& f, const GitData& g);
// residues at edge poles against the neighbouring series, for cutoff <= beta < 0.
// Throws MathError("insufficient window ...") when a tuple has nothing comparable.
VerifyReport verify_C2(const ISeries& f, const GitData& g, const Rat& cutoff);

struct ConeOptions {
    // extra z-orders kept beyond the top grade
    long z_margin = 2;
};
// the Laurent expansion at z = 0 of each f_k, in the integral frame, lies on the
// untwisted cone of the point with d_k sectors. Only the x^0 part is checked.
VerifyReport verify_C3(const ISeries& f, const GitData& g, const ConeOptions& opt = {});

// formal parameter of first-order deformations, x^2 = 0
int deformation_var();
RatFunc deformation_x();
// splits a coefficient linear in x into its x^0 and x^1 parts; throws on x^2 or x in a denominator
std::pair<ZRat, ZRat> split_deformation(const ZRat& c);
std::pair<ISeries, ISeries> split_deformation(const ISeries& f);

// the unique series with the given z-polynomial parts (per label and Q-exponent),
// recursion-determined poles at edge poles and cone-determined poles at z = 0.
// Coefficients may be linear in deformation_x(); higher x-powers are rejected.
ISeries determine_from_positive(const ISeries& positive, const GitData& g, const ConeOptions& opt = {});

// positive parts of I(Q, -z) plus t, then determine_from_positive. t is supported at e <= 0
// and must vanish at x = 0.
ISeries recursive_determination(const ISeries& t, const GitData& g, const Window& w, const ConeOptions& opt = {});

// the z-polynomial part of every coefficient
ISeries positive_part(const ISeries& f);
// I(Q, -z)
ISeries negate_z(const ISeries& f);

// decorated localization trees

struct LocVertex {
    int k = 0;
    Rat beta;
    std::vector<int> marks;  // mark indices, 0-based
};

struct LocEdge {
    int v = 0;
    int vp = 1;
    Rat beta;
    Rat m;   // flag sector at v
    Rat mp;  // flag sector at vp
};

struct LocGraph {
    std::vector<LocVertex> vertices;
    std::vector<LocEdge> edges;
    long automorphisms = 1;

    bool is_unstable(int v) const;
    int valence(int v) const;
    Rat total_degree() const;
    std::string str() const;
};

struct GraphBounds {
    int max_edges = 4;
    Rat edge_cutoff{-3};  // beta_e >= cutoff
};

// all decorated trees with n marks of the given sectors and total degree beta
std::vector<LocGraph> enumerate_graphs(const GitData& g, const std::vector<Rat>& mark_sectors, const Rat& beta,
                                       const GraphBounds& bounds = {});
// number of vertex-labelled decorated trees, from a subset scan of the complete graph
long count_labelled_graphs(const GitData& g, const std::vector<Rat>& mark_sectors, const Rat& beta,
                           const GraphBounds& bounds = {});

struct OracleFlag {
    Rat m;
    RatFunc pole;  // (alpha_k' - alpha_k) / beta_e, the denominator of the edge psi
};
using VertexOracle = std::function<RatFunc(int k, const std::vector<Mark>& marks, const std::vector<OracleFlag>& flags,
                                          const Rat& beta_v)>;

// sum over graphs of 1/|Aut| prod vertex prod edge prod flag; psi powers per mark
RatFunc assemble_graph_sum(const GitData& g, const std::vector<LocGraph>& graphs, const std::vector<Rat>& mark_sectors,
                           const std::vector<long>& psi_powers, const VertexOracle& oracle);

// untwisted point theory at the vertex: edge factors expanded in psi_e
VertexOracle untwisted_point_oracle(const GitData& g, Theory th);

}  // namespace conekit
