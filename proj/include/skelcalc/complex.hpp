#pragma once

#include "skelcalc/error.hpp"
#include "skelcalc/rational.hpp"

#include <string>
#include <vector>

namespace skc {

enum class EdgeKind { Skeleton, Tree };
enum class GermKind { OpenBoundary, BoundarySingular };

struct Vertex {
  std::string id;
  int genus = 0;
  int degree = 1;
  bool boundary = false;
  bool in_S = false;
  bool tr = true;
  Q depth = 0;
};

// Tree edges run root (a) -> leaf (b).
struct Edge {
  std::string id;
  int a = -1, b = -1;
  Q length = 1;
  int degree = 1;
  EdgeKind kind = EdgeKind::Skeleton;
  // Which input edge this piece came from, and where it starts on it.
  int origin = -1;
  Q offset = 0;
};

struct Germ {
  std::string id;
  int at = -1;
  int degree = 1;
  GermKind kind = GermKind::OpenBoundary;
};

struct EdgeSpec {
  std::string id, from, to;
  Q length = 1;
  int degree = 1;
  EdgeKind kind = EdgeKind::Skeleton;
};

struct GermSpec {
  std::string id, at;
  int degree = 1;
  GermKind kind = GermKind::OpenBoundary;
};

struct ComplexSpec {
  std::vector<Vertex> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<GermSpec> germs;
};

struct Complex {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Germ> germs;

  int nv() const { return static_cast<int>(vertices.size()); }
  int ne() const { return static_cast<int>(edges.size()); }
  int ng() const { return static_cast<int>(germs.size()); }
  int vertex_index(const std::string& id) const;  // UnknownVertex
  int edge_index(const std::string& id) const;    // UnknownBranch
  int germ_index(const std::string& id) const;    // UnknownBranch
  bool on_skeleton(int x) const { return vertices[x].depth == 0; }
  bool compact() const;
  std::vector<int> S() const;
};

Complex build_complex(const ComplexSpec& spec);
ComplexSpec to_spec(const Complex& X);

// Rechecks every invariant of an already indexed complex.
void validate_complex(const Complex& X);

// A branch out of a vertex: an edge end (forward = leaving through a) or a germ.
struct Branch {
  bool germ = false;
  int index = -1;
  bool forward = true;
  bool operator==(const Branch&) const = default;
};

int branch_degree(const Complex& X, const Branch& b);
int branch_far_end(const Complex& X, const Branch& b);  // -1 for germs
std::vector<Branch> branches_at(const Complex& X, int x);

// Membership masks over vertices, edges and germs of one complex.
struct Subgraph {
  std::vector<char> v, e, g;
  bool operator==(const Subgraph&) const = default;
};

Subgraph skeleton_of(const Complex& X);
Subgraph whole_of(const Complex& X);
Subgraph empty_of(const Complex& X);
bool contains(const Subgraph& G, const Branch& b);
bool subset_of(const Subgraph& A, const Subgraph& B);
Subgraph unite(const Subgraph& A, const Subgraph& B);

// Boundary-singular germs always count toward arity but never toward N.
struct ArityInfo {
  std::vector<Branch> branches;  // all branches out of x
  int arity = 0;                 // branches in G plus boundary-singular germs
  long long N = 0;               // degree-weighted count of branches in G
};
ArityInfo arity_at(const Complex& X, int x, const Subgraph& G);

Q chi_point(const Complex& X, int x, const Subgraph& G);

struct EulerData {
  long long chi_top = 0, genus = 0, chi_c = 0, n_infty = 0;
  bool operator==(const EulerData&) const = default;
};
EulerData euler_data(const Complex& X);

// Component label per vertex of G, -1 outside G.
std::vector<int> components(const Complex& X, const Subgraph& G, int* count = nullptr);

// ---- abstract marked graphs ----

struct AEdge {
  int a = -1, b = -1;  // b == -1: half-open edge going to infinity
  int deg = 1;
};

struct AGraph {
  std::vector<int> vdeg;
  std::vector<int> vmap;  // complex vertex behind each abstract vertex, or -1
  std::vector<AEdge> edges;
  int nv() const { return static_cast<int>(vdeg.size()); }
};

std::vector<int> arities(const AGraph& G);

struct Counts {
  long long v = 0, e = 0, e_open = 0, v_w = 0, e_w = 0;
  std::vector<long long> v_n, v_nw;  // indexed by arity
  long long vn(int n) const { return n < static_cast<int>(v_n.size()) ? v_n[n] : 0; }
  long long vnw(int n) const { return n < static_cast<int>(v_nw.size()) ? v_nw[n] : 0; }
  bool operator==(const Counts&) const = default;
};
Counts graph_counts(const AGraph& G);
long long card_w(const AGraph& G, const std::vector<int>& vs);

// Collapses every maximal run of unmarked points of G into one edge.
// Throws NotAPath if some component of G - marked is not an open segment.
AGraph quotient(const Complex& X, const Subgraph& G, const std::vector<char>& marked);

std::vector<char> canonical_vertices(const Complex& X, const Subgraph& G,
                                     const std::vector<char>& S);

struct PartitionResult {
  Q lhs, rhs;
  bool pass = false;
};
PartitionResult verify_partition_identity(const Complex& X, const std::vector<int>& Sprime);

// An open piece of the skeleton: a set of points plus the open edges around them.
struct OpenSub {
  std::vector<char> v, e, g;
};
struct OpenStats {
  long long n_infty = 0, chi_c = 0;
};
struct UnionStats {
  OpenStats U, V, cup, cap;
  long long residual_n = 0, residual_chi = 0;
};
UnionStats union_stats(const Complex& X, const OpenSub& U, const OpenSub& V);
OpenStats open_stats(const Complex& X, const OpenSub& U);

struct TreeCheck {
  long long v = 0, e = 0, v1 = 0, v2 = 0;
  bool e_plus_1_eq_v = false, bound_holds = false, equality = false;
};
TreeCheck tree_identity_check(const AGraph& T);

struct TreeBound {
  long long v_bound = 0, e_bound = 0, observed_v = 0, observed_e = 0;
  bool pass = false;
};
// in_v0/in_e0 select the marked subgraph Gamma0 inside G.
TreeBound prop318_bound(const AGraph& G, const std::vector<char>& in_v0,
                        const std::vector<char>& in_e0);

Complex normalize_triangulation(const Complex& X);

// Splits an edge at an interior position; the new vertex is plain (genus 0, not in S).
Complex subdivide(const Complex& X, int edge, const Q& pos, const std::string& new_id);

}  // namespace skc
