#pragma once

#include "skelcalc/radius.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace skc {

struct KappaLambda {
  long long kappa = 1, lambda = 2;
};
KappaLambda kappa_lambda(int r);  // InvalidRank for r < 1

// Boundary bookkeeping per index; [0] is unused.
struct IrregularityData {
  int r = 0;
  std::vector<std::vector<std::pair<int, Q>>> delta;       // (boundary vertex, Delta_i)
  std::vector<std::vector<std::pair<int, Q>>> germ_terms;  // (open germ, deg * inward slope of H_i)
  std::vector<Q> irr;
};
IrregularityData irregularity(const Analysis& A);

// A boundary point carrying one singular germ, seen as the boundary of a disk.
struct DiskGOS {
  int vertex = -1, germ = -1, rank = 0;
  Q dH, h0, h1, irr_inf;
};
std::vector<DiskGOS> gos_disks(const Analysis& A);
Q irr_infinity(int r, const Q& dH, const Q& h0);

struct Recursion {
  std::vector<Q> f, v, e;  // n = 0..r
};
// irr[n] for n = 1..r; irr[0] ignored.
Recursion recursion(int r, const Q& chi_c, const std::vector<Q>& irr, const Q& f0, const Q& v0,
                    const Q& e0);

Q first_theorem_increment(long long g, int r);                        // 4(g-1) r max(r-1,2)
Q global_increment(int r, const Q& chi_c, int i, const Q& irr);       // 2 lambda (-chi_c i + Irr)
Q chi_dR(int r, const Q& chi_c, const Q& irr_r);
Q de_rham_increment(int r, const Q& chi_dr);                          // -2 lambda chi_dR

// Disks are the trees hanging at points of S; annuli are the pieces of the skeleton
// between points of S (or running off to infinity) with the trees hanging on them.
struct Disk {
  int root = -1, edge = -1;
  std::vector<int> verts, edges;
};
struct Annulus {
  int start = -1, end = -1, end_germ = -1;
  std::vector<Branch> steps;  // steps[k] leaves start (k = 0) or joints[k-1]
  std::vector<int> joints;
  std::vector<int> tree_verts, tree_edges;
  Branch back;                // branch out of `end` into the annulus, when end >= 0
  std::string name;
};
std::vector<Disk> disks_of(const Complex& X);
std::vector<Annulus> annuli_of(const Complex& X);

std::vector<Row> disk_rows(const Analysis& A, int i);
std::vector<Row> annulus_rows(const Analysis& A, int i);
std::vector<Row> stepwise_rows(const Analysis& A, const ExceptionalSets& ex, int i);
// Explicit W for the compact and germ rows; InvalidW unless E_i <= W <= V(prev) + E_i.
std::vector<Row> stepwise_rows(const Analysis& A, const ExceptionalSets& ex, int i,
                               const std::vector<char>& W);
std::vector<Row> global_rows(const Analysis& A, const ExceptionalSets& ex);
std::vector<Row> partial_height_rows(const Analysis& A, int i);
std::vector<Row> gos_rows(const Analysis& A, const ExceptionalSets& ex);

// Every bound row, sorted.
std::vector<Row> bound_report(const Analysis& A);
// Super-harmonicity, exceptional placement, profile rows.
std::vector<Row> verify_report(const Analysis& A);

}  // namespace skc
