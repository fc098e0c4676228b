#pragma once

#include "skelcalc/complex.hpp"
#include "skelcalc/pl.hpp"
#include "skelcalc/report.hpp"

#include <vector>

namespace skc {

struct Flags {
  bool NL = false;
  bool spectral_at_boundary = false;
  bool minimal_S = false;
  bool operator==(const Flags&) const = default;
};

// logR[i-1] is log R_i. rank 0 means no profile was given.
struct Profile {
  int rank = 0;
  std::vector<PLFunction> logR;
};

struct Instance {
  Complex X;
  Profile P;
  Flags flags;
  std::string label;  // adversarial instances name the constraint they break
};

// Ordering, sign, continuity and germ-slope checks. Quantization is reported
// separately so that deliberately broken inputs still load.
void validate_profile(const Complex& X, const Profile& P);

PLFunction partial_height(const Complex& X, const Profile& P, int i);  // IndexOutOfRange

enum class Solv { Spectral, Solvable, Oversolvable };
const char* solv_name(Solv s);

struct Classification {
  std::vector<Solv> cls;       // per index 1..r at [i-1]
  int i_sp = 0, i_sol = 0;     // largest spectral index; largest non-oversolvable index
  std::vector<char> is_vertex; // per index
  std::vector<char> vertex_free_of_solvability;
};
Classification classify(const Complex& X, const Profile& P, int x);

// Gamma_S(F): the skeleton plus every tree edge on which F is not constant, closed
// toward the roots.
Subgraph controlling_of(const Complex& X, const PLFunction& F);

// Everything below runs on the refinement where every radius is affine per edge.
struct Analysis {
  Complex base;
  Complex X;  // refined
  Profile P;  // on X
  Flags flags;
  int r = 0;
  std::vector<PLFunction> H;             // H[i-1] = H_i
  Subgraph gamma_S;
  std::vector<char> S;
  std::vector<Subgraph> gamma;           // [i] = Gamma_{S,i}, [0] = Gamma_S
  std::vector<Subgraph> tot;             // [i] = cumulative, [0] = Gamma_S
  std::vector<std::vector<char>> lin;    // marked points of the lin graphs
  std::vector<AGraph> lin_graph;
  std::vector<Counts> lin_counts;
  std::vector<Classification> cls;       // per refined vertex
};
Analysis analyze(const Instance& I);

// Lin-marking of a single function on its own controlling graph.
struct LinGraph {
  Subgraph G;
  std::vector<char> marked;
  AGraph A;
  Counts c;
};
LinGraph lin_of(const Complex& X, const std::vector<char>& S, const Subgraph& G,
                const std::vector<const PLFunction*>& fns);

struct ExceptionalSets {
  std::vector<std::vector<char>> E, aleph, C;  // [i] for i = 1..r, [0] empty
  std::vector<char> C_avoids_skeleton, C_in_previous;
};
ExceptionalSets exceptional_sets(const Analysis& A);

std::vector<Row> verify_superharmonicity(const Analysis& A);
std::vector<Row> verify_superharmonicity(const Analysis& A, const ExceptionalSets& ex);

struct CriterionResult {
  std::vector<char> holds;  // per vertex of G
  bool conclusion = false;  // every vertex passes, so the cumulative graph sits in G
  bool contained = false;   // measured containment
};
CriterionResult gamma_prime_criterion(const Analysis& A, const Subgraph& G, int i);

enum class Propagation { Holds, Violated, NotApplicable };
Propagation unit_propagation(const Analysis& A);

std::vector<Row> profile_rows(const Analysis& A);  // quantization and criterion rows

}  // namespace skc
