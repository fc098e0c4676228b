#pragma once

#include "skelcalc/complex.hpp"

#include <set>
#include <utility>
#include <vector>

namespace skc {

// Points (pos, value) along an edge from a (pos 0) to b (pos length), ends included.
struct EdgePL {
  std::vector<std::pair<Q, Q>> pts;
  bool operator==(const EdgePL&) const = default;
};

// Germ slopes are stored leaving the attach point.
struct PLFunction {
  std::vector<Q> vval;
  std::vector<EdgePL> edge;
  std::vector<Q> germ;
  bool operator==(const PLFunction&) const = default;
};

PLFunction constant_fn(const Complex& X, const Q& c);
PLFunction affine_on_edges(const Complex& X, const std::vector<Q>& vertex_values);

// Throws ValidationError on broken ordering, wrong ends or discontinuity.
void validate_fn(const Complex& X, const PLFunction& F);

// Drops collinear interior points.
PLFunction canonical(const PLFunction& F);

Q eval(const PLFunction& F, int edge, const Q& pos);
PLFunction add(const Complex& X, const PLFunction& F, const PLFunction& G);
PLFunction scale(const PLFunction& F, const Q& c);

// Slope leaving x along b; for germs the stored value.
Q slope_along(const Complex& X, const PLFunction& F, const Branch& b);
// Slope along a germ at infinity, oriented toward the interior.
Q slope_at_infinity(const PLFunction& F, int germ);

Q laplacian(const Complex& X, const PLFunction& F, int x);

struct LaplaceSplit {
  Q inside, outside;
};
LaplaceSplit laplacian_split(const Complex& X, const PLFunction& F, int x, const Subgraph& G);

struct BreakPoint {
  int edge;
  Q pos;
  bool operator==(const BreakPoint&) const = default;
};
std::vector<BreakPoint> breakpoints(const Complex& X, const PLFunction& F);

struct Step {
  int edge;
  bool forward;
};
using Path = std::vector<Step>;

void check_path(const Complex& X, const Path& p);  // NotAPath
// Slopes of successive affine pieces along the path, equal neighbours merged.
std::vector<Q> slopes_along_path(const Complex& X, const PLFunction& F, const Path& p);
bool is_log_affine(const Complex& X, const PLFunction& F, const Path& p);

struct Shape {
  bool concave = true, nonincreasing = true;
};
Shape shape_of(const std::vector<Q>& slopes);
Shape shape_checks(const Complex& X, const PLFunction& F, const Path& p);

struct Quantization {
  bool ok = true;
  std::vector<Q> offending;
  Q min_nonzero_abs = 0;  // 0 if no nonzero slope
  Q min_pairwise_gap = 0; // 0 if fewer than two distinct slopes
  bool abs_ok = true, gap_ok = true;
};
std::set<Q> all_slopes(const Complex& X, const PLFunction& F);
Quantization quantization_of(const std::set<Q>& slopes, int r);
Quantization quantization_check(const Complex& X, const PLFunction& F, int r);

// Inserts a vertex at every break of every function, so each function is affine on
// every edge afterwards. New vertices are called "<edge>@<offset>".
struct Refined {
  Complex X;
  std::vector<PLFunction> fns;
};
Refined refine(const Complex& X, const std::vector<PLFunction>& fns);

// The same function seen on a refinement of the complex it was defined on.
PLFunction transport(const Complex& base, const PLFunction& F, const Complex& refined);

}  // namespace skc
