#include "skelcalc/pl.hpp"

#include <algorithm>
#include <map>

namespace skc {

namespace {

[[noreturn]] void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

Q piece_slope(const EdgePL& f, size_t k) {
  return (f.pts[k + 1].second - f.pts[k].second) / (f.pts[k + 1].first - f.pts[k].first);
}

EdgePL canonical_edge(const EdgePL& f) {
  EdgePL out;
  for (size_t k = 0; k < f.pts.size(); ++k) {
    if (!out.pts.empty() && out.pts.back().first == f.pts[k].first) continue;
    out.pts.push_back(f.pts[k]);
    size_t n = out.pts.size();
    if (n >= 3) {
      auto& p0 = out.pts[n - 3];
      auto& p1 = out.pts[n - 2];
      auto& p2 = out.pts[n - 1];
      Q s0 = (p1.second - p0.second) / (p1.first - p0.first);
      Q s1 = (p2.second - p1.second) / (p2.first - p1.first);
      if (s0 == s1) out.pts.erase(out.pts.end() - 2);
    }
  }
  return out;
}

Q eval_edge(const EdgePL& f, const Q& pos) {
  auto& p = f.pts;
  if (pos <= p.front().first) return p.front().second;
  for (size_t k = 0; k + 1 < p.size(); ++k)
    if (pos <= p[k + 1].first)
      return p[k].second + (p[k + 1].second - p[k].second) * (pos - p[k].first) /
                               (p[k + 1].first - p[k].first);
  return p.back().second;
}

}  // namespace

PLFunction constant_fn(const Complex& X, const Q& c) {
  PLFunction F;
  F.vval.assign(X.nv(), c);
  for (auto& e : X.edges) F.edge.push_back({{{Q(0), c}, {e.length, c}}});
  F.germ.assign(X.ng(), Q(0));
  return F;
}

PLFunction affine_on_edges(const Complex& X, const std::vector<Q>& vv) {
  PLFunction F;
  F.vval = vv;
  for (auto& e : X.edges) F.edge.push_back({{{Q(0), vv[e.a]}, {e.length, vv[e.b]}}});
  F.germ.assign(X.ng(), Q(0));
  return F;
}

void validate_fn(const Complex& X, const PLFunction& F) {
  if (F.vval.size() != static_cast<size_t>(X.nv()) || F.edge.size() != static_cast<size_t>(X.ne()) ||
      F.germ.size() != static_cast<size_t>(X.ng()))
    fail(ErrorKind::ValidationError, "function does not match the complex");
  for (int i = 0; i < X.ne(); ++i) {
    auto& p = F.edge[i].pts;
    auto& e = X.edges[i];
    if (p.size() < 2) fail(ErrorKind::ValidationError, e.id + ": fewer than two points");
    if (p.front().first != 0 || p.back().first != e.length)
      fail(ErrorKind::ValidationError, e.id + ": points must start at 0 and end at the length");
    for (size_t k = 0; k + 1 < p.size(); ++k)
      if (p[k].first >= p[k + 1].first)
        fail(ErrorKind::ValidationError, e.id + ": break positions not increasing");
    if (p.front().second != F.vval[e.a] || p.back().second != F.vval[e.b])
      fail(ErrorKind::ValidationError, e.id + ": discontinuous at an end");
  }
}

PLFunction canonical(const PLFunction& F) {
  PLFunction G = F;
  for (auto& e : G.edge) e = canonical_edge(e);
  return G;
}

Q eval(const PLFunction& F, int edge, const Q& pos) { return eval_edge(F.edge[edge], pos); }

PLFunction add(const Complex& X, const PLFunction& F, const PLFunction& G) {
  PLFunction H;
  H.vval.resize(X.nv());
  for (int x = 0; x < X.nv(); ++x) H.vval[x] = F.vval[x] + G.vval[x];
  for (int i = 0; i < X.ne(); ++i) {
    std::set<Q> pos;
    for (auto& p : F.edge[i].pts) pos.insert(p.first);
    for (auto& p : G.edge[i].pts) pos.insert(p.first);
    EdgePL e;
    for (auto& s : pos) e.pts.push_back({s, eval_edge(F.edge[i], s) + eval_edge(G.edge[i], s)});
    H.edge.push_back(canonical_edge(e));
  }
  H.germ.resize(X.ng());
  for (int g = 0; g < X.ng(); ++g) H.germ[g] = F.germ[g] + G.germ[g];
  return H;
}

PLFunction scale(const PLFunction& F, const Q& c) {
  PLFunction G = F;
  for (auto& v : G.vval) v *= c;
  for (auto& e : G.edge)
    for (auto& p : e.pts) p.second *= c;
  for (auto& s : G.germ) s *= c;
  return c == 0 ? canonical(G) : G;
}

Q slope_along(const Complex& X, const PLFunction& F, const Branch& b) {
  if (b.germ) {
    if (b.index < 0 || b.index >= X.ng()) fail(ErrorKind::UnknownBranch, "germ index out of range");
    return F.germ[b.index];
  }
  if (b.index < 0 || b.index >= X.ne()) fail(ErrorKind::UnknownBranch, "edge index out of range");
  auto& f = F.edge[b.index];
  if (b.forward) return piece_slope(f, 0);
  return -piece_slope(f, f.pts.size() - 2);
}

Q slope_at_infinity(const PLFunction& F, int germ) { return -F.germ[germ]; }

Q laplacian(const Complex& X, const PLFunction& F, int x) {
  Q s = 0;
  for (auto& b : branches_at(X, x)) s += branch_degree(X, b) * slope_along(X, F, b);
  return s;
}

LaplaceSplit laplacian_split(const Complex& X, const PLFunction& F, int x, const Subgraph& G) {
  LaplaceSplit r;
  for (auto& b : branches_at(X, x)) {
    Q t = branch_degree(X, b) * slope_along(X, F, b);
    if (G.v[x] && contains(G, b))
      r.inside += t;
    else
      r.outside += t;
  }
  return r;
}

std::vector<BreakPoint> breakpoints(const Complex& X, const PLFunction& F) {
  std::vector<BreakPoint> out;
  for (int i = 0; i < X.ne(); ++i) {
    auto c = canonical_edge(F.edge[i]);
    for (size_t k = 1; k + 1 < c.pts.size(); ++k) out.push_back({i, c.pts[k].first});
  }
  return out;
}

void check_path(const Complex& X, const Path& p) {
  if (p.empty()) fail(ErrorKind::NotAPath, "empty path");
  for (auto& s : p)
    if (s.edge < 0 || s.edge >= X.ne()) fail(ErrorKind::NotAPath, "edge index out of range");
  for (size_t k = 0; k + 1 < p.size(); ++k) {
    auto& e = X.edges[p[k].edge];
    auto& f = X.edges[p[k + 1].edge];
    int end = p[k].forward ? e.b : e.a;
    int start = p[k + 1].forward ? f.a : f.b;
    if (end != start) fail(ErrorKind::NotAPath, e.id + " and " + f.id + " do not meet");
  }
}

std::vector<Q> slopes_along_path(const Complex& X, const PLFunction& F, const Path& p) {
  check_path(X, p);
  std::vector<Q> out;
  for (auto& s : p) {
    auto c = canonical_edge(F.edge[s.edge]);
    std::vector<Q> sl;
    for (size_t k = 0; k + 1 < c.pts.size(); ++k) sl.push_back(piece_slope(c, k));
    if (!s.forward) {
      std::reverse(sl.begin(), sl.end());
      for (auto& q : sl) q = -q;
    }
    for (auto& q : sl)
      if (out.empty() || out.back() != q) out.push_back(q);
  }
  return out;
}

bool is_log_affine(const Complex& X, const PLFunction& F, const Path& p) {
  return slopes_along_path(X, F, p).size() <= 1;
}

Shape shape_of(const std::vector<Q>& slopes) {
  Shape s;
  for (size_t k = 0; k < slopes.size(); ++k) {
    if (slopes[k] > 0) s.nonincreasing = false;
    if (k > 0 && slopes[k] > slopes[k - 1]) s.concave = false;
  }
  return s;
}

Shape shape_checks(const Complex& X, const PLFunction& F, const Path& p) {
  return shape_of(slopes_along_path(X, F, p));
}

std::set<Q> all_slopes(const Complex& X, const PLFunction& F) {
  std::set<Q> s;
  for (int i = 0; i < X.ne(); ++i) {
    auto& f = F.edge[i];
    for (size_t k = 0; k + 1 < f.pts.size(); ++k) s.insert(piece_slope(f, k));
  }
  for (auto& g : F.germ) s.insert(g);
  return s;
}

Quantization quantization_of(const std::set<Q>& slopes, int r) {
  if (r < 1) fail(ErrorKind::InvalidRank, "rank must be positive");
  Quantization q;
  for (auto& s : slopes) {
    bool hit = false;
    for (int j = 1; j <= r && !hit; ++j) hit = is_int(s * j);
    if (!hit) q.ok = false, q.offending.push_back(s);
    if (s != 0 && (q.min_nonzero_abs == 0 || qabs(s) < q.min_nonzero_abs)) q.min_nonzero_abs = qabs(s);
  }
  const Q* prev = nullptr;
  for (auto& s : slopes) {
    if (prev && (q.min_pairwise_gap == 0 || s - *prev < q.min_pairwise_gap)) q.min_pairwise_gap = s - *prev;
    prev = &s;
  }
  long long kappa = std::max<long long>(static_cast<long long>(r) * (r - 1), 1);
  q.abs_ok = q.min_nonzero_abs == 0 || q.min_nonzero_abs >= Q(1, r);
  q.gap_ok = q.min_pairwise_gap == 0 || q.min_pairwise_gap >= Q(1, kappa);
  return q;
}

Quantization quantization_check(const Complex& X, const PLFunction& F, int r) {
  return quantization_of(all_slopes(X, F), r);
}

Refined refine(const Complex& X, const std::vector<PLFunction>& fns) {
  std::vector<std::set<Q>> cuts(X.ne());
  for (auto& F : fns)
    for (auto& b : breakpoints(X, F)) cuts[b.edge].insert(b.pos);

  Refined R;
  Complex& Y = R.X;
  Y.vertices = X.vertices;
  Y.germs = X.germs;
  // per input edge: the new vertex index at each cut
  std::vector<std::vector<int>> cutv(X.ne());
  for (int i = 0; i < X.ne(); ++i) {
    auto& e = X.edges[i];
    for (auto& c : cuts[i]) {
      Vertex v;
      v.id = e.id + "@" + qstr(e.offset + c);
      v.degree = e.degree;
      v.depth = e.kind == EdgeKind::Tree ? X.vertices[e.a].depth + c : Q(0);
      cutv[i].push_back(Y.nv());
      Y.vertices.push_back(v);
    }
  }
  std::vector<std::vector<std::pair<Q, Q>>> spans(X.ne());  // per input edge: [start,end] of pieces
  for (int i = 0; i < X.ne(); ++i) {
    auto& e = X.edges[i];
    std::vector<Q> pos{Q(0)};
    for (auto& c : cuts[i]) pos.push_back(c);
    pos.push_back(e.length);
    std::vector<int> ends{e.a};
    for (int v : cutv[i]) ends.push_back(v);
    ends.push_back(e.b);
    for (size_t k = 0; k + 1 < pos.size(); ++k) {
      Edge p = e;
      p.a = ends[k];
      p.b = ends[k + 1];
      p.length = pos[k + 1] - pos[k];
      p.offset = e.offset + pos[k];
      if (k > 0) p.id = e.id + "@" + qstr(e.offset + pos[k]);
      Y.edges.push_back(p);
      spans[i].push_back({pos[k], pos[k + 1]});
    }
  }
  for (auto& F : fns) {
    PLFunction G;
    G.vval = F.vval;
    G.vval.resize(Y.nv());
    for (int i = 0; i < X.ne(); ++i) {
      for (size_t k = 0; k < cutv[i].size(); ++k) G.vval[cutv[i][k]] = eval(F, i, *std::next(cuts[i].begin(), k));
      for (auto& [s, t] : spans[i]) {
        EdgePL piece;
        piece.pts.push_back({Q(0), eval(F, i, s)});
        for (auto& p : F.edge[i].pts)
          if (p.first > s && p.first < t) piece.pts.push_back({p.first - s, p.second});
        piece.pts.push_back({t - s, eval(F, i, t)});
        G.edge.push_back(canonical_edge(piece));
      }
    }
    G.germ = F.germ;
    R.fns.push_back(G);
  }
  return R;
}

PLFunction transport(const Complex& base, const PLFunction& F, const Complex& refined) {
  PLFunction G;
  G.vval.assign(refined.nv(), Q(0));
  for (int x = 0; x < base.nv() && x < refined.nv(); ++x) G.vval[x] = F.vval[x];
  for (auto& e : refined.edges) {
    Q s = e.offset, t = e.offset + e.length;
    EdgePL piece;
    piece.pts.push_back({Q(0), eval(F, e.origin, s)});
    for (auto& p : F.edge[e.origin].pts)
      if (p.first > s && p.first < t) piece.pts.push_back({p.first - s, p.second});
    piece.pts.push_back({e.length, eval(F, e.origin, t)});
    G.vval[e.a] = piece.pts.front().second;
    G.vval[e.b] = piece.pts.back().second;
    G.edge.push_back(canonical_edge(piece));
  }
  G.germ = F.germ;
  return G;
}

}  // namespace skc
