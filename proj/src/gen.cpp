#include "skelcalc/gen.hpp"

#include "skelcalc/bounds.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace skc {
namespace {

[[noreturn]] void fail(ErrorKind k, const std::string& m) { throw Error(k, m); }

// Draws only through the raw engine output, which the standard pins down, so a seed
// gives the same instance with any library.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t s) : eng(s) {}
  int pick(int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return pick(0, 99) < percent; }
};

Q floor_to(const Q& x, int s) {  // largest multiple of 1/s not above x, x >= 0
  Z n = num(x * s), d = den(x * s);
  return Q(n / d) / s;
}

// ---------------------------------------------------------------- skeletons

struct Builder {
  ComplexSpec spec;
  int nt = 0, nf = 0;
  std::string vertex(const std::string& id, bool S, int genus = 0, const Q& depth = 0) {
    Vertex v;
    v.id = id;
    v.in_S = S;
    v.genus = genus;
    v.depth = depth;
    spec.vertices.push_back(v);
    return id;
  }
  void edge(const std::string& id, const std::string& a, const std::string& b, const Q& len,
            EdgeKind k = EdgeKind::Skeleton) {
    EdgeSpec e;
    e.id = id;
    e.from = a;
    e.to = b;
    e.length = len;
    e.kind = k;
    spec.edges.push_back(e);
  }
  void germ(const std::string& id, const std::string& at, GermKind k) {
    GermSpec g;
    g.id = id;
    g.at = at;
    g.kind = k;
    spec.germs.push_back(g);
  }
  Vertex& find(const std::string& id) {
    for (auto& v : spec.vertices)
      if (v.id == id) return v;
    fail(ErrorKind::UnknownVertex, id);
  }
  void tree(Rng& R, const std::string& at, const Q& depth, int level, const GenParams& p) {
    static const Q lens[] = {Q(1, 2), Q(1), Q(3, 2)};
    Q len = lens[R.pick(0, 2)];
    std::string y = vertex("t" + std::to_string(nt++), false, 0, depth + len);
    edge("f" + std::to_string(nf++), at, y, len, EdgeKind::Tree);
    if (level >= p.tree_depth) return;
    int kids = R.pick(0, p.tree_branching);
    for (int k = 0; k < kids; ++k) tree(R, y, depth + len, level + 1, p);
  }
  void trees(Rng& R, const std::string& at, const GenParams& p, int at_least = 0) {
    int n = std::max(at_least, R.pick(0, p.trees_max));
    for (int k = 0; k < n; ++k) tree(R, at, 0, 1, p);
  }
};

void check_params(const GenParams& p) {
  if (p.rank < 1) fail(ErrorKind::InvalidRank, "rank must be positive");
  if (p.s_vertices < 1 && p.shape == "general")
    fail(ErrorKind::InfeasibleParams, "need at least one point of S");
  if (p.genus < 0 || p.open_germs < 0 || p.boundary < 0 || p.trees_max < 0 || p.tree_depth < 1 ||
      p.tree_branching < 0 || p.max_block < 1 || p.slope_max < 0 || p.value_max < 1 || p.retries < 1)
    fail(ErrorKind::InfeasibleParams, "negative or empty parameter");
  if (p.shape != "general" && p.shape != "disk" && p.shape != "annulus")
    fail(ErrorKind::InfeasibleParams, "unknown shape " + p.shape);
}

Complex general_skeleton(Rng& R, const GenParams& p) {
  Builder B;
  int n = p.s_vertices;
  std::vector<std::string> S;
  for (int k = 0; k < n; ++k) S.push_back(B.vertex("s" + std::to_string(k), true));
  int loops = p.loops < 0 ? p.genus : std::min(p.loops, p.genus);
  std::vector<std::pair<int, int>> links;
  for (int k = 1; k < n; ++k) links.push_back({R.pick(0, k - 1), k});
  for (int k = 0; k < loops; ++k) links.push_back({R.pick(0, n - 1), R.pick(0, n - 1)});
  // a genus-0 point of S on fewer than two skeleton branches would need dd^c H_i <= -i,
  // which nothing here can produce, so it takes genus first
  std::vector<int> branches(n, 0);
  for (auto [a, b] : links) ++branches[a], ++branches[b];
  int spare = p.genus - loops;
  for (int k = 0; k < n; ++k)
    if (branches[k] < 2) B.spec.vertices[k].genus = 1, --spare;
  for (int g = 0; g < spare; ++g) B.spec.vertices[R.pick(0, n - 1)].genus++;

  int ne = 0, nj = 0;
  for (auto [a, b] : links) {
    Q len = R.pick(1, 2);
    // self-loops always get a joint so the two ends stay distinct branches in pictures
    if (a == b || R.chance(p.joint_percent)) {
      std::string j = B.vertex("j" + std::to_string(nj++), false);
      B.edge("e" + std::to_string(ne++), S[a], j, len / 2);
      B.edge("e" + std::to_string(ne++), j, S[b], len / 2);
      B.trees(R, j, p);
    } else {
      B.edge("e" + std::to_string(ne++), S[a], S[b], len);
    }
  }
  for (int k = 0; k < p.open_germs; ++k) {
    std::string at = S[R.pick(0, n - 1)];
    if (R.chance(50)) {  // run off through a tail vertex
      std::string t = B.vertex("j" + std::to_string(nj++), false);
      B.edge("e" + std::to_string(ne++), at, t, Q(R.pick(1, 2)));
      B.trees(R, t, p);
      at = t;
    }
    B.germ("b" + std::to_string(k), at, GermKind::OpenBoundary);
  }
  for (int k = 0; k < p.boundary; ++k) {
    Vertex& v = B.spec.vertices[R.pick(0, n - 1)];
    v.boundary = true;
    B.germ("x" + std::to_string(k), v.id, GermKind::BoundarySingular);
  }
  for (auto& s : S) B.trees(R, s, p);
  Complex X = build_complex(B.spec);
  if (p.minimal) X = normalize_triangulation(X);
  return X;
}

Complex disk_skeleton(Rng& R, const GenParams& p) {
  Builder B;
  B.vertex("s0", true, std::max(1, p.genus));
  B.trees(R, "s0", p, 1);
  return build_complex(B.spec);
}

Complex annulus_skeleton(Rng& R, const GenParams& p) {
  Builder B;
  B.vertex("s0", true, (p.genus + 1) / 2);
  B.vertex("s1", true, p.genus / 2);
  int nj = R.pick(1, 2), ne = 0;
  std::string prev = "s0";
  for (int k = 0; k < nj; ++k) {
    std::string j = B.vertex("j" + std::to_string(k), false);
    B.edge("e" + std::to_string(ne++), prev, j, Q(R.pick(1, 2), 2));
    B.trees(R, j, p, 1);
    prev = j;
  }
  B.edge("e" + std::to_string(ne++), prev, "s1", Q(R.pick(1, 2), 2));
  std::string t = B.vertex("j" + std::to_string(nj), false);
  B.edge("e" + std::to_string(ne++), "s1", t, Q(R.pick(1, 2)));
  B.trees(R, t, p, 1);
  B.germ("b0", t, GermKind::OpenBoundary);
  B.germ("b1", "s0", GermKind::OpenBoundary);
  return build_complex(B.spec);
}

// ---------------------------------------------------------------- profiles

// One block: a rank-s piece whose radii all coincide, slopes in (1/s)Z.
struct BlockFn {
  int s = 1;
  PLFunction F;
};

std::vector<std::vector<int>> children_of(const Complex& X) {
  std::vector<std::vector<int>> kids(X.nv());
  for (int e = 0; e < X.ne(); ++e)
    if (X.edges[e].kind == EdgeKind::Tree) kids[X.edges[e].a].push_back(e);
  return kids;
}

Q longest_below(const Complex& X, const std::vector<std::vector<int>>& kids, int y) {
  Q best = 0;
  for (int e : kids[y]) best = std::max(best, X.edges[e].length + longest_below(X, kids, X.edges[e].b));
  return best;
}

struct Knot {
  Q t, v;
};

Q seg_slope(const Knot& a, const Knot& b) { return (b.v - a.v) / (b.t - a.t); }

Q slope_before(const std::vector<Knot>& ks, const Q& t) {
  for (size_t k = 0; k + 1 < ks.size(); ++k)
    if (ks[k].t < t && t <= ks[k + 1].t) return seg_slope(ks[k], ks[k + 1]);
  return 0;
}

Q slope_after(const std::vector<Knot>& ks, const Q& t) {
  for (size_t k = 0; k + 1 < ks.size(); ++k)
    if (ks[k].t <= t && t < ks[k + 1].t) return seg_slope(ks[k], ks[k + 1]);
  return 0;
}

Q at(const std::vector<Knot>& ks, const Q& t) {
  for (size_t k = 0; k + 1 < ks.size(); ++k)
    if (ks[k].t <= t && t <= ks[k + 1].t) {
      if (ks[k + 1].t == ks[k].t) return ks[k].v;
      return ks[k].v + (ks[k + 1].v - ks[k].v) * (t - ks[k].t) / (ks[k + 1].t - ks[k].t);
    }
  return ks.back().v;
}

class ProfileMaker {
 public:
  ProfileMaker(const Complex& X, const GenParams& p, Rng& R)
      : X_(X), p_(p), R_(R), kids_(children_of(X)) {}

  BlockFn block(int s) {
    BlockFn b;
    b.s = s;
    PLFunction& F = b.F;
    F.vval.assign(X_.nv(), Q(0));
    F.edge.assign(X_.ne(), EdgePL{});
    F.germ.assign(X_.ng(), Q(0));
    set_.assign(X_.nv(), 0);
    Q c = -Q(R_.pick(1, p_.value_max));
    for (int x = 0; x < X_.nv(); ++x)
      if (X_.vertices[x].in_S) F.vval[x] = c, set_[x] = 1;
    for (auto& C : annuli_of(X_)) chain(F, s, c, C);
    for (int g = 0; g < X_.ng(); ++g)
      if (X_.germs[g].kind == GermKind::BoundarySingular)
        F.germ[g] = -Q(R_.pick(0, p_.slope_max), s);
    // an interior point with chi >= 0 has no room for a rising tree
    Subgraph sk = skeleton_of(X_);
    for (int x = 0; x < X_.nv(); ++x) {
      if (!X_.vertices[x].in_S) continue;
      Q start(R_.pick(0, p_.slope_max), s);
      if (!X_.vertices[x].boundary && chi_point(X_, x, sk) >= 0) start = 0;
      grow(F, s, x, start);
    }
    return b;
  }

 private:
  Q slope(int s, bool allow_negative = false) {
    int m = R_.pick(allow_negative ? -p_.slope_max : 0, p_.slope_max);
    return Q(m, s);
  }

  // The function along one annulus, from its start to its end.
  void chain(PLFunction& F, int s, const Q& c, const Annulus& C) {
    std::vector<Q> start;  // arc length at the start of each edge step
    Q L = 0;
    for (auto& b : C.steps) {
      start.push_back(L);
      if (!b.germ) L += X_.edges[b.index].length;
    }
    std::vector<Knot> ks;
    Q tail = 0;  // slope leaving toward infinity for germ ends
    bool germ_end = C.end_germ >= 0;
    if (!p_.concavity) {
      ks.push_back({0, c});
      for (size_t k = 0; k < C.joints.size(); ++k) {
        Q t = start[k + 1];
        ks.push_back({t, std::min(Q(0), c + slope(s, true) * t / 2)});
      }
      ks.push_back({L, germ_end ? std::min(Q(0), c + slope(s, true)) : c});
      tail = -slope(s);
    } else if (!germ_end) {
      // equal ends: flat, tent or trapezoid
      ks.push_back({0, c});
      int form = L == 0 ? 0 : R_.pick(0, 2);
      Q a = Q(R_.pick(1, std::max(1, p_.slope_max)), s);
      Q b = R_.chance(50) ? a : Q(R_.pick(1, std::max(1, p_.slope_max)), s);
      if (p_.slope_max == 0) form = 0;
      Q peak = b * L / (a + b);
      Q h = a * peak;
      if (form == 2) h = h / 2;
      if (c + h > 0) form = 0;
      if (form == 1) {
        ks.push_back({peak, c + h});
      } else if (form == 2) {
        ks.push_back({h / a, c + h});
        ks.push_back({L - h / b, c + h});
      }
      ks.push_back({L, c});
    } else {
      // rises, levels off, then decreases toward infinity
      ks.push_back({0, c});
      Q a = slope(s);
      if (a > 0 && L > 0) {
        Q h = std::min<Q>(-c, a * L * Q(R_.pick(1, 4), 4));
        if (h > 0) ks.push_back({h / a, c + h});
      }
      ks.push_back({L, ks.back().v});
      tail = -slope(s);
    }
    std::stable_sort(ks.begin(), ks.end(), [](const Knot& x, const Knot& y) { return x.t < y.t; });
    ks.erase(std::unique(ks.begin(), ks.end(), [](const Knot& x, const Knot& y) { return x.t == y.t; }),
             ks.end());
    for (size_t k = 0; k < C.steps.size(); ++k) {
      auto& b = C.steps[k];
      if (b.germ) {
        F.germ[b.index] = germ_end ? tail : Q(0);
        continue;
      }
      const Edge& E = X_.edges[b.index];
      Q t0 = start[k], t1 = t0 + E.length;
      std::vector<std::pair<Q, Q>> pts;
      auto put = [&](const Q& t) {
        Q pos = b.forward ? t - t0 : t1 - t;
        pts.push_back({pos, at(ks, t)});
      };
      put(t0);
      for (auto& kn : ks)
        if (kn.t > t0 && kn.t < t1) put(kn.t);
      put(t1);
      std::sort(pts.begin(), pts.end());
      F.edge[b.index].pts = pts;
      int far = branch_far_end(X_, b);
      if (!set_[far]) F.vval[far] = at(ks, t1), set_[far] = 1;
    }
    // trees on the joints take what the bend leaves
    for (size_t k = 0; k < C.joints.size(); ++k) {
      Q t = start[k + 1];
      Q after = germ_end && k + 1 == C.joints.size() ? tail : slope_after(ks, t);
      grow(F, s, C.joints[k], std::max(Q(0), slope_before(ks, t) - after));
    }
  }

  // Slopes going down the trees at x never exceed what came in, and the value stays <= 0.
  void grow(PLFunction& F, int s, int y, Q budget) {
    if (!p_.superharmonic) budget = Q(p_.slope_max + 1);
    std::vector<int> order = kids_[y];
    for (size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[R_.pick(0, static_cast<int>(k) - 1)]);
    for (int e : order) {
      const Edge& E = X_.edges[e];
      Q room = -F.vval[y];
      Q span = E.length + longest_below(X_, kids_, E.b);
      Q c = slope(s, !p_.decrease);
      if (c > budget) c = floor_to(std::max(Q(0), budget), s);
      if (c > 0 && c * span > room) c = floor_to(room / span, s);
      if (p_.superharmonic) budget -= std::max(Q(0), c);
      Q end = c;
      std::vector<std::pair<Q, Q>> pts{{0, F.vval[y]}};
      if (c > 0 && R_.chance(35)) {
        end = Q(R_.pick(0, static_cast<int>(num(c * s) - 1)), s);
        Q mid = E.length / 2;
        pts.push_back({mid, F.vval[y] + c * mid});
        pts.push_back({E.length, F.vval[y] + c * mid + end * mid});
      } else {
        pts.push_back({E.length, F.vval[y] + c * E.length});
      }
      if (pts.back().second > 0) pts.back().second = 0;  // only reachable with toggles off
      F.edge[e].pts = pts;
      F.vval[E.b] = pts.back().second;
      grow(F, s, E.b, end);
    }
  }

  const Complex& X_;
  const GenParams& p_;
  Rng& R_;
  std::vector<std::vector<int>> kids_;
  std::vector<char> set_;
};

bool admissible(const Instance& I) {
  try {
    validate_profile(I.X, I.P);
  } catch (const Error&) {
    return false;
  }
  Analysis A = analyze(I);
  for (auto& row : verify_report(A))
    if (row.status == Status::Fail) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- params

namespace {
struct Field {
  const char* key;
  std::function<void(GenParams&, const std::string&)> set;
  std::function<std::string(const GenParams&)> get;
};

int to_int(const std::string& k, const std::string& v) {
  try {
    size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(x);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, k + ": not an integer: " + v);
  }
}

bool to_bool(const std::string& k, const std::string& v) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  fail(ErrorKind::ParseError, k + ": expected 0 or 1, got " + v);
}

#define INT_FIELD(name) \
  Field{#name, [](GenParams& p, const std::string& v) { p.name = to_int(#name, v); }, \
        [](const GenParams& p) { return std::to_string(p.name); }}
#define BOOL_FIELD(name) \
  Field{#name, [](GenParams& p, const std::string& v) { p.name = to_bool(#name, v); }, \
        [](const GenParams& p) { return std::string(p.name ? "1" : "0"); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> fs = {
      Field{"seed",
            [](GenParams& p, const std::string& v) {
              try {
                size_t used = 0;
                p.seed = std::stoull(v, &used);
                if (used != v.size()) throw std::invalid_argument(v);
              } catch (const std::exception&) {
                fail(ErrorKind::ParseError, "seed: not an unsigned integer: " + v);
              }
            },
            [](const GenParams& p) { return std::to_string(p.seed); }},
      INT_FIELD(rank),
      Field{"shape", [](GenParams& p, const std::string& v) { p.shape = v; },
            [](const GenParams& p) { return p.shape; }},
      INT_FIELD(s_vertices), INT_FIELD(genus), INT_FIELD(loops), INT_FIELD(open_germs),
      INT_FIELD(boundary), INT_FIELD(joint_percent), INT_FIELD(trees_max), INT_FIELD(tree_depth),
      INT_FIELD(tree_branching), INT_FIELD(max_block), INT_FIELD(slope_max), INT_FIELD(value_max),
      BOOL_FIELD(concavity), BOOL_FIELD(decrease), BOOL_FIELD(superharmonic), BOOL_FIELD(minimal),
      Field{"adversarial", [](GenParams& p, const std::string& v) { p.adversarial = v; },
            [](const GenParams& p) { return p.adversarial; }},
      INT_FIELD(retries),
  };
  return fs;
}
#undef INT_FIELD
#undef BOOL_FIELD
}  // namespace

GenParams parse_params(const std::string& text) {
  GenParams p;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      auto eq = w.find('=');
      if (eq == std::string::npos) fail(ErrorKind::ParseError, "line " + std::to_string(n) + ": expected key=value");
      std::string k = w.substr(0, eq), v = w.substr(eq + 1);
      bool known = false;
      for (auto& f : fields())
        if (k == f.key) f.set(p, v), known = true;
      if (!known) fail(ErrorKind::ParseError, "line " + std::to_string(n) + ": unknown key " + k);
    }
  }
  return p;
}

std::string params_text(const GenParams& p) {
  std::string out;
  for (auto& f : fields()) out += std::string(f.key) + "=" + f.get(p) + "\n";
  return out;
}

// ---------------------------------------------------------------- trees

namespace {
std::string rooted_code(const std::vector<std::vector<int>>& adj, int v, int from) {
  std::vector<std::string> subs;
  for (int w : adj[v])
    if (w != from) subs.push_back(rooted_code(adj, w, v));
  std::sort(subs.begin(), subs.end());
  std::string s = "(";
  for (auto& x : subs) s += x;
  return s + ")";
}

std::string tree_code(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 1) return "()";
  // peel leaves to find the center(s)
  std::vector<int> deg(n);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    if (deg[v] <= 1) layer.push_back(v);
  }
  int left = n;
  while (left > 2) {
    left -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int w : adj[v])
        if (--deg[w] == 1) next.push_back(w);
    layer = next;
  }
  std::string best;
  for (int c : layer) {
    std::string s = rooted_code(adj, c, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}
}  // namespace

std::vector<AGraph> enumerate_marked_trees(int n_max) {
  if (n_max > 10) fail(ErrorKind::BudgetExceeded, "trees are enumerated up to 10 vertices");
  std::vector<AGraph> out;
  if (n_max < 1) return out;
  using Adj = std::vector<std::vector<int>>;
  std::vector<Adj> level{Adj(1)};
  auto emit = [&](const Adj& adj) {
    AGraph G;
    G.vdeg.assign(adj.size(), 1);
    G.vmap.assign(adj.size(), -1);
    for (int v = 0; v < static_cast<int>(adj.size()); ++v)
      for (int w : adj[v])
        if (v < w) G.edges.push_back({v, w, 1});
    out.push_back(G);
  };
  emit(level[0]);
  for (int n = 2; n <= n_max; ++n) {
    std::map<std::string, Adj> seen;
    for (auto& T : level)
      for (int v = 0; v < static_cast<int>(T.size()); ++v) {
        Adj U = T;
        int w = static_cast<int>(U.size());
        U.push_back({v});
        U[v].push_back(w);
        seen.emplace(tree_code(U), U);
      }
    level.clear();
    for (auto& [code, T] : seen) level.push_back(T), emit(T);
  }
  return out;
}

// ---------------------------------------------------------------- generation

Complex gen_skeleton(const GenParams& p) {
  check_params(p);
  Rng R(p.seed);
  if (p.shape == "disk") return disk_skeleton(R, p);
  if (p.shape == "annulus") return annulus_skeleton(R, p);
  try {
    return general_skeleton(R, p);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::GenusZeroProjectiveComponent)
      fail(ErrorKind::InfeasibleParams, std::string("no minimal triangulation: ") + e.what());
    throw;
  }
}

PLFunction order_statistic(const Complex& X, const std::vector<PLFunction>& fs, int k) {
  if (fs.empty() || k < 0 || k >= static_cast<int>(fs.size()))
    fail(ErrorKind::IndexOutOfRange, "order statistic out of range");
  PLFunction out;
  out.vval.resize(X.nv());
  out.edge.resize(X.ne());
  out.germ.resize(X.ng());
  for (int x = 0; x < X.nv(); ++x) {
    std::vector<Q> v;
    for (auto& F : fs) v.push_back(F.vval[x]);
    std::nth_element(v.begin(), v.begin() + k, v.end());
    out.vval[x] = v[k];
  }
  for (int g = 0; g < X.ng(); ++g) {
    std::vector<std::pair<Q, Q>> v;
    for (auto& F : fs) v.push_back({F.vval[X.germs[g].at], F.germ[g]});
    std::sort(v.begin(), v.end());
    out.germ[g] = v[k].second;
  }
  for (int e = 0; e < X.ne(); ++e) {
    std::set<Q> pos;
    for (auto& F : fs)
      for (auto& p : F.edge[e].pts) pos.insert(p.first);
    std::vector<Q> base(pos.begin(), pos.end());
    for (size_t m = 0; m + 1 < base.size(); ++m) {
      const Q &lo = base[m], &hi = base[m + 1];
      for (size_t a = 0; a < fs.size(); ++a)
        for (size_t b = a + 1; b < fs.size(); ++b) {
          Q d0 = eval(fs[a], e, lo) - eval(fs[b], e, lo);
          Q d1 = eval(fs[a], e, hi) - eval(fs[b], e, hi);
          if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) pos.insert(lo + (hi - lo) * d0 / (d0 - d1));
        }
    }
    for (auto& t : pos) {
      std::vector<Q> v;
      for (auto& F : fs) v.push_back(eval(F, e, t));
      std::nth_element(v.begin(), v.begin() + k, v.end());
      out.edge[e].pts.push_back({t, v[k]});
    }
  }
  return canonical(out);
}

Profile gen_profile(const Complex& X, const GenParams& p) {
  check_params(p);
  Rng R(p.seed ^ 0x9e3779b97f4a7c15ULL);
  bool checked = p.concavity && p.decrease && p.superharmonic;
  for (int attempt = 0; attempt < p.retries; ++attempt) {
    ProfileMaker M(X, p, R);
    // at most one block of size > 1 keeps every height slope inside the lattice
    std::vector<PLFunction> radii;
    int left = p.rank;
    bool big = false;
    while (left > 0) {
      int s = 1;
      if (!big && left >= 2 && p.max_block >= 2 && R.chance(40)) {
        s = R.pick(2, std::min(left, p.max_block));
        big = true;
      }
      BlockFn b = M.block(s);
      for (int k = 0; k < s; ++k) radii.push_back(b.F);
      left -= s;
    }
    Profile P;
    P.rank = p.rank;
    for (int i = 0; i < p.rank; ++i) P.logR.push_back(order_statistic(X, radii, i));
    Instance I;
    I.X = X;
    I.P = P;
    if (!checked) {
      try {
        validate_profile(X, P);
      } catch (const Error&) {
        continue;
      }
      return P;
    }
    if (admissible(I)) return P;
  }
  fail(ErrorKind::InfeasibleParams, "no admissible profile after " + std::to_string(p.retries) + " tries");
}

Instance generate(const GenParams& p) {
  if (!p.adversarial.empty()) return adversarial(p.adversarial, p.seed);
  Instance I;
  I.X = gen_skeleton(p);
  I.P = gen_profile(I.X, p);
  return I;
}

// ---------------------------------------------------------------- fixed instances

namespace {

PLFunction values(const Complex& X, const std::map<std::string, Q>& vv,
                  const std::map<std::string, std::vector<std::pair<Q, Q>>>& interior = {},
                  const std::map<std::string, Q>& germs = {}) {
  std::vector<Q> v(X.nv(), Q(0));
  for (auto& [id, q] : vv) v[X.vertex_index(id)] = q;
  PLFunction F = affine_on_edges(X, v);
  for (auto& [id, pts] : interior) {
    int e = X.edge_index(id);
    auto ends = F.edge[e].pts;
    F.edge[e].pts = {ends.front()};
    for (auto& q : pts) F.edge[e].pts.push_back(q);
    F.edge[e].pts.push_back(ends.back());
  }
  for (auto& [id, q] : germs) F.germ[X.germ_index(id)] = q;
  return F;
}

Instance finish(Complex X, std::vector<PLFunction> fs, std::string label = {}) {
  Instance I;
  I.X = std::move(X);
  I.P.rank = static_cast<int>(fs.size());
  for (auto& F : fs) I.P.logR.push_back(canonical(F));
  I.label = std::move(label);
  validate_profile(I.X, I.P);
  return I;
}

}  // namespace

const std::vector<std::string>& adversarial_names() {
  static const std::vector<std::string> names = {"convex-spectral", "disk-superharmonic",
                                                 "slope-quantization", "tree-superharmonic"};
  return names;
}

std::string adversarial_target(const std::string& name) {
  if (name == "convex-spectral") return rowid::kAnnulusConcave;
  if (name == "disk-superharmonic") return rowid::kDiskFirst;
  if (name == "slope-quantization") return rowid::kAnnulusSkeleton;
  if (name == "tree-superharmonic") return rowid::kAnnulusTrees;
  fail(ErrorKind::InfeasibleParams, "unknown adversarial constraint " + name);
}

Instance adversarial(const std::string& name, std::uint64_t seed) {
  adversarial_target(name);
  Q base = -Q(5 + static_cast<long long>(seed % 3));
  Builder B;
  if (name == "convex-spectral") {
    // the loop bends upward at j1 and pays it back at j2
    B.vertex("u", true, 1);
    B.vertex("j1", false);
    B.vertex("j2", false);
    B.edge("e0", "u", "j1", 1);
    B.edge("e1", "j1", "j2", 1);
    B.edge("e2", "j2", "u", 3);
    Complex X = build_complex(B.spec);
    return finish(X, {values(X, {{"u", base}, {"j1", base + 1}, {"j2", base + 3}})}, name);
  }
  if (name == "disk-superharmonic") {
    // slope 1/2 at the root, then steeper: one break and one end on a budget of 1/2
    B.vertex("u", true, 1);
    B.vertex("y", false, 0, 1);
    B.vertex("z", false, 0, 2);
    B.edge("f0", "u", "y", 1, EdgeKind::Tree);
    B.edge("f1", "y", "z", 1, EdgeKind::Tree);
    Complex X = build_complex(B.spec);
    return finish(X,
                  {values(X, {{"u", base}, {"y", base + Q(1, 2)}, {"z", base + Q(3, 2)}}),
                   constant_fn(X, Q(-1))},
                  name);
  }
  if (name == "slope-quantization") {
    // two breaks of 1/3 on a loop that only bends by 2/3
    B.vertex("u", true, 1);
    B.edge("e0", "u", "u", 3);
    Complex X = build_complex(B.spec);
    return finish(X, {values(X, {{"u", base}},
                             {{"e0", {{Q(1), base + Q(1, 3)}, {Q(2), base + Q(1, 3)}}}})},
                  name);
  }
  // tree-superharmonic: a tree on the joint with three ends paid for by a bend of 2
  B.vertex("u", true, 1);
  B.vertex("j", false);
  B.vertex("y", false, 0, 1);
  B.edge("e0", "u", "j", 1);
  B.edge("e1", "j", "u", 1);
  B.edge("f0", "j", "y", 1, EdgeKind::Tree);
  std::map<std::string, Q> vv{{"u", base}, {"j", base + 1}, {"y", base + 2}};
  for (int k = 0; k < 3; ++k) {
    std::string z = "z" + std::to_string(k);
    B.vertex(z, false, 0, 2);
    B.edge("f" + std::to_string(k + 1), "y", z, 1, EdgeKind::Tree);
    vv[z] = base + 3;
  }
  Complex X = build_complex(B.spec);
  return finish(X, {values(X, vv)}, name);
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"circle", "theta", "genus1", "path3", "disk-gos"};
  return names;
}

Instance fixture(const std::string& name) {
  Builder B;
  if (name == "circle") {
    B.vertex("v0", true);
    B.edge("e0", "v0", "v0", 1);
    Complex X = build_complex(B.spec);
    return finish(X, {constant_fn(X, Q(-1))});
  }
  if (name == "theta") {
    B.vertex("v0", true);
    B.vertex("v1", true);
    for (int k = 0; k < 3; ++k) B.edge("e" + std::to_string(k), "v0", "v1", 1);
    Complex X = build_complex(B.spec);
    return finish(X, {constant_fn(X, Q(-1)), constant_fn(X, Q(-1, 2))});
  }
  if (name == "genus1") {
    B.vertex("v0", true, 1);
    Complex X = build_complex(B.spec);
    return finish(X, {constant_fn(X, Q(-1))});
  }
  if (name == "path3") {
    B.vertex("s0", true, 1);
    B.vertex("s1", true);
    B.vertex("s2", true, 1);
    B.edge("e0", "s0", "s1", 1);
    B.edge("e1", "s1", "s2", 1);
    Complex X = build_complex(B.spec);
    return finish(X, {constant_fn(X, Q(-1))});
  }
  if (name == "disk-gos") {
    // a disk whose boundary point carries the singular germ
    B.vertex("x0", true);
    B.find("x0").boundary = true;
    B.germ("g0", "x0", GermKind::BoundarySingular);
    Complex X = build_complex(B.spec);
    Instance I = finish(X, {values(X, {{"x0", 0}}, {}, {{"g0", -3}}), values(X, {{"x0", 0}})});
    I.flags.NL = true;
    return I;
  }
  fail(ErrorKind::InfeasibleParams, "unknown fixture " + name);
}

}  // namespace skc
