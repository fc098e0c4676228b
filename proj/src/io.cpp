#include "skelcalc/io.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace skc {

namespace {

[[noreturn]] void bad(int line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::pair<std::string, std::string>> fields(const std::string& s, int line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) bad(line, "expected key=value, got '" + tok + "'");
    out.push_back({tok.substr(0, eq), tok.substr(eq + 1)});
  }
  return out;
}

int to_int(const std::string& v, int line, const std::string& key) {
  try {
    size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    bad(line, key + ": not an integer: '" + v + "'");
  }
}

bool to_bool(const std::string& v, int line, const std::string& key) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  bad(line, key + ": expected 0 or 1, got '" + v + "'");
}

Q to_q(const std::string& v, int line, const std::string& key) {
  try {
    return parse_q(v);
  } catch (const Error&) {
    bad(line, key + ": not a rational: '" + v + "'");
  }
}

const char* b01(bool b) { return b ? "1" : "0"; }

struct RawFn {
  std::map<std::string, std::pair<Q, int>> vals;                       // id -> (value, line)
  std::map<std::string, std::pair<std::vector<std::pair<Q, Q>>, int>> edges;
};

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::string section;
  ComplexSpec spec;
  Flags flags;
  std::string label;
  int rank = 0;
  bool have_rank = false;
  std::map<int, RawFn> fns;
  std::map<std::string, int> seen;

  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = raw.substr(0, hash);
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    s = s.substr(first);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    if (s.front() == '[') {
      if (s.back() != ']') bad(line, "unterminated section header");
      section = s.substr(1, s.size() - 2);
      if (section != "skeleton" && section != "profiles" && section != "flags")
        bad(line, "unknown section '" + section + "'");
      continue;
    }
    auto f = fields(s, line);
    if (section == "skeleton") {
      const std::string& kind = f[0].first;
      const std::string& id = f[0].second;
      if (id.empty()) bad(line, kind + ": empty id");
      if (seen.count(id)) bad(line, "duplicate id '" + id + "'");
      seen[id] = line;
      if (kind == "vertex") {
        Vertex v;
        v.id = id;
        for (size_t k = 1; k < f.size(); ++k) {
          auto& [key, val] = f[k];
          if (key == "genus") v.genus = to_int(val, line, key);
          else if (key == "degree") v.degree = to_int(val, line, key);
          else if (key == "boundary") v.boundary = to_bool(val, line, key);
          else if (key == "S") v.in_S = to_bool(val, line, key);
          else if (key == "tr") v.tr = to_bool(val, line, key);
          else if (key == "depth") v.depth = to_q(val, line, key);
          else bad(line, "vertex: unknown field '" + key + "'");
        }
        spec.vertices.push_back(v);
      } else if (kind == "edge") {
        EdgeSpec e;
        e.id = id;
        for (size_t k = 1; k < f.size(); ++k) {
          auto& [key, val] = f[k];
          if (key == "from") e.from = val;
          else if (key == "to") e.to = val;
          else if (key == "length") e.length = to_q(val, line, key);
          else if (key == "degree") e.degree = to_int(val, line, key);
          else if (key == "kind") {
            if (val == "skeleton") e.kind = EdgeKind::Skeleton;
            else if (val == "tree") e.kind = EdgeKind::Tree;
            else bad(line, "edge kind must be skeleton or tree");
          } else bad(line, "edge: unknown field '" + key + "'");
        }
        if (e.from.empty() || e.to.empty()) bad(line, "edge needs from= and to=");
        spec.edges.push_back(e);
      } else if (kind == "germ") {
        GermSpec g;
        g.id = id;
        for (size_t k = 1; k < f.size(); ++k) {
          auto& [key, val] = f[k];
          if (key == "at") g.at = val;
          else if (key == "degree") g.degree = to_int(val, line, key);
          else if (key == "kind") {
            if (val == "open") g.kind = GermKind::OpenBoundary;
            else if (val == "singular") g.kind = GermKind::BoundarySingular;
            else bad(line, "germ kind must be open or singular");
          } else bad(line, "germ: unknown field '" + key + "'");
        }
        if (g.at.empty()) bad(line, "germ needs at=");
        spec.germs.push_back(g);
      } else {
        bad(line, "expected vertex=, edge= or germ=");
      }
    } else if (section == "profiles") {
      for (auto& [key, val] : f) {
        if (key == "rank") {
          rank = to_int(val, line, key);
          have_rank = true;
          continue;
        }
        auto dot = key.find('.');
        if (key.size() < 3 || key[0] != 'R' || dot == std::string::npos)
          bad(line, "expected R<i>.<id>=..., got '" + key + "'");
        int i = to_int(key.substr(1, dot - 1), line, key);
        std::string id = key.substr(dot + 1);
        auto& F = fns[i];
        if (val.find(':') != std::string::npos || val.empty()) {
          std::vector<std::pair<Q, Q>> pts;
          std::stringstream ss(val);
          std::string item;
          while (std::getline(ss, item, ',')) {
            auto c = item.find(':');
            if (c == std::string::npos) bad(line, key + ": expected pos:value");
            pts.push_back({to_q(item.substr(0, c), line, key), to_q(item.substr(c + 1), line, key)});
          }
          if (F.edges.count(id)) bad(line, key + " given twice");
          F.edges[id] = {pts, line};
        } else {
          if (F.vals.count(id)) bad(line, key + " given twice");
          F.vals[id] = {to_q(val, line, key), line};
        }
      }
    } else if (section == "flags") {
      for (auto& [key, val] : f) {
        if (key == "NL") flags.NL = to_bool(val, line, key);
        else if (key == "spectral_at_boundary") flags.spectral_at_boundary = to_bool(val, line, key);
        else if (key == "minimal_S") flags.minimal_S = to_bool(val, line, key);
        else if (key == "label") label = val;
        else bad(line, "unknown flag '" + key + "'");
      }
    } else {
      bad(line, "content before any section");
    }
  }

  Instance I;
  I.X = build_complex(spec);
  I.flags = flags;
  I.label = label;
  const Complex& X = I.X;
  if (!have_rank && !fns.empty()) throw Error(ErrorKind::ParseError, "profile values without rank=");
  if (have_rank && rank < 1) throw Error(ErrorKind::InvalidRank, "rank must be positive");
  I.P.rank = rank;
  for (auto& [i, F] : fns)
    if (i < 1 || i > rank)
      throw Error(ErrorKind::IndexOutOfRange, "profile R" + std::to_string(i) + " outside 1.." +
                                                  std::to_string(rank));
  for (int i = 1; i <= rank; ++i) {
    RawFn& raw_fn = fns[i];
    PLFunction F = constant_fn(X, 0);
    for (auto& [id, vl] : raw_fn.vals) {
      auto& [v, ln] = vl;
      bool placed = false;
      for (int x = 0; x < X.nv() && !placed; ++x)
        if (X.vertices[x].id == id) F.vval[x] = v, placed = true;
      for (int g = 0; g < X.ng() && !placed; ++g)
        if (X.germs[g].id == id) F.germ[g] = v, placed = true;
      if (!placed) bad(ln, "R" + std::to_string(i) + ": no vertex or germ '" + id + "'");
    }
    for (int e = 0; e < X.ne(); ++e) {
      auto& E = X.edges[e];
      F.edge[e].pts = {{Q(0), F.vval[E.a]}, {E.length, F.vval[E.b]}};
    }
    for (auto& [id, pl] : raw_fn.edges) {
      auto& [pts, ln] = pl;
      int e = -1;
      for (int k = 0; k < X.ne(); ++k)
        if (X.edges[k].id == id) e = k;
      if (e < 0) bad(ln, "R" + std::to_string(i) + ": no edge '" + id + "'");
      auto& E = X.edges[e];
      std::vector<std::pair<Q, Q>> all{{Q(0), F.vval[E.a]}};
      for (auto& p : pts) {
        if (p.first <= all.back().first || p.first >= E.length)
          bad(ln, "break positions must increase strictly inside the edge");
        all.push_back(p);
      }
      all.push_back({E.length, F.vval[E.b]});
      F.edge[e].pts = all;
    }
    I.P.logR.push_back(canonical(F));
  }
  if (rank > 0) validate_profile(I.X, I.P);
  return I;
}

Instance read_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize(const Instance& I) {
  const Complex& X = I.X;
  std::ostringstream o;
  o << "[skeleton]\n";
  for (auto& v : X.vertices)
    o << "vertex=" << v.id << " genus=" << v.genus << " degree=" << v.degree
      << " boundary=" << b01(v.boundary) << " S=" << b01(v.in_S) << " tr=" << b01(v.tr)
      << " depth=" << qstr(v.depth) << "\n";
  for (auto& e : X.edges)
    o << "edge=" << e.id << " from=" << X.vertices[e.a].id << " to=" << X.vertices[e.b].id
      << " length=" << qstr(e.length) << " degree=" << e.degree
      << " kind=" << (e.kind == EdgeKind::Tree ? "tree" : "skeleton") << "\n";
  for (auto& g : X.germs)
    o << "germ=" << g.id << " at=" << X.vertices[g.at].id << " degree=" << g.degree
      << " kind=" << (g.kind == GermKind::OpenBoundary ? "open" : "singular") << "\n";
  if (I.P.rank > 0) {
    o << "[profiles]\nrank=" << I.P.rank << "\n";
    for (int i = 1; i <= I.P.rank; ++i) {
      PLFunction F = canonical(I.P.logR[i - 1]);
      std::string R = "R" + std::to_string(i) + ".";
      for (int x = 0; x < X.nv(); ++x) o << R << X.vertices[x].id << "=" << qstr(F.vval[x]) << "\n";
      for (int e = 0; e < X.ne(); ++e) {
        auto& pts = F.edge[e].pts;
        if (pts.size() <= 2) continue;
        o << R << X.edges[e].id << "=";
        for (size_t k = 1; k + 1 < pts.size(); ++k)
          o << (k > 1 ? "," : "") << qstr(pts[k].first) << ":" << qstr(pts[k].second);
        o << "\n";
      }
      for (int g = 0; g < X.ng(); ++g) o << R << X.germs[g].id << "=" << qstr(F.germ[g]) << "\n";
    }
  }
  o << "[flags]\nNL=" << b01(I.flags.NL) << " spectral_at_boundary=" << b01(I.flags.spectral_at_boundary)
    << " minimal_S=" << b01(I.flags.minimal_S);
  if (!I.label.empty()) o << " label=" << I.label;
  o << "\n";
  return o.str();
}

std::string to_dot(const Complex& X) {
  std::ostringstream o;
  o << "graph skeleton {\n";
  for (auto& v : X.vertices) {
    o << "  \"" << v.id << "\" [label=\"" << v.id << " g=" << v.genus << " d=" << v.degree
      << " depth=" << qstr(v.depth) << "\"";
    if (v.in_S) o << " shape=box";
    if (v.boundary) o << " peripheries=2";
    o << "];\n";
  }
  for (auto& e : X.edges) {
    o << "  \"" << X.vertices[e.a].id << "\" -- \"" << X.vertices[e.b].id << "\" [label=\"ℓ="
      << qstr(e.length) << "\"";
    if (e.kind == EdgeKind::Tree) o << " style=dashed";
    o << "];\n";
  }
  for (auto& g : X.germs) {
    o << "  \"" << g.id << "\" [shape=point];\n";
    o << "  \"" << X.vertices[g.at].id << "\" -- \"" << g.id << "\" [style="
      << (g.kind == GermKind::OpenBoundary ? "dotted" : "bold") << "];\n";
  }
  o << "}\n";
  return o.str();
}

std::string report_table(const std::vector<Row>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"eq", "i", "locus", "quantity", "observed", "rel", "bound", "status", "note"});
  for (auto& r : rows) {
    std::string note = r.note;
    if (r.equality_expected) note += note.empty() ? "equality expected" : "; equality expected";
    cells.push_back({r.eq, std::to_string(r.index), r.locus, r.quantity,
                     r.observed ? qstr(*r.observed) : "", r.rel, qstr(r.bound),
                     status_name(r.status), note});
  }
  std::vector<size_t> w(cells[0].size(), 0);
  for (auto& c : cells)
    for (size_t k = 0; k < c.size(); ++k) w[k] = std::max(w[k], c[k].size());
  std::ostringstream o;
  for (auto& c : cells) {
    std::string line;
    for (size_t k = 0; k < c.size(); ++k) {
      line += c[k];
      if (k + 1 < c.size()) line += std::string(w[k] - c[k].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    o << line << "\n";
  }
  return o.str();
}

std::string report_json(const std::vector<Row>& rows) {
  nlohmann::ordered_json out;
  out["rows"] = nlohmann::ordered_json::array();
  for (auto& r : rows) {
    nlohmann::ordered_json j;
    j["eq"] = r.eq;
    j["index"] = r.index;
    j["locus"] = r.locus;
    j["quantity"] = r.quantity;
    j["rel"] = r.rel;
    j["bound"] = qstr(r.bound);
    j["observed"] = r.observed ? nlohmann::ordered_json(qstr(*r.observed)) : nullptr;
    j["status"] = status_name(r.status);
    j["note"] = r.note;
    j["equality_expected"] = r.equality_expected;
    nlohmann::ordered_json h = nlohmann::ordered_json::object();
    for (auto& [name, ok] : r.hyp) h[name] = ok;
    j["hypotheses"] = h;
    out["rows"].push_back(j);
  }
  out["exit"] = exit_code(rows);
  return out.dump(2) + "\n";
}

}  // namespace skc
