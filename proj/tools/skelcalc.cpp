#include "skelcalc/bounds.hpp"
#include "skelcalc/gen.hpp"
#include "skelcalc/io.hpp"
#include "skelcalc/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace skc;

namespace {

struct Opts {
  std::string instance, report = "table", params, out, equations, fixture, adversarial;
  int index = 0;
  std::uint64_t seed = 1;
  bool seed_given = false, oracle = false;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const Opts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + o.out);
  f << text;
}

std::string names(const Complex& X, const std::vector<char>& m) {
  std::string s;
  for (int x = 0; x < X.nv(); ++x)
    if (m[x]) s += (s.empty() ? "" : " ") + X.vertices[x].id;
  return s.empty() ? "-" : s;
}

int analyze_cmd(const Opts& o) {
  Instance I = read_instance(o.instance);
  Analysis A = analyze(I);
  auto eu = euler_data(A.X);
  if (o.report == "structured") {
    nlohmann::ordered_json j;
    j["euler"] = {{"chi_top", eu.chi_top}, {"genus", eu.genus}, {"chi_c", eu.chi_c}, {"n_infty", eu.n_infty}};
    j["rank"] = A.r;
    j["levels"] = nlohmann::ordered_json::array();
    for (int i = 0; i <= A.r; ++i) {
      auto& c = A.lin_counts[i];
      j["levels"].push_back({{"index", i}, {"v", c.v}, {"e", c.e}, {"e_open", c.e_open}, {"v_w", c.v_w},
                             {"e_w", c.e_w}, {"v1", c.vn(1)}, {"v2", c.vn(2)}});
    }
    j["points"] = nlohmann::ordered_json::array();
    for (int x = 0; x < A.X.nv(); ++x) {
      auto& c = A.cls[x];
      std::vector<std::string> cls;
      for (auto s : c.cls) cls.push_back(solv_name(s));
      j["points"].push_back({{"id", A.X.vertices[x].id}, {"i_sp", c.i_sp}, {"i_sol", c.i_sol}, {"classes", cls}});
    }
    emit(o, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream s;
  s << "chi_top " << eu.chi_top << "  genus " << eu.genus << "  chi_c " << eu.chi_c << "  n_infty "
    << eu.n_infty << "\n";
  s << "rank " << A.r << "\n\nindex  v  e  e_open  v_w  e_w  v1  v2\n";
  for (int i = 0; i <= A.r; ++i) {
    if (o.index && i != o.index) continue;
    auto& c = A.lin_counts[i];
    s << i << "  " << c.v << "  " << c.e << "  " << c.e_open << "  " << c.v_w << "  " << c.e_w << "  "
      << c.vn(1) << "  " << c.vn(2) << "\n";
  }
  s << "\npoint  i_sp  i_sol  classes\n";
  for (int x = 0; x < A.X.nv(); ++x) {
    auto& c = A.cls[x];
    s << A.X.vertices[x].id << "  " << c.i_sp << "  " << c.i_sol << " ";
    for (auto v : c.cls) s << " " << solv_name(v);
    s << "\n";
  }
  emit(o, s.str());
  return 0;
}

int rows_cmd(const Opts& o, bool verify) {
  Instance I = read_instance(o.instance);
  Analysis A = analyze(I);
  auto rows = verify ? verify_report(A) : bound_report(A);
  rows = filter_rows(rows, split(o.equations), o.index);
  int code = exit_code(rows);
  std::vector<std::string> diff;
  if (o.oracle) {
    diff = oracle_verify(I);
    if (!diff.empty()) code = 1;
  }
  std::string text;
  if (o.report == "structured") {
    auto j = nlohmann::ordered_json::parse(report_json(rows));
    if (verify) {
      auto ex = exceptional_sets(A);
      nlohmann::ordered_json e = nlohmann::ordered_json::array();
      for (int i = 1; i <= A.r; ++i)
        e.push_back({{"index", i}, {"E", names(A.X, ex.E[i])}, {"aleph", names(A.X, ex.aleph[i])},
                     {"C", names(A.X, ex.C[i])}});
      j["exceptional"] = e;
    }
    if (o.oracle) j["oracle_diff"] = diff;
    j["exit"] = code;
    text = j.dump(2) + "\n";
  } else {
    if (verify) {
      auto ex = exceptional_sets(A);
      for (int i = 1; i <= A.r; ++i)
        text += "# index " + std::to_string(i) + ": E " + names(A.X, ex.E[i]) + "; aleph " +
                names(A.X, ex.aleph[i]) + "; C " + names(A.X, ex.C[i]) + "\n";
    }
    text += report_table(rows);
    if (o.oracle) {
      text += diff.empty() ? "oracle: no differences\n" : "oracle: " + std::to_string(diff.size()) + " differences\n";
      for (auto& d : diff) text += "  " + d + "\n";
    }
  }
  emit(o, text);
  return code;
}

int generate_cmd(const Opts& o) {
  Instance I;
  if (!o.fixture.empty()) {
    I = fixture(o.fixture);
  } else {
    GenParams p;
    if (!o.params.empty()) {
      std::ifstream f(o.params);
      if (!f) throw Error(ErrorKind::ParseError, "cannot read " + o.params);
      std::stringstream ss;
      ss << f.rdbuf();
      p = parse_params(ss.str());
    }
    if (o.seed_given) p.seed = o.seed;
    if (!o.adversarial.empty()) p.adversarial = o.adversarial;
    I = generate(p);
  }
  emit(o, serialize(I));
  return 0;
}

int dot_cmd(const Opts& o) {
  Instance I = read_instance(o.instance);
  emit(o, to_dot(I.X));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radius profiles on skeleta: counts, bounds and checks"};
  app.require_subcommand(1);
  Opts o;
  auto common = [&](CLI::App* c, bool needs_instance) {
    auto* opt = c->add_option("--instance", o.instance, "instance file");
    if (needs_instance) opt->required();
    c->add_option("--out", o.out, "write here instead of stdout");
  };
  auto reports = [&](CLI::App* c) {
    c->add_option("--index", o.index, "only this index (0: all)");
    c->add_option("--report", o.report, "table or structured")->check(CLI::IsMember({"table", "structured"}));
    c->add_option("--equations", o.equations, "comma separated row ids");
  };
  auto* an = app.add_subcommand("analyze", "Euler data, counts per level, classification");
  common(an, true);
  reports(an);
  auto* bd = app.add_subcommand("bound", "every bound row");
  common(bd, true);
  reports(bd);
  bd->add_flag("--oracle", o.oracle, "also diff against the independent recomputation");
  auto* vf = app.add_subcommand("verify", "super-harmonicity, exceptional sets, profile checks");
  common(vf, true);
  reports(vf);
  vf->add_flag("--oracle", o.oracle, "also diff against the independent recomputation");
  auto* gn = app.add_subcommand("generate", "write a generated instance");
  common(gn, false);
  gn->add_option("--seed", o.seed, "generator seed")->each([&](const std::string&) { o.seed_given = true; });
  gn->add_option("--params", o.params, "key=value parameter file");
  gn->add_option("--fixture", o.fixture, "one of the named fixtures");
  gn->add_option("--adversarial", o.adversarial, "name of the constraint to break");
  auto* dt = app.add_subcommand("export-dot", "graphviz source of the complex");
  common(dt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  try {
    if (an->parsed()) return analyze_cmd(o);
    if (bd->parsed()) return rows_cmd(o, false);
    if (vf->parsed()) return rows_cmd(o, true);
    if (gn->parsed()) return generate_cmd(o);
    if (dt->parsed()) return dot_cmd(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
