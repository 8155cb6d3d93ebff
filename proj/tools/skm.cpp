#include "skm/skm.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

using namespace skm;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  Json report;
};

Json steps_json(const std::vector<Step>& path) {
  Json a = Json::array();
  for (const Step& s : path) a.push_back(s.vertex + 1);
  return a;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Json root_json(const RootVec& r) {
  Json a = Json::array();
  for (long long x : r) a.push_back(x);
  return a;
}

Json base_json(const Base& b) {
  Json j;
  j["diagram"] = diagram_to_json(b.diagram);
  j["path"] = steps_json(b.path);
  Json roots = Json::array(), coroots = Json::array();
  for (const auto& r : b.roots) roots.push_back(root_json(r));
  for (const auto& c : b.coroots) coroots.push_back(vec_json(c));
  j["roots"] = roots;
  j["coroots"] = coroots;
  return j;
}

int tri_code(Tri t) { return t == Tri::True ? 0 : 1; }

void print_pretty(const Json& j, const std::string& indent, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    bool scalar_array = v.is_array() && std::none_of(v.begin(), v.end(), [](const Json& x) {
      return x.is_structured();
    });
    if (v.is_object()) {
      out << indent << it.key() << ":\n";
      print_pretty(v, indent + "  ", out);
    } else if (v.is_array() && !scalar_array) {
      out << indent << it.key() << ":\n";
      int k = 0;
      for (const auto& e : v) {
        out << indent << "  [" << k++ << "]";
        if (e.is_object()) {
          out << "\n";
          print_pretty(e, indent + "    ", out);
        } else {
          out << " " << e.dump() << "\n";
        }
      }
    } else {
      out << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

Result cmd_normalize(const std::string& file) {
  Diagram d = read_diagram(file);
  return {0, Json{{"verdict", "ok"}, {"diagram", diagram_to_json(normalize(d))}}};
}

Result cmd_reflect(const std::string& file, int vertex, bool even) {
  Diagram d = read_diagram(file);
  if (vertex < 1 || vertex > d.n()) throw InputError("vertex out of range");
  Base b = make_base(d);
  int k = vertex - 1;
  Json j;
  j["vertex"] = vertex;
  j["reflection"] = even ? "even" : "odd";
  try {
    Base nb = even ? even_reflect(b, k) : odd_reflect(b, k);
    j = Json{{"verdict", "ok"}, {"vertex", vertex}, {"reflection", even ? "even" : "odd"}};
    j.update(base_json(nb));
    return {0, j};
  } catch (const ReflectError& e) {
    return {1, Json{{"verdict", "refused"}, {"vertex", vertex}, {"reason", e.what()}}};
  }
}

Result cmd_orbit(const std::string& file, int max_depth, bool mod_shift) {
  Diagram d = read_diagram(file);
  Orbit o = orbit(make_base(d), max_depth, mod_shift ? CanonMode::ModShift : CanonMode::Exact);
  Json j;
  j["verdict"] = status_name(o.status);
  j["size"] = o.size();
  Json mem = Json::array();
  for (const auto& m : o.members)
    mem.push_back(Json{{"key", m.key}, {"depth", m.depth}, {"path", steps_json(m.base.path)},
                       {"diagram", diagram_to_json(m.base.diagram)}});
  j["members"] = mem;
  Json edges = Json::array();
  for (const auto& e : o.edges) edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"vertex", e.vertex + 1}});
  j["edges"] = edges;
  Json refused = Json::array();
  for (const auto& r : o.refused) refused.push_back(Json{{"member", r.member}, {"vertex", r.vertex + 1}});
  j["refused"] = refused;
  return {o.status == OrbitStatus::Truncated ? 1 : 0, j};
}

Json violations_json(const std::vector<GcmViolation>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(Json{{"rule", v.rule}, {"i", v.i + 1}, {"j", v.j + 1}});
  return a;
}

Json regular_json(const RegularVerdict& r) {
  Json j;
  j["verdict"] = tri_name(r.value);
  j["orbit_status"] = status_name(r.status);
  j["orbit_size"] = r.orbit_size;
  if (r.value == Tri::False) {
    j["witness_depth"] = r.depth;
    j["witness_path"] = steps_json(r.witness_path);
    j["witness"] = diagram_to_json(r.witness);
    j["violations"] = violations_json(r.violations);
  }
  if (r.lifted) j["lifted"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Result cmd_check(const std::string& file, const std::string& what, int max_depth) {
  Diagram d = read_diagram(file);
  if (what == "gcm") {
    GcmVerdict g = is_generalized_cartan(normalize(d));
    return {g.ok() ? 0 : 1, Json{{"verdict", g.ok() ? "true" : "false"}, {"violations", violations_json(g.violations)}}};
  }
  if (what == "regular") {
    RegularVerdict r = is_regular_kac_moody(d, max_depth);
    return {tri_code(r.value), regular_json(r)};
  }
  if (what == "subfinite") {
    SubfiniteVerdict s = is_subfinite(d, max_depth);
    Json j{{"verdict", tri_name(s.value)}};
    if (s.value == Tri::False) {
      j["witness_path"] = steps_json(s.witness_path);
      Json sub = Json::array();
      for (int v : s.subset) sub.push_back(v + 1);
      j["subdiagram"] = sub;
    }
    if (!s.note.empty()) j["note"] = s.note;
    return {tri_code(s.value), j};
  }
  bool f = is_finite_type(d);
  return {f ? 0 : 1, Json{{"verdict", f ? "true" : "false"}}};
}

Result cmd_classify(const std::string& file, int max_depth) {
  Diagram d = read_diagram(file);
  FamilyLabel l = recognize_family(d);
  Json j;
  j["verdict"] = l.known() ? l.text() : "Unknown";
  j["family"] = l.family;
  j["params"] = l.params;
  if (!l.source.empty()) j["source"] = l.source;
  RegularVerdict r = is_regular_kac_moody(d, max_depth);
  j["regular"] = tri_name(r.value);
  if (r.value == Tri::True && connected(normalize(d)) && normalize(d).has_isotropic())
    j["subfinite"] = tri_name(is_subfinite(d, max_depth).value);
  return {l.known() ? 0 : 1, j};
}

Result cmd_qmnt(int m, int n, int t, const std::string& branch) {
  QmntSolutions s = solve_qmnt(m, n, t);
  Json j;
  j["verdict"] = "ok";
  j["m"] = m;
  j["n"] = n;
  j["t"] = t;
  j["D"] = s.plus.D.str();
  j["f"] = s.f.str("a");
  j["discriminant"] = s.disc.str();
  j["square_factor"] = s.square_factor.str();
  Json br = Json::array();
  for (const QmntSolution* q : {&s.plus, &s.minus}) {
    if (!branch.empty() && branch != (q->plus ? "plus" : "minus")) continue;
    QmntReport r = qmnt_report(*q);
    br.push_back(Json{{"branch", q->plus ? "plus" : "minus"},
                      {"a", q->a.str()},
                      {"b", q->b.str()},
                      {"c", q->c.str()},
                      {"det", r.det.str()},
                      {"symmetrizable", r.symmetrizable},
                      {"diagram", diagram_to_json(q->raw)}});
  }
  j["branches"] = br;
  QmntReport r = qmnt_report(s.plus);
  Json B = Json::array();
  for (const auto& row : r.B) B.push_back(vec_json(row));
  j["B"] = B;
  j["B_type"] = gcm_type_name(r.b_type);
  j["hyperbolic"] = r.hyperbolic;
  return {0, j};
}

Result cmd_principal_roots(const std::string& file, int max_depth) {
  Diagram d = read_diagram(file);
  PrincipalRootSet pr = default_classifier().principal_roots_of(d, max_depth);
  Json roots = Json::array();
  for (const auto& p : pr.roots)
    roots.push_back(Json{{"root", root_json(p.root)},
                         {"coroot", vec_json(p.coroot)},
                         {"path", steps_json(p.path)},
                         {"target", p.target + 1},
                         {"doubled", p.doubled},
                         {"witnesses", p.witnesses.size()}});
  return {pr.complete ? 0 : 1, Json{{"verdict", pr.complete ? "complete" : "truncated"}, {"roots", roots}}};
}

Result cmd_integrable(const std::string& file, const std::string& weight, int max_depth) {
  Diagram d = read_diagram(file);
  Weight w{parse_weight(weight)};
  IntegrabilityVerdict v = is_integrable_hw(d, w, max_depth);
  Json conds = Json::array();
  for (const auto& c : v.conditions) {
    Json br = Json::array();
    for (const auto& b : c.branches)
      br.push_back(Json{{"vertex", b.vertex + 1}, {"value", b.value.str()}, {"subtract", b.coeff.str()}});
    conds.push_back(Json{{"root", root_json(c.root)},
                         {"path", steps_json(c.path)},
                         {"value", c.value.str()},
                         {"required", c.exponent ? "2Z>=0" : "Z>=0"},
                         {"pass", c.pass},
                         {"branches", br}});
  }
  Json j{{"verdict", tri_name(v.integrable)}, {"conditions", conds}};
  if (!v.note.empty()) j["note"] = v.note;
  return {tri_code(v.integrable), j};
}

Result cmd_verify_corpus(const std::string& dir, int max_depth) {
  auto list = [](const fs::path& p) {
    std::vector<fs::path> out;
    if (!fs::is_directory(p)) return out;
    for (const auto& e : fs::directory_iterator(p))
      if (e.is_regular_file() && e.path().extension() == ".diagram") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
  };
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  Json files = Json::array();
  int failed = 0;
  auto files_pos = list(dir);
  if (files_pos.empty()) throw InputError("no .diagram files in " + dir);
  for (const auto& f : files_pos) {
    Diagram d = read_diagram(f);
    RegularVerdict r = is_regular_kac_moody(d, max_depth);
    std::string sub = "skipped";
    if (r.value == Tri::True) sub = tri_name(is_subfinite(d, max_depth).value);
    bool ok = r.value == Tri::True && sub == "true";
    failed += !ok;
    files.push_back(Json{{"file", f.filename().string()}, {"expect", "regular"}, {"regular", tri_name(r.value)},
                         {"subfinite", sub}, {"pass", ok}});
  }
  for (const auto& f : list(fs::path(dir) / "negative")) {
    Diagram d = read_diagram(f);
    RegularVerdict r = is_regular_kac_moody(d, max_depth);
    bool ok = r.value == Tri::False;
    failed += !ok;
    Json e{{"file", "negative/" + f.filename().string()}, {"expect", "not regular"}, {"regular", tri_name(r.value)},
           {"pass", ok}};
    if (r.value == Tri::False) e["witness_depth"] = r.depth;
    files.push_back(e);
  }
  return {failed ? 1 : 0, Json{{"verdict", failed ? "fail" : "pass"}, {"checked", files.size()},
                               {"failed", failed}, {"files", files}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contragredient Lie superalgebra diagrams: reflections, orbits, classification"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable report");

  std::string file, weight, branch, check_kind;
  int vertex = 0, max_depth = kDefaultMaxDepth, m = 0, n = 0, t = 0;
  bool even = false, mod_shift = false;

  auto* c_norm = app.add_subcommand("normalize", "Row-normalize a diagram");
  c_norm->add_option("file", file)->required();

  auto* c_refl = app.add_subcommand("reflect", "Reflect at one vertex");
  c_refl->add_option("file", file)->required();
  c_refl->add_option("--vertex", vertex, "1-based vertex")->required();
  c_refl->add_flag("--even", even, "Even reflection");

  auto* c_orb = app.add_subcommand("orbit", "Odd-reflection orbit");
  c_orb->add_option("file", file)->required();
  c_orb->add_option("--max-depth", max_depth);
  c_orb->add_flag("--mod-shift", mod_shift, "Identify integer shifts of the parameter");

  auto* c_chk = app.add_subcommand("check", "Matrix and diagram tests");
  c_chk->add_option("file", file)->required();
  auto* g = c_chk->add_option_group("test")->require_option(1);
  bool f_gcm = false, f_reg = false, f_sub = false, f_fin = false;
  g->add_flag("--gcm", f_gcm);
  g->add_flag("--regular", f_reg);
  g->add_flag("--subfinite", f_sub);
  g->add_flag("--finite-type", f_fin);
  c_chk->add_option("--max-depth", max_depth);

  auto* c_cls = app.add_subcommand("classify", "Recognize the family");
  c_cls->add_option("file", file)->required();
  c_cls->add_option("--max-depth", max_depth);

  auto* c_q = app.add_subcommand("qmnt", "Solve for the Q(m,n,t) diagrams");
  c_q->add_option("m", m)->required();
  c_q->add_option("n", n)->required();
  c_q->add_option("t", t)->required();
  c_q->add_option("--branch", branch)->check(CLI::IsMember({"plus", "minus"}));

  auto* c_pr = app.add_subcommand("principal-roots", "Principal roots with witness paths");
  c_pr->add_option("file", file)->required();
  c_pr->add_option("--max-depth", max_depth);

  auto* c_int = app.add_subcommand("integrable", "Highest-weight integrability");
  c_int->add_option("file", file)->required();
  c_int->add_option("--weight", weight)->required();
  c_int->add_option("--max-depth", max_depth);

  auto* c_cor = app.add_subcommand("verify-corpus", "Check every diagram in a directory");
  c_cor->add_option("dir", file)->required();
  c_cor->add_option("--max-depth", max_depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (max_depth < 0) {
    std::cerr << "error: --max-depth must be non-negative\n";
    return 2;
  }

  Result r;
  try {
    if (*c_norm) r = cmd_normalize(file);
    else if (*c_refl) r = cmd_reflect(file, vertex, even);
    else if (*c_orb) r = cmd_orbit(file, max_depth, mod_shift);
    else if (*c_chk) r = cmd_check(file, f_gcm ? "gcm" : f_reg ? "regular" : f_sub ? "subfinite" : "finite", max_depth);
    else if (*c_cls) r = cmd_classify(file, max_depth);
    else if (*c_q) r = cmd_qmnt(m, n, t, branch);
    else if (*c_pr) r = cmd_principal_roots(file, max_depth);
    else if (*c_int) r = cmd_integrable(file, weight, max_depth);
    else if (*c_cor) r = cmd_verify_corpus(file, max_depth);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (pretty) print_pretty(r.report, "", std::cout);
  else std::cout << r.report.dump() << "\n";
  return r.code;
}
