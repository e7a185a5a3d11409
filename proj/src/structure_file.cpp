#include "xsq/structure_file.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "xsq/builtins.hpp"

namespace xsq {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw error(errc::parse_error, msg); }

// -- parsing ---------------------------------------------------------------

struct NamedParts {
  std::map<std::string, GroupPtr> groups;
  std::map<std::string, Hom> homs;
  std::map<std::string, Action> actions;
  std::map<std::string, std::vector<std::vector<int>>> tables;
};

std::vector<std::vector<int>> parse_matrix(const json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array of rows");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) fail(what + " rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) fail(what + " entries must be integers");
      r.push_back(v.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

NamedParts parse_parts(const json& doc) {
  NamedParts parts;
  if (doc.contains("groups")) {
    if (!doc["groups"].is_object()) fail("groups must be an object");
    for (const auto& [name, entry] : doc["groups"].items()) {
      if (entry.contains("builtin")) {
        const int n = entry.value("n", 0);
        parts.groups[name] = builtin_group(entry["builtin"].get<std::string>(), n);
      } else if (entry.contains("table")) {
        parts.groups[name] = make_group(parse_matrix(entry["table"], "group " + name), name);
      } else {
        fail("group " + name + " needs a builtin or a table");
      }
    }
  }
  auto group_ref = [&](const json& j, const std::string& what) -> GroupPtr {
    if (!j.is_string()) fail(what + " must name a group");
    auto it = parts.groups.find(j.get<std::string>());
    if (it == parts.groups.end()) fail("unknown group " + j.get<std::string>());
    return it->second;
  };
  if (doc.contains("homs")) {
    for (const auto& [name, entry] : doc["homs"].items()) {
      GroupPtr dom = group_ref(entry.at("dom"), "hom " + name + " dom");
      GroupPtr cod = group_ref(entry.at("cod"), "hom " + name + " cod");
      std::vector<int> map = entry.at("map").get<std::vector<int>>();
      parts.homs.emplace(name, make_hom(dom, cod, std::move(map)));
    }
  }
  if (doc.contains("actions")) {
    for (const auto& [name, entry] : doc["actions"].items()) {
      GroupPtr actor = group_ref(entry.at("actor"), "action " + name + " actor");
      GroupPtr target = group_ref(entry.at("target"), "action " + name + " target");
      parts.actions.emplace(name,
                            make_action(actor, target, parse_matrix(entry.at("table"), name)));
    }
  }
  if (doc.contains("tables")) {
    for (const auto& [name, entry] : doc["tables"].items())
      parts.tables[name] = parse_matrix(entry, "table " + name);
  }
  return parts;
}

const GroupPtr& ref_group(const NamedParts& p, const json& refs, const std::string& key) {
  if (!refs.contains(key)) fail("missing structure ref: " + key);
  auto it = p.groups.find(refs[key].get<std::string>());
  if (it == p.groups.end()) fail("unknown group in refs: " + key);
  return it->second;
}
const Hom& ref_hom(const NamedParts& p, const json& refs, const std::string& key) {
  if (!refs.contains(key)) fail("missing structure ref: " + key);
  auto it = p.homs.find(refs[key].get<std::string>());
  if (it == p.homs.end()) fail("unknown hom in refs: " + key);
  return it->second;
}
const Action& ref_action(const NamedParts& p, const json& refs, const std::string& key) {
  if (!refs.contains(key)) fail("missing structure ref: " + key);
  auto it = p.actions.find(refs[key].get<std::string>());
  if (it == p.actions.end()) fail("unknown action in refs: " + key);
  return it->second;
}
std::vector<int> ref_flat_table(const NamedParts& p, const json& refs, const std::string& key,
                                int rows, int cols, int bound) {
  if (!refs.contains(key)) fail("missing structure ref: " + key);
  auto it = p.tables.find(refs[key].get<std::string>());
  if (it == p.tables.end()) fail("unknown table in refs: " + key);
  const auto& m = it->second;
  if (static_cast<int>(m.size()) != rows) fail("table " + key + " has wrong row count");
  std::vector<int> flat;
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != cols) fail("table " + key + " has wrong column count");
    for (int v : row) {
      if (v < 0 || v >= bound) fail("table " + key + " entry out of range");
      flat.push_back(v);
    }
  }
  return flat;
}

StructureFile parse_known(const json& doc) {
  NamedParts parts = parse_parts(doc);
  if (!doc.contains("structure")) fail("missing structure section");
  const json& st = doc["structure"];
  const std::string kind = st.value("kind", "");
  const json& refs = st.contains("refs") ? st["refs"] : json::object();

  StructureFile out;
  out.kind = kind;
  if (kind == "crossed_module") {
    out.value = CrossedModule{{ref_hom(parts, refs, "boundary"), ref_action(parts, refs, "act")}};
  } else if (kind == "crossed_square") {
    const GroupPtr& L = ref_group(parts, refs, "L");
    const GroupPtr& M = ref_group(parts, refs, "M");
    const GroupPtr& N = ref_group(parts, refs, "N");
    const GroupPtr& P = ref_group(parts, refs, "P");
    out.value = CrossedSquare{L,
                              M,
                              N,
                              P,
                              ref_hom(parts, refs, "lambda"),
                              ref_hom(parts, refs, "lambda_prime"),
                              ref_hom(parts, refs, "mu"),
                              ref_hom(parts, refs, "nu"),
                              ref_action(parts, refs, "act_l"),
                              ref_action(parts, refs, "act_m"),
                              ref_action(parts, refs, "act_n"),
                              ref_flat_table(parts, refs, "h", M->n, N->n, L->n)};
  } else if (kind == "two_crossed") {
    const GroupPtr& L = ref_group(parts, refs, "L");
    const GroupPtr& M = ref_group(parts, refs, "M");
    const GroupPtr& N = ref_group(parts, refs, "N");
    out.value = TwoCrossedModule{L,
                                 M,
                                 N,
                                 ref_hom(parts, refs, "d2"),
                                 ref_hom(parts, refs, "d1"),
                                 ref_action(parts, refs, "act_m"),
                                 ref_action(parts, refs, "act_l"),
                                 ref_flat_table(parts, refs, "lifting", M->n, M->n, L->n)};
  } else if (kind == "quadratic") {
    const GroupPtr& L = ref_group(parts, refs, "L");
    const GroupPtr& M = ref_group(parts, refs, "M");
    const GroupPtr& N = ref_group(parts, refs, "N");
    QuadraticModule q;
    q.L = L;
    q.M = M;
    q.N = N;
    q.delta = ref_hom(parts, refs, "delta");
    q.boundary = ref_hom(parts, refs, "boundary");
    q.actM = ref_action(parts, refs, "act_m");
    q.actL = ref_action(parts, refs, "act_l");
    if (refs.contains("C") && refs.contains("q")) {
      q.C = ref_group(parts, refs, "C");
      q.q = ref_hom(parts, refs, "q");
    } else {
      // recompute C = (M^cr)^ab with its projection
      const PreCrossedModule pcm{q.boundary, q.actM};
      auto [p2, p3] = peiffer_subgroups(pcm);
      (void)p3;
      std::vector<int> gens = p2.elements;
      Subgroup comm = commutator_subgroup(M);
      gens.insert(gens.end(), comm.elements.begin(), comm.elements.end());
      QuotientResult cq = quotient(M, normal_closure(M, gens));
      q.C = cq.group;
      q.q = cq.projection;
    }
    q.omega = ref_flat_table(parts, refs, "omega", q.C->n, q.C->n, L->n);
    out.value = std::move(q);
  } else if (kind == "cat1") {
    out.value = Cat1Group{ref_group(parts, refs, "G"), ref_hom(parts, refs, "s"),
                          ref_hom(parts, refs, "t")};
  } else if (kind == "cat2") {
    out.value = Cat2Group{ref_group(parts, refs, "G"), ref_hom(parts, refs, "s1"),
                          ref_hom(parts, refs, "t1"), ref_hom(parts, refs, "s2"),
                          ref_hom(parts, refs, "t2")};
  } else if (kind == "simplicial") {
    TruncatedSimplicialGroup g;
    g.depth = refs.value("depth", -1);
    if (g.depth < 0 || g.depth > 3) fail("simplicial depth must be 0..3");
    if (!refs.contains("levels")) fail("missing levels");
    for (const auto& nm : refs["levels"]) {
      auto it = parts.groups.find(nm.get<std::string>());
      if (it == parts.groups.end()) fail("unknown level group");
      g.levels.push_back(it->second);
    }
    if (static_cast<int>(g.levels.size()) != g.depth + 1) fail("level count mismatch");
    g.face.resize(g.depth + 1);
    g.degen.resize(g.depth + 1);
    auto fill = [&](const char* key, std::vector<std::vector<Hom>>& into, int first) {
      if (!refs.contains(key)) fail(std::string("missing ") + key);
      int n = first;
      for (const auto& level : refs[key]) {
        if (n > g.depth) fail("too many op levels");
        for (const auto& nm : level) {
          auto it = parts.homs.find(nm.get<std::string>());
          if (it == parts.homs.end()) fail("unknown op hom");
          into[n].push_back(it->second);
        }
        ++n;
      }
    };
    fill("faces", g.face, 1);
    fill("degeneracies", g.degen, 0);
    out.value = std::move(g);
  } else if (kind == "bisimplicial") {
    TruncatedBisimplicialGroup b;
    b.ambient = trivial_group();
    if (!refs.contains("cells")) fail("missing cells");
    for (const auto& c : refs["cells"]) {
      const int a = c.at("a").get<int>(), bb = c.at("b").get<int>();
      auto it = parts.groups.find(c.at("group").get<std::string>());
      if (it == parts.groups.end()) fail("unknown cell group");
      BisimplicialCell cell;
      cell.group = it->second;
      cell.rows = c.value("rows", 1);
      cell.cols = c.value("cols", 1);
      b.cells[{a, bb}] = std::move(cell);
    }
    auto fill = [&](const char* key, std::map<std::pair<int, int>, std::vector<Hom>>& into) {
      if (!refs.contains(key)) return;
      for (const auto& e : refs[key]) {
        const int a = e.at("a").get<int>(), bb = e.at("b").get<int>();
        for (const auto& nm : e.at("homs")) {
          auto it = parts.homs.find(nm.get<std::string>());
          if (it == parts.homs.end()) fail("unknown op hom");
          into[{a, bb}].push_back(it->second);
        }
      }
    };
    fill("face1", b.face1);
    fill("face2", b.face2);
    fill("degen1", b.degen1);
    fill("degen2", b.degen2);
    out.value = std::move(b);
  } else {
    fail("unknown structure kind: " + kind);
  }
  return out;
}

}  // namespace

StructureFile parse_structure(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document must be a JSON object");
  return parse_known(doc);
}

StructureFile load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str());
}

// -- serialization ------------------------------------------------------------

namespace {

json group_json(const GroupPtr& g) {
  // prefer builtin references when the table matches the canonical one
  auto try_builtin = [&](const char* kind, int n) -> bool {
    try {
      GroupPtr b = builtin_group(kind, n);
      return b->n == g->n && b->table == g->table;
    } catch (const error&) {
      return false;
    }
  };
  if (try_builtin("cyclic", g->n)) return json{{"builtin", "cyclic"}, {"n", g->n}};
  if (g->n % 2 == 0 && try_builtin("dihedral", g->n / 2))
    return json{{"builtin", "dihedral"}, {"n", g->n / 2}};
  for (int n = 2; n <= 5; ++n)
    if (try_builtin("symmetric", n)) return json{{"builtin", "symmetric"}, {"n", n}};
  if (try_builtin("quaternion8", 0)) return json{{"builtin", "quaternion8"}};
  if (try_builtin("klein4", 0)) return json{{"builtin", "klein4"}};

  json rows = json::array();
  for (int a = 0; a < g->n; ++a) {
    json row = json::array();
    for (int b = 0; b < g->n; ++b) row.push_back(g->mul(a, b));
    rows.push_back(std::move(row));
  }
  return json{{"table", std::move(rows)}};
}

json matrix_json(const std::vector<int>& flat, int rows, int cols) {
  json out = json::array();
  for (int r = 0; r < rows; ++r) {
    json row = json::array();
    for (int c = 0; c < cols; ++c) row.push_back(flat[r * cols + c]);
    out.push_back(std::move(row));
  }
  return out;
}

struct Emitter {
  json groups = json::object();
  json homs = json::object();
  json actions = json::object();
  json tables = json::object();
  std::map<const Group*, std::string> group_names;

  std::string group(const GroupPtr& g, const std::string& hint) {
    auto it = group_names.find(g.get());
    if (it != group_names.end()) return it->second;
    std::string name = hint;
    int k = 2;
    while (groups.contains(name)) name = hint + std::to_string(k++);
    groups[name] = group_json(g);
    group_names[g.get()] = name;
    return name;
  }
  std::string hom(const Hom& h, const std::string& name, const std::string& dom_hint,
                  const std::string& cod_hint) {
    homs[name] = json{{"dom", group(h.dom, dom_hint)},
                      {"cod", group(h.cod, cod_hint)},
                      {"map", h.map}};
    return name;
  }
  std::string action(const Action& a, const std::string& name, const std::string& actor_hint,
                     const std::string& target_hint) {
    actions[name] = json{{"actor", group(a.actor, actor_hint)},
                         {"target", group(a.target, target_hint)},
                         {"table", matrix_json(a.table, a.actor->n, a.target->n)}};
    return name;
  }
  std::string table(const std::vector<int>& flat, int rows, int cols, const std::string& name) {
    tables[name] = matrix_json(flat, rows, cols);
    return name;
  }

  json finish(const std::string& kind, json refs) const {
    json doc;
    doc["groups"] = groups;
    if (!homs.empty()) doc["homs"] = homs;
    if (!actions.empty()) doc["actions"] = actions;
    if (!tables.empty()) doc["tables"] = tables;
    doc["structure"] = json{{"kind", kind}, {"refs", std::move(refs)}};
    return doc;
  }
};

}  // namespace

std::string serialize_structure(const StructureFile& s) {
  Emitter em;
  json refs = json::object();
  if (const auto* xm = std::get_if<CrossedModule>(&s.value)) {
    refs["M"] = em.group(xm->M(), "M");
    refs["N"] = em.group(xm->N(), "N");
    refs["boundary"] = em.hom(xm->pcm.boundary, "boundary", "M", "N");
    refs["act"] = em.action(xm->pcm.act, "act", "N", "M");
  } else if (const auto* sq = std::get_if<CrossedSquare>(&s.value)) {
    refs["L"] = em.group(sq->L, "L");
    refs["M"] = em.group(sq->M, "M");
    refs["N"] = em.group(sq->N, "N");
    refs["P"] = em.group(sq->P, "P");
    refs["lambda"] = em.hom(sq->lam, "lambda", "L", "M");
    refs["lambda_prime"] = em.hom(sq->lamp, "lambda_prime", "L", "N");
    refs["mu"] = em.hom(sq->mu, "mu", "M", "P");
    refs["nu"] = em.hom(sq->nu, "nu", "N", "P");
    refs["act_l"] = em.action(sq->actL, "act_l", "P", "L");
    refs["act_m"] = em.action(sq->actM, "act_m", "P", "M");
    refs["act_n"] = em.action(sq->actN, "act_n", "P", "N");
    refs["h"] = em.table(sq->h, sq->M->n, sq->N->n, "h");
  } else if (const auto* t = std::get_if<TwoCrossedModule>(&s.value)) {
    refs["L"] = em.group(t->L, "L");
    refs["M"] = em.group(t->M, "M");
    refs["N"] = em.group(t->N, "N");
    refs["d2"] = em.hom(t->d2, "d2", "L", "M");
    refs["d1"] = em.hom(t->d1, "d1", "M", "N");
    refs["act_m"] = em.action(t->actM, "act_m", "N", "M");
    refs["act_l"] = em.action(t->actL, "act_l", "N", "L");
    refs["lifting"] = em.table(t->lifting, t->M->n, t->M->n, "lifting");
  } else if (const auto* q = std::get_if<QuadraticModule>(&s.value)) {
    refs["L"] = em.group(q->L, "L");
    refs["M"] = em.group(q->M, "M");
    refs["N"] = em.group(q->N, "N");
    refs["delta"] = em.hom(q->delta, "delta", "L", "M");
    refs["boundary"] = em.hom(q->boundary, "boundary", "M", "N");
    refs["act_m"] = em.action(q->actM, "act_m", "N", "M");
    refs["act_l"] = em.action(q->actL, "act_l", "N", "L");
    refs["C"] = em.group(q->C, "C");
    refs["q"] = em.hom(q->q, "q", "M", "C");
    refs["omega"] = em.table(q->omega, q->C->n, q->C->n, "omega");
  } else if (const auto* c1 = std::get_if<Cat1Group>(&s.value)) {
    refs["G"] = em.group(c1->G, "G");
    refs["s"] = em.hom(c1->s, "s", "G", "G");
    refs["t"] = em.hom(c1->t, "t", "G", "G");
  } else if (const auto* c2 = std::get_if<Cat2Group>(&s.value)) {
    refs["G"] = em.group(c2->G, "G");
    refs["s1"] = em.hom(c2->s1, "s1", "G", "G");
    refs["t1"] = em.hom(c2->t1, "t1", "G", "G");
    refs["s2"] = em.hom(c2->s2, "s2", "G", "G");
    refs["t2"] = em.hom(c2->t2, "t2", "G", "G");
  } else if (const auto* g = std::get_if<TruncatedSimplicialGroup>(&s.value)) {
    refs["depth"] = g->depth;
    json levels = json::array();
    for (int n = 0; n <= g->depth; ++n)
      levels.push_back(em.group(g->levels[n], "G" + std::to_string(n)));
    refs["levels"] = std::move(levels);
    json faces = json::array();
    for (int n = 1; n <= g->depth; ++n) {
      json fl = json::array();
      for (int i = 0; i <= n; ++i)
        fl.push_back(em.hom(g->face[n][i], "d" + std::to_string(n) + "_" + std::to_string(i),
                            "G" + std::to_string(n), "G" + std::to_string(n - 1)));
      faces.push_back(std::move(fl));
    }
    refs["faces"] = std::move(faces);
    json degens = json::array();
    for (int n = 0; n < g->depth; ++n) {
      json sl = json::array();
      for (int i = 0; i <= n; ++i)
        sl.push_back(em.hom(g->degen[n][i], "s" + std::to_string(n) + "_" + std::to_string(i),
                            "G" + std::to_string(n), "G" + std::to_string(n + 1)));
      degens.push_back(std::move(sl));
    }
    refs["degeneracies"] = std::move(degens);
  } else if (const auto* b = std::get_if<TruncatedBisimplicialGroup>(&s.value)) {
    json cells = json::array();
    for (const auto& [key, cell] : b->cells) {
      const std::string nm = "B" + std::to_string(key.first) + "_" + std::to_string(key.second);
      cells.push_back(json{{"a", key.first},
                           {"b", key.second},
                           {"rows", cell.rows},
                           {"cols", cell.cols},
                           {"group", em.group(cell.group, nm)}});
    }
    refs["cells"] = std::move(cells);
    auto emit_ops = [&](const std::map<std::pair<int, int>, std::vector<Hom>>& ops,
                        const std::string& key) {
      json arr = json::array();
      for (const auto& [cellkey, homs] : ops) {
        json names = json::array();
        for (size_t i = 0; i < homs.size(); ++i)
          names.push_back(em.hom(homs[i],
                                 key + "_" + std::to_string(cellkey.first) +
                                     std::to_string(cellkey.second) + "_" + std::to_string(i),
                                 "", ""));
        arr.push_back(json{{"a", cellkey.first}, {"b", cellkey.second}, {"homs", names}});
      }
      refs[key] = std::move(arr);
    };
    emit_ops(b->face1, "face1");
    emit_ops(b->face2, "face2");
    emit_ops(b->degen1, "degen1");
    emit_ops(b->degen2, "degen2");
  }
  return em.finish(s.kind, std::move(refs)).dump(1);
}

// -- demos ---------------------------------------------------------------------

StructureFile demo_structure(const std::string& name) {
  StructureFile s;
  if (name == "trivial-c2") {
    s.kind = "crossed_square";
    s.value = demo_square_trivial_c2();
  } else if (name == "square-a3-s3") {
    s.kind = "crossed_square";
    s.value = demo_square_a3_s3();
  } else if (name == "square-c4-c2") {
    s.kind = "crossed_square";
    s.value = demo_square_c4_c2();
  } else if (name == "square-klein-diagonal") {
    s.kind = "crossed_square";
    s.value = demo_square_klein_diagonal();
  } else if (name == "xmod-a3-s3") {
    s.kind = "crossed_module";
    s.value = demo_xmod_a3_s3();
  } else if (name == "xmod-c4-c2") {
    s.kind = "crossed_module";
    s.value = demo_xmod_c4_c2();
  } else if (name == "nerve-a3-s3-depth3") {
    s.kind = "simplicial";
    s.value = demo_nerve_a3_s3_depth3();
  } else {
    std::string names;
    for (const auto& n : demo_names()) names += (names.empty() ? "" : ", ") + n;
    throw error(errc::unknown_demo, "unknown demo '" + name + "'; available: " + names);
  }
  return s;
}

// -- commands --------------------------------------------------------------------

Report check_structure(const StructureFile& s) {
  return std::visit(
      [](const auto& v) -> Report {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CrossedModule>) return check_crossed_module(v);
        if constexpr (std::is_same_v<T, CrossedSquare>) return check_crossed_square(v);
        if constexpr (std::is_same_v<T, TwoCrossedModule>) return check_two_crossed(v);
        if constexpr (std::is_same_v<T, QuadraticModule>) return check_quadratic(v);
        if constexpr (std::is_same_v<T, Cat1Group>) return check_cat1(v);
        if constexpr (std::is_same_v<T, Cat2Group>) return check_cat2(v);
        if constexpr (std::is_same_v<T, TruncatedSimplicialGroup>) return check_simplicial(v);
        if constexpr (std::is_same_v<T, TruncatedBisimplicialGroup>) return check_bisimplicial(v);
      },
      s.value);
}

namespace {

int exit_code_for(const error& e) {
  switch (e.code) {
    case errc::parse_error:
    case errc::unknown_demo:
    case errc::unsupported_conversion:
    case errc::no_identity:
    case errc::no_inverse:
    case errc::non_associative:
    case errc::not_homomorphism:
    case errc::row_not_automorphism:
    case errc::not_action:
    case errc::bad_structure:
      return 2;
    default:
      return 1;
  }
}

std::string witness_string(const std::vector<int>& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

void print_report(const Report& r, std::ostream& out, bool verbose) {
  size_t limit = verbose ? r.violations.size() : std::min<size_t>(r.violations.size(), 20);
  for (size_t i = 0; i < limit; ++i)
    out << "violation: " << r.violations[i].axiom << " witness "
        << witness_string(r.violations[i].witness) << "\n";
  if (limit < r.violations.size())
    out << "... " << (r.violations.size() - limit) << " more\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw error(errc::parse_error, "cannot write " + path);
  f << text << "\n";
}

}  // namespace

int cmd_check(const std::string& path, std::ostream& out, const CliOptions& opt) {
  StructureFile s;
  try {
    s = load_structure(path);
  } catch (const error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  Report r;
  try {
    r = check_structure(s);
  } catch (const error& e) {
    out << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  if (r.ok()) {
    out << "ok: " << s.kind << " satisfies all axioms\n";
    return 0;
  }
  out << s.kind << ": " << r.violations.size() << " violation(s)\n";
  print_report(r, out, opt.verbose);
  return 1;
}

int cmd_convert(const std::string& path, const std::string& to, const std::string& out_path,
                std::ostream& out, const CliOptions& opt) {
  (void)opt;
  try {
    StructureFile s = load_structure(path);
    StructureFile converted;
    converted.kind = to;
    const std::string from = s.kind;
    auto unsupported = [&]() -> error {
      return error(errc::unsupported_conversion,
                   "no conversion from " + from + " to " + to);
    };
    if (from == "crossed_square") {
      const auto& sq = std::get<CrossedSquare>(s.value);
      if (to == "two_crossed")
        converted.value = two_crossed_from_square(sq);
      else if (to == "quadratic")
        converted.value = quadratic_from_square(sq);
      else if (to == "cat2")
        converted.value = cat2_from_crossed_square(sq).cat2;
      else
        throw unsupported();
    } else if (from == "two_crossed") {
      if (to == "quadratic")
        converted.value = quadratic_from_two_crossed(std::get<TwoCrossedModule>(s.value));
      else
        throw unsupported();
    } else if (from == "simplicial") {
      const auto& g = std::get<TruncatedSimplicialGroup>(s.value);
      if (to == "crossed_square")
        converted.value = square_from_simplicial(g).square;
      else if (to == "two_crossed")
        converted.value = two_crossed_from_simplicial(g);
      else if (to == "quadratic")
        converted.value = quadratic_from_simplicial(g);
      else
        throw unsupported();
    } else if (from == "crossed_module") {
      if (to == "cat1")
        converted.value = cat1_from_crossed_module(std::get<CrossedModule>(s.value));
      else
        throw unsupported();
    } else if (from == "cat1") {
      if (to == "crossed_module")
        converted.value = crossed_module_from_cat1(std::get<Cat1Group>(s.value)).xm;
      else
        throw unsupported();
    } else if (from == "cat2") {
      if (to == "crossed_square")
        converted.value = crossed_square_from_cat2(std::get<Cat2Group>(s.value)).square;
      else
        throw unsupported();
    } else {
      throw unsupported();
    }
    Report r = check_structure(converted);
    if (!r.ok()) {
      out << "internal error: converted structure fails its checker\n";
      print_report(r, out, true);
      return 1;
    }
    write_file(out_path, serialize_structure(converted));
    out << "wrote " << converted.kind << " to " << out_path << "\n";
    return 0;
  } catch (const error& e) {
    out << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_homotopy(const std::string& path, std::ostream& out, const CliOptions& opt) {
  (void)opt;
  try {
    StructureFile s = load_structure(path);
    HomotopySignature sig;
    if (const auto* g = std::get_if<TruncatedSimplicialGroup>(&s.value)) {
      sig = homotopy_simplicial(*g);
    } else if (const auto* t = std::get_if<TwoCrossedModule>(&s.value)) {
      sig = homotopy_two_crossed(*t);
    } else if (const auto* q = std::get_if<QuadraticModule>(&s.value)) {
      sig = homotopy_quadratic(*q);
    } else if (const auto* sq = std::get_if<CrossedSquare>(&s.value)) {
      sig = homotopy_square(*sq);
    } else if (const auto* xm = std::get_if<CrossedModule>(&s.value)) {
      // length-1 complex: 1 -> M -> N
      GroupPtr one = trivial_group();
      TwoCrossedModule t{one,
                         xm->M(),
                         xm->N(),
                         trivial_hom(one, xm->M()),
                         xm->pcm.boundary,
                         xm->pcm.act,
                         trivial_action(xm->N(), one),
                         std::vector<int>(static_cast<size_t>(xm->M()->n) * xm->M()->n, 0)};
      sig = homotopy_two_crossed(t);
    } else if (const auto* c1 = std::get_if<Cat1Group>(&s.value)) {
      sig = homotopy_two_crossed([&] {
        CrossedModule xm2 = crossed_module_from_cat1(*c1).xm;
        GroupPtr one = trivial_group();
        return TwoCrossedModule{
            one,
            xm2.M(),
            xm2.N(),
            trivial_hom(one, xm2.M()),
            xm2.pcm.boundary,
            xm2.pcm.act,
            trivial_action(xm2.N(), one),
            std::vector<int>(static_cast<size_t>(xm2.M()->n) * xm2.M()->n, 0)};
      }());
    } else if (const auto* c2 = std::get_if<Cat2Group>(&s.value)) {
      sig = homotopy_square(crossed_square_from_cat2(*c2).square);
    } else if (const auto* b = std::get_if<TruncatedBisimplicialGroup>(&s.value)) {
      sig = homotopy_simplicial(codiagonal(*b).g);
    } else {
      throw error(errc::unsupported_conversion, "no homotopy for kind " + s.kind);
    }
    out << describe_signature(sig) << "\n";
    out << "pi1: " << describe_group(sig.pi1) << "\n";
    out << "pi2: " << describe_group(sig.pi2) << "\n";
    out << "pi3: " << describe_group(sig.pi3) << "\n";
    return 0;
  } catch (const error& e) {
    out << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_diagram(const std::string& path, std::ostream& out, const CliOptions& opt) {
  try {
    StructureFile s = load_structure(path);
    const auto* sq = std::get_if<CrossedSquare>(&s.value);
    if (!sq) {
      out << "error: diagram needs a crossed_square input\n";
      return 2;
    }
    Report r = check_crossed_square(*sq);
    if (!r.ok()) {
      out << "input square fails its axioms\n";
      print_report(r, out, opt.verbose);
      return 1;
    }

    bool all_ok = true;
    TwoCrossedModule direct = two_crossed_from_square(*sq);
    HomotopySignature sig_direct = homotopy_two_crossed(direct);
    out << "route two_crossed (mapping cone): " << describe_signature(sig_direct) << "\n";

    TwoCrossedModule via = two_crossed_from_square_via_codiagonal(*sq);
    const bool same = hom_equal(direct.d2, via.d2) && hom_equal(direct.d1, via.d1) &&
                      direct.actM.table == via.actM.table &&
                      direct.actL.table == via.actL.table && direct.lifting == via.lifting;
    out << "route two_crossed (codiagonal): "
        << (same ? "element-wise equal to the mapping cone" : "MISMATCH with the mapping cone")
        << "\n";
    all_ok = all_ok && same;
    HomotopySignature sig_via = homotopy_two_crossed(via);

    QuadraticModule quad = quadratic_from_square(*sq);
    Report qr = check_quadratic(quad);
    if (!qr.ok()) {
      out << "quadratic route fails its axioms\n";
      print_report(qr, out, opt.verbose);
      all_ok = false;
    }
    HomotopySignature sig_quad = homotopy_quadratic(quad);
    out << "route quadratic (composite): " << describe_signature(sig_quad) << "\n";

    HomotopySignature sig_sq = homotopy_square(*sq);
    out << "route homotopy of the square: " << describe_signature(sig_sq) << "\n";

    const bool sigs = signatures_isomorphic(sig_direct, sig_via, opt.max_order) &&
                      signatures_isomorphic(sig_direct, sig_quad, opt.max_order) &&
                      signatures_isomorphic(sig_direct, sig_sq, opt.max_order);
    out << "homotopy signatures " << (sigs ? "agree" : "DISAGREE") << " across routes\n";
    all_ok = all_ok && sigs;
    out << (all_ok ? "diagram commutes\n" : "diagram FAILS\n");
    return all_ok ? 0 : 1;
  } catch (const error& e) {
    out << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_demo(const std::string& name, const std::string& out_path, std::ostream& out) {
  try {
    StructureFile s = demo_structure(name);
    write_file(out_path, serialize_structure(s));
    out << "wrote demo " << name << " (" << s.kind << ") to " << out_path << "\n";
    return 0;
  } catch (const error& e) {
    out << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace xsq
