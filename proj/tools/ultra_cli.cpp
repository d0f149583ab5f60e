// Command-line front end: reads space documents (JSON or CSV), runs the
// analyses and prints human-readable text or machine-readable JSON.
//
// Exit status: 0 analysis completed (verdict fields may still be false),
//              1 a claimed property was falsified (invalid table, or an
//                ultrametric-only analysis fed a non-ultrametric space),
//              2 malformed input or usage.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ultra/ultra.hpp"

namespace {

using namespace ultra;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Space load_space(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return parse_space_csv(text);
  return parse_space_json(text);
}

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw input_error("cannot write '" + out_path + "'");
  out << text;
}

json mapping_to_json(const Space& s, const std::vector<size_t>& map) {
  json j = json::object();
  for (size_t i = 0; i < map.size(); ++i) j[s.point_name(i)] = s.point_name(map[i]);
  return j;
}

std::string mapping_to_text(const Space& s, const std::vector<size_t>& map) {
  std::string out;
  bool moved = false;
  for (size_t i = 0; i < map.size(); ++i) {
    if (map[i] == i) continue;
    if (moved) out += " ";
    out += s.point_name(i) + "->" + s.point_name(map[i]);
    moved = true;
  }
  return moved ? out : std::string("identity");
}

json triple_json(const Space& s, const Triple& t) {
  return json::array({s.point_name(t.a), s.point_name(t.b), s.point_name(t.c)});
}

void print_tree_text(const ReprTree& t, size_t id, const std::string& indent) {
  const ReprNode& nd = t.nodes[id];
  if (nd.leaf_point) {
    std::cout << indent << t.point_names[*nd.leaf_point] << "\n";
    return;
  }
  std::cout << indent << "(" << nd.label.str() << ")\n";
  for (size_t c : nd.children) print_tree_text(t, c, indent + "  ");
}

int cmd_validate(const std::string& file, bool as_json) {
  const Space s = load_space(file);
  const ValidationReport& rep = s.validation();
  if (as_json) {
    json j;
    j["kind"] = std::string(to_string(s.kind()));
    j["points"] = s.size();
    json tri = json::array(), strong = json::array();
    for (const Triple& t : rep.triangle_violations) tri.push_back(triple_json(s, t));
    for (const Triple& t : rep.strong_violations) strong.push_back(triple_json(s, t));
    j["triangle_violations"] = std::move(tri);
    j["strong_violations"] = std::move(strong);
    if (const Triple* w = rep.witness()) j["witness"] = triple_json(s, *w);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "kind: " << to_string(s.kind()) << "\n";
    if (const Triple* w = rep.witness())
      std::cout << "first witness: (" << s.point_name(w->a) << ", " << s.point_name(w->b)
                << ") via " << s.point_name(w->c) << "\n";
    if (!rep.triangle_violations.empty())
      std::cout << "triangle violations: " << rep.triangle_violations.size() << "\n";
    if (!rep.strong_violations.empty())
      std::cout << "strong-inequality violations: " << rep.strong_violations.size() << "\n";
  }
  return s.kind() == Kind::Invalid ? 1 : 0;
}

int cmd_tree(const std::string& file, bool as_json, bool as_dot, const std::string& out) {
  const Space s = load_space(file);
  const ReprTree t = build_tree(s);
  if (as_dot) {
    write_out(emit_tree_dot(t), out);
  } else if (as_json) {
    write_out(emit_tree_json(t), out);
  } else {
    std::cout << "nodes: " << t.nodes.size() << ", leaves: " << t.leaf_count() << "\n";
    print_tree_text(t, t.root, "");
  }
  return 0;
}

int cmd_balls(const std::string& file, bool as_json) {
  const Space s = load_space(file);
  const auto balls = enumerate_balls(s);
  if (as_json) {
    json j;
    j["count"] = balls.size();
    json list = json::array();
    for (const Ball& b : balls) {
      json members = json::array();
      for (size_t p : b) members.push_back(s.point_name(p));
      list.push_back(std::move(members));
    }
    j["balls"] = std::move(list);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "balls: " << balls.size() << "\n";
    for (const Ball& b : balls) {
      std::cout << "  {";
      for (size_t i = 0; i < b.size(); ++i) std::cout << (i ? "," : "") << s.point_name(b[i]);
      std::cout << "}\n";
    }
  }
  return 0;
}

int cmd_gamma(const std::string& file, bool as_json, bool as_dot, const std::string& out) {
  const Space s = load_space(file);
  const GammaGraph g = gamma_graph(s);
  const bool is_tree = g.vertices.size() == g.edges.size() + 1;
  if (as_dot) {
    write_out(emit_gamma_dot(g, s.points()), out);
  } else if (as_json) {
    json j = gamma_to_json(g, s.points());
    j["is_tree"] = is_tree;
    j["ultrametric"] = s.kind() == Kind::Ultrametric;
    write_out(j.dump(2) + "\n", out);
  } else {
    std::cout << "vertices: " << g.vertices.size() << ", edges: " << g.edges.size()
              << ", is_tree: " << (is_tree ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_iso(const std::string& file, const std::string& other, bool as_json) {
  const Space x = load_space(file);
  if (!other.empty()) {
    const Space y = load_space(other);
    const IsometryCheck check = isometric(x, y);
    if (as_json) {
      json j;
      j["isometric"] = check.isometric;
      if (check.witness) j["witness"] = mapping_to_json(x, *check.witness);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "isometric: " << (check.isometric ? "true" : "false") << "\n";
      if (check.witness) std::cout << "witness: " << mapping_to_text(x, *check.witness) << "\n";
    }
    return 0;
  }
  const IsoGroup g = isometry_group(x);
  if (as_json) {
    json j;
    j["order"] = g.order.str();
    json gens = json::array();
    for (const Isometry& gen : g.generators) gens.push_back(mapping_to_json(x, gen.mapping()));
    j["generators"] = std::move(gens);
    json orbits = json::array();
    for (const auto& orbit : g.orbits) {
      json o = json::array();
      for (size_t p : orbit) o.push_back(x.point_name(p));
      orbits.push_back(std::move(o));
    }
    j["orbits"] = std::move(orbits);
    j["full_list_size"] = g.full_list ? json(g.full_list->size()) : json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "order: " << g.order.str() << "\n";
    std::cout << "generators: " << g.generators.size() << "\n";
    for (const Isometry& gen : g.generators)
      std::cout << "  " << mapping_to_text(x, gen.mapping()) << "\n";
    std::cout << "orbits:";
    for (const auto& orbit : g.orbits) {
      std::cout << " {";
      for (size_t i = 0; i < orbit.size(); ++i)
        std::cout << (i ? "," : "") << x.point_name(orbit[i]);
      std::cout << "}";
    }
    std::cout << "\n";
  }
  return 0;
}

json rigidity_json(const Space& s, const RigidityReport& r) {
  json j;
  j["max_rigid"] = r.max_rigid;
  j["iso_order"] = r.iso_order.str();
  j["min_fixed_points"] = r.min_fix;
  json crit;
  crit["min_fix_is_size_minus_2"] = {
      {"holds", r.crit_min_fix},
      {"value", r.min_fix},
      {"expected", s.size() - 2},
      {"witness", mapping_to_json(s, r.min_fix_witness->mapping())}};
  crit["group_order_is_2"] = {{"holds", r.crit_order}, {"order", r.iso_order.str()}};
  json shape;
  shape["holds"] = r.crit_tree_shape;
  if (r.crit_tree_shape)
    shape["chain_levels"] = r.shape_chain.size();
  else if (r.shape_violation_node)
    shape["violation_node"] = *r.shape_violation_node;
  crit["tree_is_binary_chain"] = std::move(shape);
  j["criteria"] = std::move(crit);
  return j;
}

int cmd_rigidity(const std::string& file, bool as_json) {
  const Space s = load_space(file);
  const RigidityReport r = is_max_rigid(s);
  const Isometry nw = nonrigid_witness(s);
  if (as_json) {
    json j = rigidity_json(s, r);
    j["nonrigid_witness"] = {{"mapping", mapping_to_json(s, nw.mapping())},
                             {"fixed_points", nw.fixed_point_count()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "|Iso| = " << r.iso_order.str() << ", min fixed points = " << r.min_fix
              << ", max_rigid: " << (r.max_rigid ? "true" : "false") << "\n";
    std::cout << "min-fix witness: " << mapping_to_text(s, r.min_fix_witness->mapping())
              << "\n";
    std::cout << "nonrigid witness: " << mapping_to_text(s, nw.mapping()) << " (fixes "
              << nw.fixed_point_count() << ")\n";
  }
  return 0;
}

int cmd_check_r(const std::string& file, bool as_json) {
  const Space s = load_space(file);
  const RigidityReport r = is_max_rigid(s);
  if (as_json) {
    std::cout << rigidity_json(s, r).dump(2) << "\n";
  } else {
    std::cout << "max_rigid: " << (r.max_rigid ? "true" : "false") << "\n";
    std::cout << "  min fixed points = " << r.min_fix << " (need " << s.size() - 2
              << "): " << (r.crit_min_fix ? "yes" : "no") << "\n";
    std::cout << "  |Iso| = " << r.iso_order.str()
              << " (need 2): " << (r.crit_order ? "yes" : "no") << "\n";
    std::cout << "  binary chain tree: " << (r.crit_tree_shape ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_ham_path(const std::string& file, bool cycle, bool as_json) {
  const Space s = load_space(file);
  if (cycle) {
    auto c = hamiltonian_cycle_check(s);
    if (as_json) {
      json j;
      j["found"] = c.has_value();
      if (c) {
        json pts = json::array(), ws = json::array();
        for (size_t p : c->points) pts.push_back(s.point_name(p));
        for (const Dist& w : c->weights) ws.push_back(w.str());
        j["cycle"] = std::move(pts);
        j["weights"] = std::move(ws);
      }
      std::cout << j.dump(2) << "\n";
    } else if (c) {
      std::cout << "cycle:";
      for (size_t p : c->points) std::cout << " " << s.point_name(p);
      std::cout << "\nweights:";
      for (const Dist& w : c->weights) std::cout << " " << w.str();
      std::cout << "\n";
    } else {
      std::cout << "none (space is not maximally rigid)\n";
    }
    return 0;
  }
  auto p = hamiltonian_decreasing_path(s);
  if (as_json) {
    json j;
    j["found"] = p.has_value();
    if (p) {
      json pts = json::array(), ws = json::array();
      for (size_t q : p->points) pts.push_back(s.point_name(q));
      for (const Dist& w : p->weights) ws.push_back(w.str());
      j["path"] = std::move(pts);
      j["weights"] = std::move(ws);
    }
    std::cout << j.dump(2) << "\n";
  } else if (p) {
    std::cout << "path:";
    for (size_t q : p->points) std::cout << " " << s.point_name(q);
    std::cout << "\nweights:";
    for (const Dist& w : p->weights) std::cout << " " << w.str();
    std::cout << "\n";
  } else {
    std::cout << "none (space is not maximally rigid)\n";
  }
  return 0;
}

int cmd_star(const std::string& file, const std::string& level, bool as_json) {
  const Space s = load_space(file);
  if (!level.empty()) {
    const LevelStarRecord rec = level_star_check(s, Dist::parse(level));
    if (as_json) {
      json j;
      j["is_star"] = rec.is_star;
      j["level"] = rec.level;
      j["rays"] = rec.rays;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "level graph at " << level << ": " << (rec.is_star ? "star" : "not a star")
                << ", node level " << rec.level << ", rays " << rec.rays << "\n";
    }
    return 0;
  }
  auto star = distinct_weight_spanning_star(s);
  if (as_json) {
    json j;
    j["found"] = star.has_value();
    if (star) {
      j["center"] = s.point_name(star->center);
      json rays = json::array();
      for (auto& [p, w] : star->rays)
        rays.push_back(json{{"point", s.point_name(p)}, {"weight", w.str()}});
      j["rays"] = std::move(rays);
    }
    std::cout << j.dump(2) << "\n";
  } else if (star) {
    std::cout << "center: " << s.point_name(star->center) << "\nrays:";
    for (auto& [p, w] : star->rays) std::cout << " " << s.point_name(p) << ":" << w.str();
    std::cout << "\n";
  } else {
    std::cout << "none (space is not maximally rigid)\n";
  }
  return 0;
}

int cmd_complete_star(const std::string& file, bool as_json) {
  json doc;
  try {
    doc = json::parse(read_file(file));
  } catch (const json::parse_error& e) {
    throw input_error(std::string("JSON parse error: ") + e.what());
  }
  if (!doc.contains("center") || !doc.contains("rays") || !doc["rays"].is_array())
    throw input_error("star document needs 'center' and a 'rays' array");
  std::vector<std::pair<std::string, Dist>> rays;
  for (const auto& r : doc["rays"]) {
    if (!r.contains("point") || !r.contains("weight"))
      throw input_error("each ray needs 'point' and 'weight'");
    rays.push_back(
        {r["point"].get<std::string>(), Dist::parse(r["weight"].get<std::string>())});
  }
  const StarCompletion out = complete_star(rays, doc["center"].get<std::string>());
  if (as_json) {
    json j;
    j["unique"] = out.unique;
    j["space"] = space_to_json(out.space);
    if (out.second_completion) j["second_completion"] = space_to_json(*out.second_completion);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "unique: " << (out.unique ? "true" : "false") << "\n";
    std::cout << emit_space_csv(out.space);
    if (out.second_completion)
      std::cout << "second completion:\n" << emit_space_csv(*out.second_completion);
  }
  return 0;
}

int cmd_weaksim(const std::string& a, const std::string& b, bool as_json) {
  const Space x = load_space(a);
  const Space y = load_space(b);
  const WeakSimilarity w = weakly_similar(x, y);
  if (as_json) {
    json j;
    j["weakly_similar"] = w.similar;
    if (w.similar) {
      j["point_map"] = json::object();
      for (size_t i = 0; i < x.size(); ++i)
        j["point_map"][x.point_name(i)] = y.point_name((*w.point_map)[i]);
      json f = json::array();
      for (auto& [from, to] : *w.value_map) f.push_back(json::array({from.str(), to.str()}));
      j["value_map"] = std::move(f);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "weakly similar: " << (w.similar ? "true" : "false") << "\n";
    if (w.similar) {
      std::cout << "value map:";
      for (auto& [from, to] : *w.value_map) std::cout << " " << from.str() << "->" << to.str();
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_gen(const std::string& kind, size_t n, uint64_t seed, const std::string& out) {
  const Space s = generate_space(parse_gen_kind(kind), n, seed);
  write_out(emit_space_json(s), out);
  return 0;
}

int cmd_oracle(const std::string& mode, const std::string& a, const std::string& b, size_t cap,
               bool as_json) {
  if (mode == "iso") {
    const Space s = load_space(a);
    const auto brute = oracle_isometries(s, cap);
    const IsoGroup g = isometry_group(s, {.full_list_cap = GroupOrder(50000)});
    bool agree = g.full_list.has_value() && g.full_list->size() == brute.size();
    if (agree) {
      auto lhs = *g.full_list;
      auto rhs = brute;
      std::sort(lhs.begin(), lhs.end());
      std::sort(rhs.begin(), rhs.end());
      agree = std::equal(lhs.begin(), lhs.end(), rhs.begin());
    }
    if (as_json) {
      json j;
      j["brute_force_count"] = brute.size();
      j["group_order"] = g.order.str();
      j["agree"] = agree;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "brute force found " << brute.size() << " isometries; structural order "
                << g.order.str() << "; agree: " << (agree ? "true" : "false") << "\n";
    }
    return agree ? 0 : 1;
  }
  if (mode == "weaksim") {
    if (b.empty()) throw input_error("oracle weaksim needs two space files");
    const Space x = load_space(a);
    const Space y = load_space(b);
    const bool brute = oracle_weak_similarity(x, y, cap);
    const bool comparable = x.kind() == Kind::Ultrametric && y.kind() == Kind::Ultrametric;
    const bool structural = comparable ? weakly_similar(x, y).similar : brute;
    const bool agree = !comparable || structural == brute;
    if (as_json) {
      json j;
      j["brute_force"] = brute;
      if (comparable) j["structural"] = structural;
      j["agree"] = agree;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "brute force: " << (brute ? "true" : "false")
                << "; agree: " << (agree ? "true" : "false") << "\n";
    }
    return agree ? 0 : 1;
  }
  if (mode == "ham-paths") {
    const Space s = load_space(a);
    const auto brute = oracle_decreasing_ham_paths(s, cap);
    bool structural_found = false;
    if (s.kind() == Kind::Ultrametric && s.size() >= 2)
      structural_found = hamiltonian_decreasing_path(s).has_value();
    const bool agree = structural_found == !brute.empty();
    if (as_json) {
      json j;
      j["brute_force_count"] = brute.size();
      j["structural_found"] = structural_found;
      j["agree"] = agree;
      json paths = json::array();
      for (const HamPath& p : brute) {
        json pts = json::array();
        for (size_t q : p.points) pts.push_back(s.point_name(q));
        paths.push_back(std::move(pts));
      }
      j["paths"] = std::move(paths);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "strictly decreasing paths: " << brute.size()
                << "; agree: " << (agree ? "true" : "false") << "\n";
    }
    return agree ? 0 : 1;
  }
  throw input_error("unknown oracle mode '" + mode + "' (iso, weaksim, ham-paths)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finite ultrametric space analyzer: representing trees, ball graphs,\n"
      "isometry groups, maximal rigidity and its graph certificates"};
  app.require_subcommand(1);

  uint64_t default_seed = 0;
  if (const char* env = std::getenv("ULTRA_SEED"))
    default_seed = std::strtoull(env, nullptr, 10);

  std::string file, other, out_path, level, kind, mode;
  bool as_json = false, as_dot = false, cycle = false;
  size_t n = 4, cap = 8;
  uint64_t seed = default_seed;

  auto add_json = [&](CLI::App* cmd) {
    cmd->add_flag("--json", as_json, "machine-readable output");
  };

  auto* validate = app.add_subcommand("validate", "classify a distance table");
  validate->add_option("file", file)->required();
  add_json(validate);

  auto* tree = app.add_subcommand("tree", "representing tree of an ultrametric space");
  tree->add_option("file", file)->required();
  tree->add_flag("--dot", as_dot, "DOT output");
  tree->add_option("-o,--out", out_path, "write to file");
  add_json(tree);

  auto* balls = app.add_subcommand("balls", "enumerate all balls");
  balls->add_option("file", file)->required();
  add_json(balls);

  auto* gamma = app.add_subcommand("gamma", "ball inclusion-adjacency graph");
  gamma->add_option("file", file)->required();
  gamma->add_flag("--dot", as_dot, "DOT output");
  gamma->add_option("-o,--out", out_path, "write to file");
  add_json(gamma);

  auto* iso = app.add_subcommand("iso", "isometry group, or isometry of two spaces");
  iso->add_option("file", file)->required();
  iso->add_option("other", other, "second space: decide isometry instead");
  add_json(iso);

  auto* rigidity = app.add_subcommand("rigidity", "rigidity measures and witnesses");
  rigidity->add_option("file", file)->required();
  add_json(rigidity);

  auto* checkr = app.add_subcommand("check-r", "maximal-rigidity membership, three criteria");
  checkr->add_option("file", file)->required();
  add_json(checkr);

  auto* ham = app.add_subcommand("ham-path", "strictly decreasing Hamiltonian path");
  ham->add_option("file", file)->required();
  ham->add_flag("--cycle", cycle, "close the path into the Hamiltonian cycle");
  add_json(ham);

  auto* star = app.add_subcommand("star", "distinct-weight spanning star");
  star->add_option("file", file)->required();
  star->add_option("--level", level, "check the level graph at this spectrum value instead");
  add_json(star);

  auto* complete = app.add_subcommand("complete-star", "ultrametric completion of a star");
  complete->add_option("file", file)->required();
  add_json(complete);

  auto* weaksim = app.add_subcommand("weaksim", "weak similarity of two ultrametric spaces");
  weaksim->add_option("file", file)->required();
  weaksim->add_option("other", other)->required();
  add_json(weaksim);

  auto* gen = app.add_subcommand("gen", "generate a space (chain, tree, metric)");
  gen->add_option("-k,--kind", kind, "chain | tree | metric")->required();
  gen->add_option("-n", n, "number of points")->required();
  gen->add_option("-s,--seed", seed, "generator seed (default: ULTRA_SEED or 0)");
  gen->add_option("-o,--out", out_path, "write to file");

  auto* oracle = app.add_subcommand("oracle", "brute-force checks against the structural path");
  oracle->add_option("mode", mode, "iso | weaksim | ham-paths")->required();
  oracle->add_option("file", file)->required();
  oracle->add_option("other", other, "second space for weaksim");
  oracle->add_option("--cap", cap, "brute-force size cap");
  add_json(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(file, as_json);
    if (*tree) return cmd_tree(file, as_json, as_dot, out_path);
    if (*balls) return cmd_balls(file, as_json);
    if (*gamma) return cmd_gamma(file, as_json, as_dot, out_path);
    if (*iso) return cmd_iso(file, other, as_json);
    if (*rigidity) return cmd_rigidity(file, as_json);
    if (*checkr) return cmd_check_r(file, as_json);
    if (*ham) return cmd_ham_path(file, cycle, as_json);
    if (*star) return cmd_star(file, level, as_json);
    if (*complete) return cmd_complete_star(file, as_json);
    if (*weaksim) return cmd_weaksim(file, other, as_json);
    if (*gen) return cmd_gen(kind, n, seed, out_path);
    if (*oracle) return cmd_oracle(mode, file, other, cap, as_json);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "analysis stopped: " << e.what() << "\n";
    return 1;
  } catch (const invariant_error& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
