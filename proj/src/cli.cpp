#include "alexq/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "alexq/diagram.hpp"
#include "alexq/error.hpp"
#include "alexq/invariance.hpp"
#include "alexq/presentation.hpp"
#include "alexq/quandle.hpp"
#include "alexq/specialize.hpp"
#include "json.hpp"

namespace alexq::cli {

using nlohmann::json;

namespace {

// Axiom checks are cubic in the quandle size; larger quandles report
// "not_checked".
constexpr std::size_t kMaxAxiomCheck = 512;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_pd(const std::string& path, std::string_view text) {
  if (path.size() >= 3 && path.compare(path.size() - 3, 3, ".pd") == 0) return true;
  const auto start = text.find_first_not_of(" \t\r\n");
  return start != std::string_view::npos && (text.substr(start, 2) == "X[" || text.substr(start, 3) == "PD[");
}

LinkDiagram load_diagram(const std::string& path, const std::string& format) {
  const auto text = read_file(path);
  if (format == "pd" || (format == "auto" && looks_like_pd(path, text))) {
    auto body = std::string_view(text);
    if (const auto s = body.find("PD["); s != std::string_view::npos) {
      body = body.substr(s + 3);
      if (const auto e = body.rfind(']'); e != std::string_view::npos) body = body.substr(0, e);
    }
    return parse_pd_code(body);
  }
  return parse_diagram(text);
}

std::vector<std::string> variable_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("t" + std::to_string(i));
  return out;
}

json poly_row(const PolyRow& row) {
  json out = json::array();
  for (const auto& p : row) out.push_back(to_string(p));
  return out;
}

json trace_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) {
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          json j;
          if constexpr (std::is_same_v<T, step::Eliminate>) {
            j = {{"op", "eliminate"}, {"row", st.row}, {"generator", st.gen}, {"relation", poly_row(st.relation)}};
          } else if constexpr (std::is_same_v<T, step::DropRow>) {
            j = {{"op", "drop_row"}, {"row", st.row}};
            if (st.duplicate_of) j["duplicate_of"] = *st.duplicate_of;
          } else if constexpr (std::is_same_v<T, step::RowAdd>) {
            j = {{"op", "row_add"}, {"target", st.target}, {"source", st.source}, {"factor", to_string(st.factor)}};
          } else {
            j = {{"op", "column_add"}, {"target", st.target}, {"source", st.source}, {"factor", to_string(st.factor)}};
          }
          out.push_back(std::move(j));
        },
        s);
  }
  return out;
}

json presentation_json(const ModulePresentation& p) {
  json relations = json::array();
  for (const auto& r : p.relations) relations.push_back(poly_row(r));
  json definitions = json::array();
  for (const auto& r : p.definitions) definitions.push_back(poly_row(r));
  return {{"variables", variable_names(p.num_vars)},
          {"generators", p.generators},
          {"relations", relations},
          {"phi", poly_row(p.phi)},
          {"basis_trace", trace_json(p.basis_trace)},
          {"definitions", definitions},
          {"origin_generators", p.origin_generators}};
}

json decomposition_json(const ModulePresentation& p) {
  const auto dec = cyclic_decomposition(p);
  if (!dec) return {{"decomposed", false}};
  json free_gens = json::array();
  for (auto g : dec->free_generators) free_gens.push_back(p.generators[g]);
  json torsion = json::array();
  json factors = json::array();
  for (const auto& t : dec->torsion) {
    torsion.push_back({{"generator", p.generators[t.generator]}, {"factor", to_string(t.factor)}});
    factors.push_back(to_string(t.factor));
  }
  return {{"decomposed", true},
          {"free_rank", dec->free_rank},
          {"free_generators", free_gens},
          {"torsion", torsion},
          {"factors", factors}};
}

Specialization parse_assign(std::uint64_t prime, const std::string& text, std::size_t num_vars) {
  std::vector<std::uint64_t> values(num_vars, 0);
  std::vector<bool> seen(num_vars, false);
  std::size_t position = 0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c) != 0; }), item.end());
    if (item.empty()) throw UsageError("empty entry in --assign");
    std::size_t index = position;
    std::string value = item;
    if (const auto eq = item.find('='); eq != std::string::npos) {
      const auto name = item.substr(0, eq);
      value = item.substr(eq + 1);
      if (name.size() < 2 || name[0] != 't' || !std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
        throw UsageError("bad variable '" + name + "' in --assign");
      }
      index = std::stoul(name.substr(1)) - 1;
    }
    if (index >= num_vars) throw UsageError("--assign names a variable beyond t" + std::to_string(num_vars));
    if (seen[index]) throw UsageError("t" + std::to_string(index + 1) + " assigned twice");
    if (value.empty() || !std::all_of(value.begin(), value.end(), ::isdigit) || value.size() > 18) {
      throw UsageError("bad value '" + value + "' in --assign");
    }
    values[index] = std::stoull(value);
    seen[index] = true;
    ++position;
  }
  for (std::size_t i = 0; i < num_vars; ++i) {
    if (!seen[i]) throw UsageError("--assign is missing t" + std::to_string(i + 1));
  }
  return make_specialization(prime, std::move(values), num_vars);
}

json specialization_json(const Specialization& s) { return {{"prime", s.prime}, {"assign", s.assignments}}; }

json axioms_json(const AxiomReport& r) {
  json j = {{"status", !r.checked ? "not_checked" : (r.ok() ? "ok" : "failed")}};
  if (r.checked) {
    j["q1"] = r.q1;
    j["q2"] = r.q2;
    j["q3"] = r.q3;
    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  }
  return j;
}

json quandle_summary(const LinkDiagram& d, const Specialization& s) {
  const SpecializedModule m(alexander_matrix(d), s);
  const auto q = generate_QA(m);
  const auto orb = orbits(q);
  json sizes = json::array();
  for (const auto& o : orb) sizes.push_back(o.size());
  json j = {{"size", q.size()},
            {"orbits", orb.size()},
            {"orbit_sizes", sizes},
            {"module_dimension", m.dimension()},
            {"axioms", axioms_json(check_axioms(q, kMaxAxiomCheck))}};
  json arcs = json::object();
  for (std::size_t a = 0; a < d.num_arcs(); ++a) arcs[d.label(a)] = q.generators()[a];
  j["arc_elements"] = arcs;
  if (q.has_tables()) {
    const auto qp = quandle_presentation(q);
    j["presentation"] = {{"generators", qp.num_generators}, {"relations", qp.num_relations},
                         {"dimension", qp.dimension}};
  }
  return j;
}

BatteryConfig load_battery(const std::string& spec) {
  if (spec.empty() || spec == "default") return BatteryConfig{};
  return parse_battery_config(read_file(spec));
}

json emit_error(const std::string& kind, const std::string& message, std::size_t line = 0) {
  json e = {{"kind", kind}, {"message", message}};
  if (line != 0) e["line"] = line;
  return {{"schema", kSchema}, {"error", e}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multivariate Alexander modules and quandles of links", "alexq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "alexq 0.1.0");

  std::string format = "auto";
  app.add_option("--format", format, "Diagram input format")->check(CLI::IsMember({"auto", "native", "pd"}));

  std::string path;
  std::string path_b;
  std::uint64_t prime = 5;
  std::string assign;
  std::size_t k = 0;
  bool raw = false;
  std::string expr;
  std::string battery = "default";
  bool reduced_compare = false;
  std::uint64_t seed = 1;
  std::size_t iterations = 50;
  std::size_t length = 8;
  std::vector<std::string> paths;

  auto diagram_cmd = [&](const char* name, const char* help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("diagram", path, "Diagram file")->required();
    return sc;
  };
  auto add_spec = [&](CLI::App* sc) {
    sc->add_option("--prime", prime, "Prime p")->required();
    sc->add_option("--assign", assign, "t1=u1,t2=u2,...")->required();
  };

  auto* c_parse = diagram_cmd("parse", "Validate a diagram and print its normalized form");
  auto* c_matrix = diagram_cmd("matrix", "Crossing-relation presentation");
  auto* c_simplify = diagram_cmd("simplify", "Simplified presentation with its trace");
  auto* c_decompose = diagram_cmd("decompose", "Cyclic decomposition of the module");
  auto* c_ideals = diagram_cmd("ideals", "Elementary ideal generators");
  c_ideals->add_option("--k", k, "Ideal index")->required();
  c_ideals->add_flag("--raw", raw, "Use the unsimplified presentation");
  auto* c_reduced = diagram_cmd("reduced", "Reduced module (t_i -> t)");
  auto* c_quandle = diagram_cmd("quandle", "Generated quandle in a specialization");
  add_spec(c_quandle);
  auto* c_word = diagram_cmd("word", "Evaluate a quandle word");
  c_word->add_option("--expr", expr, "Word, e.g. \"(a2 > a1) < a3\"")->required();
  c_word->add_option("--prime", prime, "Also evaluate in a specialization");
  c_word->add_option("--assign", assign, "t1=u1,t2=u2,...");
  auto* c_orbits = diagram_cmd("orbits", "Orbits of the generated quandle");
  add_spec(c_orbits);
  auto* c_colorings = diagram_cmd("colorings", "Coloring count exponent");
  add_spec(c_colorings);
  auto* c_distinguish = app.add_subcommand("distinguish", "Compare two diagrams with a specialization battery");
  c_distinguish->add_option("a", path, "First diagram")->required();
  c_distinguish->add_option("b", path_b, "Second diagram")->required();
  c_distinguish->add_option("--battery", battery, "default or a JSON file");
  c_distinguish->add_flag("--reduced", reduced_compare, "Compare reduced modules");
  auto* c_moves = app.add_subcommand("check-moves", "Invariance under random Reidemeister moves");
  c_moves->add_option("diagrams", paths, "Diagram files")->required();
  c_moves->add_option("--seed", seed, "Seed");
  c_moves->add_option("--iterations", iterations, "Move sequences per diagram");
  c_moves->add_option("--length", length, "Maximum sequence length")->check(CLI::Range(1, 64));
  c_moves->add_option("--battery", battery, "default or a JSON file");
  auto* c_report = diagram_cmd("report", "All invariants of a diagram");
  c_report->add_option("--battery", battery, "default or a JSON file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    out << emit_error("usage", e.what()).dump(2) << '\n';
    return 2;
  }

  try {
    json result = {{"schema", kSchema}};
    int code = 0;
    if (c_parse->parsed()) {
      const auto d = load_diagram(path, format);
      result["diagram"] = json::parse(to_json_text(d));
      result["digest"] = diagram_digest(d);
    } else if (c_matrix->parsed()) {
      result["presentation"] = presentation_json(alexander_matrix(load_diagram(path, format)));
    } else if (c_simplify->parsed()) {
      result["presentation"] = presentation_json(simplify(alexander_matrix(load_diagram(path, format))));
    } else if (c_decompose->parsed()) {
      const auto s = simplify(alexander_matrix(load_diagram(path, format)));
      result.update(decomposition_json(s));
      result["presentation"] = presentation_json(s);
    } else if (c_ideals->parsed()) {
      auto p = alexander_matrix(load_diagram(path, format));
      if (!raw) p = simplify(p);
      result["k"] = k;
      const auto ideal = elementary_ideal(p, k);
      result["generators"] = poly_row(ideal);
      result["zero_ideal"] = ideal.empty();
      result["matrix_generators"] = p.num_generators();
      result["raw"] = raw;
    } else if (c_reduced->parsed()) {
      const auto s = simplify(reduce(simplify(alexander_matrix(load_diagram(path, format)))));
      result.update(decomposition_json(s));
      result["presentation"] = presentation_json(s);
    } else if (c_quandle->parsed()) {
      const auto d = load_diagram(path, format);
      const auto s = parse_assign(prime, assign, d.num_components());
      result["specialization"] = specialization_json(s);
      result.update(quandle_summary(d, s));
    } else if (c_word->parsed()) {
      const auto d = load_diagram(path, format);
      const auto p = std::make_shared<const ModulePresentation>(alexander_matrix(d));
      const auto w = parse_word(expr);
      const auto v = eval_word(w, p);
      const QuandleElement qe(v);
      result["word"] = to_string(w);
      result["generators"] = p->generators;
      result["value"] = poly_row(v.coords);
      result["phi"] = to_string(qe.phi);
      result["in_U"] = in_U(qe);
      if (!assign.empty()) {
        const auto s = parse_assign(prime, assign, d.num_components());
        const SpecializedModule m(*p, s);
        const auto sv = evaluate_row(v.coords, s);
        json equal_arcs = json::array();
        for (std::size_t a = 0; a < d.num_arcs(); ++a) {
          if (m.equal(sv, m.generator(a))) equal_arcs.push_back(d.label(a));
        }
        result["specialized"] = {{"specialization", specialization_json(s)},
                                 {"coordinates", m.coordinates(sv)},
                                 {"phi", m.phi(sv)},
                                 {"equal_arcs", equal_arcs}};
      }
    } else if (c_orbits->parsed()) {
      const auto d = load_diagram(path, format);
      const auto s = parse_assign(prime, assign, d.num_components());
      const SpecializedModule m(alexander_matrix(d), s);
      const auto q = generate_QA(m, false);
      json list = json::array();
      for (const auto& o : orbits(q)) {
        json arcs = json::array();
        for (std::size_t a = 0; a < d.num_arcs(); ++a) {
          if (std::binary_search(o.begin(), o.end(), q.generators()[a])) arcs.push_back(d.label(a));
        }
        list.push_back({{"size", o.size()}, {"phi", q.phi()[o.front()]}, {"arcs", arcs}});
      }
      result["specialization"] = specialization_json(s);
      result["size"] = q.size();
      result["orbits"] = list;
    } else if (c_colorings->parsed()) {
      const auto d = load_diagram(path, format);
      const auto s = parse_assign(prime, assign, d.num_components());
      result["specialization"] = specialization_json(s);
      result["exponent"] = coloring_exponent(d, s);
      result["cokernel_dimension"] = SpecializedModule(alexander_matrix(d), s).dimension();
    } else if (c_distinguish->parsed()) {
      const auto config = load_battery(battery);
      auto a = alexander_matrix(load_diagram(path, format));
      auto b = alexander_matrix(load_diagram(path_b, format));
      if (reduced_compare) {
        a = reduce(a);
        b = reduce(b);
      }
      const auto r = battery_compare(a, b, config);
      result["verdict"] = to_string(r.verdict);
      result["reason"] = r.reason;
      result["members"] = r.members;
      result["permutations_tried"] = r.permutations_tried;
      result["all_permutations"] = r.all_permutations;
      result["reduced"] = reduced_compare;
    } else if (c_moves->parsed()) {
      const auto config = load_battery(battery);
      json reports = json::array();
      std::size_t failures = 0;
      for (const auto& file : paths) {
        const auto d = load_diagram(file, format);
        const auto r = check_move_invariance(d, seed, iterations, length, config);
        failures += r.failures.size();
        json fails = json::array();
        for (const auto& f : r.failures) {
          auto inv = [](const SpecializedInvariants& x) {
            return json{{"cokernel_dimension", x.cokernel_dimension}, {"coloring_exponent", x.coloring_exponent},
                        {"kernel_phi_dimension", x.kernel_phi_dimension}, {"quandle_size", x.quandle_size},
                        {"orbits", x.orbit_count}};
          };
          fails.push_back({{"iteration", f.iteration}, {"moves", f.moves}, {"specialization", specialization_json(f.member)},
                           {"before", inv(f.before)}, {"after", inv(f.after)}});
        }
        reports.push_back({{"diagram", file}, {"iterations", r.iterations}, {"moves_applied", r.moves_applied},
                           {"comparisons", r.comparisons}, {"failures", fails}});
      }
      result["seed"] = seed;
      result["reports"] = reports;
      result["ok"] = failures == 0;
      if (failures != 0) code = 1;
    } else if (c_report->parsed()) {
      const auto d = load_diagram(path, format);
      const auto raw_p = alexander_matrix(d);
      const auto s = simplify(raw_p);
      result["digest"] = diagram_digest(d);
      result["components"] = d.num_components();
      result["decomposition"] = decomposition_json(s);
      json ideals = json::object();
      for (std::size_t i = 0; i <= s.num_generators(); ++i) {
        try {
          ideals[std::to_string(i)] = poly_row(elementary_ideal(s, i));
        } catch (const CapacityError&) {
          ideals[std::to_string(i)] = "capacity";
        }
      }
      result["elementary_ideals"] = ideals;
      result["reduced"] = decomposition_json(simplify(reduce(s)));
      json members = json::array();
      for (const auto& m : battery_members(load_battery(battery), d.num_components())) {
        json j = quandle_summary(d, m);
        j["specialization"] = specialization_json(m);
        j["coloring_exponent"] = coloring_exponent(d, m);
        members.push_back(std::move(j));
      }
      result["battery"] = members;
    }
    out << result.dump(2) << '\n';
    return code;
  } catch (const ParseError& e) {
    out << emit_error("parse", e.what(), e.line()).dump(2) << '\n';
    return 2;
  } catch (const UsageError& e) {
    out << emit_error("usage", e.what()).dump(2) << '\n';
    return 2;
  } catch (const DomainError& e) {
    out << emit_error("domain", e.what()).dump(2) << '\n';
    return 2;
  } catch (const CapacityError& e) {
    out << emit_error("capacity", e.what()).dump(2) << '\n';
    return 3;
  } catch (const std::exception& e) {
    out << emit_error("internal", e.what()).dump(2) << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace alexq::cli
