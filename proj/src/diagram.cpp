#include "alexq/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include "json.hpp"
#include <numeric>
#include <set>
#include <sstream>
#include <variant>

#include "alexq/error.hpp"
#include "alexq/rng.hpp"

namespace alexq {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

// A validation failure tied to a crossing (index) or an arc (index).
struct Issue {
  std::string message;
  std::optional<std::size_t> crossing;
  std::optional<std::size_t> arc;
};

struct Validated {
  std::vector<int> kappa;
  std::size_t num_components = 0;
};

std::variant<Validated, Issue> validate(const std::vector<std::string>& arcs,
                                        const std::vector<Crossing>& crossings,
                                        const std::vector<int>& declared) {
  const std::size_t n = arcs.size();
  if (n == 0) return Issue{"diagram has no arcs", std::nullopt, std::nullopt};
  {
    std::set<std::string> seen;
    for (std::size_t a = 0; a < n; ++a) {
      if (arcs[a].empty()) return Issue{"empty arc identifier", std::nullopt, a};
      if (!seen.insert(arcs[a]).second) return Issue{"duplicate arc '" + arcs[a] + "'", std::nullopt, a};
    }
  }
  std::vector<std::size_t> ends(n, 0);
  std::vector<std::size_t> last_mention(n, SIZE_MAX);
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    const auto& x = crossings[c];
    if (x.over >= n || x.under_right >= n || x.under_left >= n) {
      return Issue{"crossing refers to an unknown arc", c, std::nullopt};
    }
    ++ends[x.under_right];
    ++ends[x.under_left];
    for (auto a : {x.over, x.under_right, x.under_left}) last_mention[a] = c;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (ends[a] != 0 && ends[a] != 2) {
      return Issue{"arc '" + arcs[a] + "' is an under piece " + std::to_string(ends[a]) +
                       " times (expected 0 or 2)",
                   last_mention[a] == SIZE_MAX ? std::nullopt : std::optional<std::size_t>(last_mention[a]),
                   a};
    }
  }

  DisjointSets sets(n);
  for (const auto& x : crossings) sets.unite(x.under_right, x.under_left);

  Validated out;
  out.kappa.assign(n, 0);
  if (declared.empty()) {
    std::map<std::size_t, int> index;
    for (std::size_t a = 0; a < n; ++a) {
      auto root = sets.find(a);
      auto [it, inserted] = index.try_emplace(root, static_cast<int>(index.size()) + 1);
      out.kappa[a] = it->second;
    }
    out.num_components = index.size();
    return out;
  }

  if (declared.size() != n) return Issue{"component numbers must be given for every arc or none", std::nullopt, std::nullopt};
  std::map<std::size_t, int> class_to_declared;
  std::map<int, std::size_t> declared_to_class;
  int max_declared = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const int k = declared[a];
    if (k < 1) return Issue{"component numbers are positive integers", std::nullopt, a};
    const auto root = sets.find(a);
    auto [it, inserted] = class_to_declared.try_emplace(root, k);
    if (it->second != k) {
      return Issue{"arc '" + arcs[a] + "' is declared in component " + std::to_string(k) +
                       " but its crossings join it to component " + std::to_string(it->second),
                   std::nullopt, a};
    }
    auto [jt, ins2] = declared_to_class.try_emplace(k, root);
    if (jt->second != root) {
      return Issue{"component " + std::to_string(k) + " is declared for two separate components", std::nullopt, a};
    }
    max_declared = std::max(max_declared, k);
    out.kappa[a] = k;
  }
  if (static_cast<std::size_t>(max_declared) != declared_to_class.size()) {
    return Issue{"component numbers must be exactly 1.." + std::to_string(declared_to_class.size()), std::nullopt,
                 std::nullopt};
  }
  out.num_components = declared_to_class.size();
  return out;
}

}  // namespace

LinkDiagram LinkDiagram::build(std::vector<std::string> arcs, std::vector<Crossing> crossings,
                               std::vector<int> declared_components) {
  auto result = validate(arcs, crossings, declared_components);
  if (auto* issue = std::get_if<Issue>(&result)) {
    std::string where;
    if (issue->crossing) where = "crossing " + std::to_string(*issue->crossing + 1) + ": ";
    throw UsageError(where + issue->message);
  }
  auto& ok = std::get<Validated>(result);
  LinkDiagram d;
  d.arcs_ = std::move(arcs);
  d.crossings_ = std::move(crossings);
  d.kappa_ = std::move(ok.kappa);
  d.num_components_ = ok.num_components;
  return d;
}

std::optional<std::size_t> LinkDiagram::find_arc(std::string_view id) const {
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    if (arcs_[a] == id) return a;
  }
  return std::nullopt;
}

std::size_t LinkDiagram::under_end_count(std::size_t arc) const {
  std::size_t n = 0;
  for (const auto& c : crossings_) n += (c.under_right == arc) + (c.under_left == arc);
  return n;
}

// --- native format ------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Collects arcs in order of first mention together with source lines.
struct DiagramBuilder {
  std::vector<std::string> arcs;
  std::vector<int> declared;  // 0 = undeclared
  std::vector<std::size_t> arc_line;
  std::map<std::string, std::size_t> index;
  std::vector<Crossing> crossings;
  std::vector<std::size_t> crossing_line;

  std::size_t touch(const std::string& id, std::size_t line) {
    auto [it, inserted] = index.try_emplace(id, arcs.size());
    if (inserted) {
      arcs.push_back(id);
      declared.push_back(0);
      arc_line.push_back(line);
    }
    return it->second;
  }

  LinkDiagram finish() {
    const bool any = std::any_of(declared.begin(), declared.end(), [](int k) { return k != 0; });
    const bool all = std::all_of(declared.begin(), declared.end(), [](int k) { return k != 0; });
    if (any && !all) {
      for (std::size_t a = 0; a < arcs.size(); ++a) {
        if (declared[a] == 0) {
          throw ParseError("arc '" + arcs[a] + "' has no component number while others do", arc_line[a]);
        }
      }
    }
    auto result = validate(arcs, crossings, any ? declared : std::vector<int>{});
    if (auto* issue = std::get_if<Issue>(&result)) {
      std::size_t line = 0;
      if (issue->crossing) {
        line = crossing_line[*issue->crossing];
      } else if (issue->arc) {
        line = arc_line[*issue->arc];
      }
      throw ParseError(issue->message, line);
    }
    return LinkDiagram::build(std::move(arcs), std::move(crossings), any ? std::move(declared) : std::vector<int>{});
  }
};

int parse_component(const std::string& tok, std::size_t line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      tok.size() > 6) {
    throw ParseError("component number must be a positive integer, got '" + tok + "'", line);
  }
  return std::stoi(tok);
}

LinkDiagram parse_json_diagram(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("crossings")) throw ParseError("JSON diagram needs a \"crossings\" array");
  DiagramBuilder b;
  try {
    if (j.contains("arcs")) {
      for (const auto& a : j.at("arcs")) {
        if (a.is_string()) {
          b.touch(a.get<std::string>(), 0);
        } else {
          const auto idx = b.touch(a.at("id").get<std::string>(), 0);
          if (a.contains("component") && !a.at("component").is_null()) {
            const int k = a.at("component").get<int>();
            if (k < 1) throw ParseError("component numbers are positive integers");
            b.declared[idx] = k;
          }
        }
      }
    }
    for (const auto& c : j.at("crossings")) {
      Crossing x;
      x.over = b.touch(c.at("over").get<std::string>(), 0);
      x.under_right = b.touch(c.at("under_right").get<std::string>(), 0);
      x.under_left = b.touch(c.at("under_left").get<std::string>(), 0);
      b.crossings.push_back(x);
      b.crossing_line.push_back(0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON diagram: ") + e.what());
  }
  return b.finish();
}

}  // namespace

LinkDiagram parse_diagram(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_diagram(text);

  DiagramBuilder b;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "arc") {
      if (toks.size() < 2 || toks.size() > 3) throw ParseError("expected 'arc <id> [component]'", line_no);
      if (b.index.count(toks[1]) != 0 && b.arc_line[b.index[toks[1]]] != line_no) {
        // A second declaration is only an error when it repeats an explicit arc line.
        const auto idx = b.index[toks[1]];
        if (b.declared[idx] != 0 || toks.size() == 2) throw ParseError("arc '" + toks[1] + "' declared twice", line_no);
      }
      const auto idx = b.touch(toks[1], line_no);
      if (toks.size() == 3) b.declared[idx] = parse_component(toks[2], line_no);
    } else if (toks[0] == "crossing") {
      if (toks.size() != 4) throw ParseError("expected 'crossing <over> <under_right> <under_left>'", line_no);
      Crossing x;
      x.over = b.touch(toks[1], line_no);
      x.under_right = b.touch(toks[2], line_no);
      x.under_left = b.touch(toks[3], line_no);
      b.crossings.push_back(x);
      b.crossing_line.push_back(line_no);
    } else {
      throw ParseError("unknown statement '" + toks[0] + "'", line_no);
    }
    if (nl == text.size()) break;
  }
  return b.finish();
}

std::string to_native(const LinkDiagram& d, std::string_view header_comment) {
  std::ostringstream out;
  if (!header_comment.empty()) {
    std::istringstream lines{std::string(header_comment)};
    std::string l;
    while (std::getline(lines, l)) out << "# " << l << '\n';
  }
  for (std::size_t a = 0; a < d.num_arcs(); ++a) out << "arc " << d.label(a) << ' ' << d.component(a) << '\n';
  for (const auto& c : d.crossings()) {
    out << "crossing " << d.label(c.over) << ' ' << d.label(c.under_right) << ' ' << d.label(c.under_left) << '\n';
  }
  return out.str();
}

std::string to_json_text(const LinkDiagram& d) {
  nlohmann::json arcs = nlohmann::json::array();
  for (std::size_t a = 0; a < d.num_arcs(); ++a) arcs.push_back({{"id", d.label(a)}, {"component", d.component(a)}});
  nlohmann::json crossings = nlohmann::json::array();
  for (const auto& c : d.crossings()) {
    crossings.push_back(
        {{"over", d.label(c.over)}, {"under_right", d.label(c.under_right)}, {"under_left", d.label(c.under_left)}});
  }
  nlohmann::json j{{"arcs", arcs}, {"crossings", crossings}, {"num_components", d.num_components()}};
  return j.dump();
}

std::string diagram_digest(const LinkDiagram& d) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_native(d)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- PD codes -----------------------------------------------------------------

LinkDiagram parse_pd_code(std::string_view text) {
  std::vector<long> numbers;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j - i > 9) throw ParseError("PD edge label too large");
      numbers.push_back(std::stol(std::string(text.substr(i, j - i))));
      i = j;
    } else if (text[i] == '-') {
      throw ParseError("PD edge labels are positive integers");
    } else {
      ++i;
    }
  }
  if (numbers.empty() || numbers.size() % 4 != 0) throw ParseError("PD code must list quadruples of edge labels");

  std::map<long, std::size_t> edge_index;
  std::map<long, int> occurrences;
  for (long e : numbers) {
    edge_index.try_emplace(e, edge_index.size());
    ++occurrences[e];
  }
  for (const auto& [e, n] : occurrences) {
    if (n != 2) throw ParseError("PD edge " + std::to_string(e) + " appears " + std::to_string(n) + " times");
  }
  const std::size_t num_edges = edge_index.size();
  const std::size_t num_crossings = numbers.size() / 4;

  // Edges of one component: linked through both strands of every crossing.
  DisjointSets comp(num_edges);
  DisjointSets arcs(num_edges);
  for (std::size_t c = 0; c < num_crossings; ++c) {
    const auto i = edge_index[numbers[4 * c]];
    const auto j = edge_index[numbers[4 * c + 1]];
    const auto k = edge_index[numbers[4 * c + 2]];
    const auto l = edge_index[numbers[4 * c + 3]];
    comp.unite(i, k);
    comp.unite(j, l);
    arcs.unite(j, l);
  }
  std::map<std::size_t, std::pair<long, long>> range;  // component root -> (min, max) label
  for (const auto& [label, idx] : edge_index) {
    auto root = comp.find(idx);
    auto [it, inserted] = range.try_emplace(root, label, label);
    it->second.first = std::min(it->second.first, label);
    it->second.second = std::max(it->second.second, label);
  }
  auto follows = [&](long from, long to) {
    const auto& [lo, hi] = range[comp.find(edge_index[from])];
    return to == from + 1 || (from == hi && to == lo);
  };

  // Arc names a1, a2, ... by smallest edge label.
  std::map<std::size_t, std::size_t> arc_of_root;
  std::vector<std::string> arc_names;
  for (const auto& [label, idx] : edge_index) {
    auto root = arcs.find(idx);
    if (arc_of_root.try_emplace(root, arc_names.size()).second) {
      arc_names.push_back("a" + std::to_string(arc_names.size() + 1));
    }
  }
  auto arc_of = [&](long label) { return arc_of_root.at(arcs.find(edge_index.at(label))); };

  std::vector<Crossing> crossings;
  for (std::size_t c = 0; c < num_crossings; ++c) {
    const long i = numbers[4 * c];
    const long j = numbers[4 * c + 1];
    const long k = numbers[4 * c + 2];
    const long l = numbers[4 * c + 3];
    Crossing x;
    x.over = arc_of(j);
    if (follows(j, l)) {
      x.under_right = arc_of(k);
      x.under_left = arc_of(i);
    } else if (follows(l, j)) {
      x.under_right = arc_of(i);
      x.under_left = arc_of(k);
    } else {
      throw ParseError("PD crossing " + std::to_string(c + 1) + ": over edges are not consecutive");
    }
    crossings.push_back(x);
  }
  try {
    return LinkDiagram::build(std::move(arc_names), std::move(crossings));
  } catch (const UsageError& e) {
    throw ParseError(std::string("PD code does not describe a valid diagram: ") + e.what());
  }
}

// --- random diagrams -----------------------------------------------------------

LinkDiagram random_diagram(std::uint64_t seed, const RandomDiagramParams& params) {
  if (params.components == 0) throw UsageError("a diagram needs at least one component");
  Rng rng(seed);
  std::vector<std::size_t> per_component(params.components, 0);
  for (std::size_t c = 0; c < params.crossings; ++c) ++per_component[rng.below(params.components)];

  std::vector<std::string> arcs;
  std::vector<std::pair<std::size_t, std::size_t>> under_pairs;  // consecutive arcs along a component
  for (std::size_t k = 0; k < params.components; ++k) {
    const std::size_t first = arcs.size();
    const std::size_t count = std::max<std::size_t>(per_component[k], 1);
    for (std::size_t i = 0; i < count; ++i) arcs.push_back("a" + std::to_string(arcs.size() + 1));
    for (std::size_t i = 0; i < per_component[k]; ++i) {
      under_pairs.emplace_back(first + i, first + (i + 1) % count);
    }
  }
  std::vector<Crossing> crossings;
  for (const auto& [from, to] : under_pairs) {
    Crossing x;
    x.over = rng.below(arcs.size());
    if (rng.coin()) {
      x.under_right = from;
      x.under_left = to;
    } else {
      x.under_right = to;
      x.under_left = from;
    }
    crossings.push_back(x);
  }
  // Shuffle crossing order so row order carries no structure.
  for (std::size_t i = crossings.size(); i > 1; --i) std::swap(crossings[i - 1], crossings[rng.below(i)]);
  return LinkDiagram::build(std::move(arcs), std::move(crossings));
}

}  // namespace alexq
