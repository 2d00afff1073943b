#pragma once

// Link diagrams stored as crossing triples.
//
// A crossing records its over arc and the two under arcs, named by which
// side of the oriented over arc they lie on: walking along the over arc in
// its direction, under_right is on the right and under_left on the left.
//
// Orientation of the under strand is not stored; the Alexander relation
// (1 - t_k(right)) over + t_k(over) right - left is the same for both signs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alexq {

struct Crossing {
  std::size_t over = 0;
  std::size_t under_right = 0;
  std::size_t under_left = 0;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

class LinkDiagram {
 public:
  LinkDiagram() = default;

  // Validates the data and derives the component map. Every arc must occur
  // as an under piece exactly twice (an arc with an under-crossing at both
  // ends) or never (a closed crossing-free loop). `declared_components`, when
  // non-empty, gives a 1-based component per arc; it must induce the same
  // partition as the under-piece relation and is then used as the numbering.
  // Otherwise components are numbered by their first arc. Throws UsageError.
  static LinkDiagram build(std::vector<std::string> arcs, std::vector<Crossing> crossings,
                           std::vector<int> declared_components = {});

  const std::vector<std::string>& arcs() const { return arcs_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  std::size_t num_arcs() const { return arcs_.size(); }
  std::size_t num_crossings() const { return crossings_.size(); }
  std::size_t num_components() const { return num_components_; }

  // 1-based component index of an arc.
  int component(std::size_t arc) const { return kappa_.at(arc); }
  const std::vector<int>& kappa() const { return kappa_; }

  std::optional<std::size_t> find_arc(std::string_view id) const;
  const std::string& label(std::size_t arc) const { return arcs_.at(arc); }

  // Number of times the arc occurs as an under piece (0 or 2 when valid).
  std::size_t under_end_count(std::size_t arc) const;

  friend bool operator==(const LinkDiagram&, const LinkDiagram&) = default;

 private:
  std::vector<std::string> arcs_;
  std::vector<Crossing> crossings_;
  std::vector<int> kappa_;
  std::size_t num_components_ = 0;
};

// Native text format:
//   arc <id> [component]
//   crossing <over> <under_right> <under_left>
// with `#` comments. JSON input (an object with "arcs" and "crossings") is
// detected by a leading '{'. Throws ParseError with the offending line.
LinkDiagram parse_diagram(std::string_view text);
std::string to_native(const LinkDiagram& d, std::string_view header_comment = {});

// Normalized JSON text (sorted keys).
std::string to_json_text(const LinkDiagram& d);

// PD code import, e.g. "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]". Each X[i,j,k,l]
// lists edges counterclockwise starting from the incoming under edge; edge
// labels increase along each component's orientation.
LinkDiagram parse_pd_code(std::string_view text);

// Random diagram: the given number of components and crossings, with every
// crossing's over arc and under sides drawn uniformly. Deterministic in seed.
struct RandomDiagramParams {
  std::size_t components = 1;
  std::size_t crossings = 3;
};
LinkDiagram random_diagram(std::uint64_t seed, const RandomDiagramParams& params);

// Stable 64-bit FNV-1a digest of the native serialization, as hex.
std::string diagram_digest(const LinkDiagram& d);

}  // namespace alexq
