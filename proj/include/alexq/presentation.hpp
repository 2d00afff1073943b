#pragma once

// Module presentations over the Laurent ring: the crossing-relation matrix of
// a diagram, the augmentation map, Tietze-style simplification, cyclic
// decomposition, elementary ideals and the single-variable reduction.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "alexq/diagram.hpp"
#include "alexq/laurent.hpp"

namespace alexq {

using PolyRow = std::vector<LaurentPoly>;

PolyRow zero_row(std::size_t num_vars, std::size_t length);

// Steps of the simplification, in the order they were applied. Indices are
// positions at the time of the step.
namespace step {
// Solve relation `row` for generator `gen` (its coefficient is a unit) and
// substitute everywhere; the row and the generator disappear. `relation`
// is the row as it was when used.
struct Eliminate {
  std::size_t row = 0;
  std::size_t gen = 0;
  PolyRow relation;
};
// Delete a row that is zero or a unit multiple of row `duplicate_of`
// (indices before the deletion; duplicate_of is absent for zero rows).
struct DropRow {
  std::size_t row = 0;
  std::optional<std::size_t> duplicate_of;
};
// row[target] += factor * row[source].
struct RowAdd {
  std::size_t target = 0;
  std::size_t source = 0;
  LaurentPoly factor;
};
// Column operation col[target] += factor * col[source]. On generators this
// replaces generator `source` by source - factor * target; element
// coordinates transform like rows: v[target] += factor * v[source].
struct ColumnAdd {
  std::size_t target = 0;
  std::size_t source = 0;
  LaurentPoly factor;
};
}  // namespace step

using TraceStep = std::variant<step::Eliminate, step::DropRow, step::RowAdd, step::ColumnAdd>;

struct ModulePresentation {
  std::size_t num_vars = 1;
  std::vector<std::string> generators;
  std::vector<PolyRow> relations;  // each of length generators.size()
  std::vector<LaurentPoly> phi;    // augmentation value per generator
  std::vector<TraceStep> basis_trace;
  // Each current generator written over the generators of the presentation
  // the trace starts from (arcs, for a diagram presentation).
  std::vector<PolyRow> definitions;
  std::vector<std::string> origin_generators;

  std::size_t num_generators() const { return generators.size(); }
  std::size_t num_relations() const { return relations.size(); }
};

// One generator per arc with phi = t_k - 1, one relation per crossing
// (1 - t_k(right)) over + t_k(over) right - left, in crossing order.
ModulePresentation alexander_matrix(const LinkDiagram& d);

// A presentation with no trace whose definitions are the identity.
ModulePresentation make_presentation(std::size_t num_vars, std::vector<std::string> generators,
                                     std::vector<PolyRow> relations, std::vector<LaurentPoly> phi);

// Throws UsageError on inconsistent shapes or arities.
void check_shape(const ModulePresentation& p);

LaurentPoly phi(const ModulePresentation& p, const PolyRow& coords);

// True when every relation row is annihilated by phi.
bool phi_annihilates_relations(const ModulePresentation& p);

// Element of the presented module.
struct ModuleElement {
  std::shared_ptr<const ModulePresentation> presentation;
  PolyRow coords;

  static ModuleElement generator(std::shared_ptr<const ModulePresentation> p, std::size_t index);
  LaurentPoly phi() const { return alexq::phi(*presentation, coords); }
};

ModuleElement operator+(const ModuleElement& a, const ModuleElement& b);
ModuleElement operator-(const ModuleElement& a, const ModuleElement& b);
ModuleElement operator*(const LaurentPoly& c, const ModuleElement& a);

// Simplification by unit eliminations, removal of zero and duplicate rows,
// grouping of generators with equal phi, and divisibility pivots handled by
// unimodular row and column operations. The result presents an isomorphic
// module, and its trace extends the input's trace.
ModulePresentation simplify(const ModulePresentation& p);

// Applies `trace` to `start`, reproducing the presentation it came from.
ModulePresentation replay(const ModulePresentation& start, const std::vector<TraceStep>& trace);

// Coordinates of an element of `start` in the generators reached after
// replaying `trace`. Only the element's class is preserved.
PolyRow transport(const ModulePresentation& start, const std::vector<TraceStep>& trace, PolyRow coords);

struct CyclicFactor {
  std::size_t generator = 0;
  LaurentPoly factor;  // canonical up to units
};

struct CyclicDecomposition {
  std::size_t free_rank = 0;
  std::vector<std::size_t> free_generators;
  std::vector<CyclicFactor> torsion;
};

// Reads the decomposition off a presentation in which every relation has a
// single nonzero entry and no generator carries two relations. Empty when
// the presentation is not of that form (call simplify first).
std::optional<CyclicDecomposition> cyclic_decomposition(const ModulePresentation& p);

// Exact equality of two elements of a presentation in decomposed form.
// Throws UsageError when the presentation is not decomposed.
bool equal_in_decomposition(const ModulePresentation& p, const PolyRow& x, const PolyRow& y);

inline constexpr std::size_t kMaxMinorMatrix = 12;

// Generators of the k-th elementary ideal: nonzero (n-k)-minors of the
// relation matrix (n generators), canonical up to units, deduplicated and
// sorted. {1} when k >= n; empty (the zero ideal) when there are fewer than
// n-k relations. Throws CapacityError on matrices larger than 12x12 or when
// the expansion exceeds its work limit.
std::vector<LaurentPoly> elementary_ideal(const ModulePresentation& p, std::size_t k);

// Substitutes t_i -> t everywhere (relations, phi, definitions, trace).
ModulePresentation reduce(const ModulePresentation& p);

// Images t_i -> images[i] applied to a whole presentation.
ModulePresentation substitute(const ModulePresentation& p, std::span<const MonomialUnit> images);

}  // namespace alexq
