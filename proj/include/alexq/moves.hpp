#pragma once

// Reidemeister moves on crossing-triple diagrams.
//
// Moves act on the combinatorial data only; planarity is not tracked, so a
// site is accepted whenever the resulting triples form a valid diagram whose
// module, augmentation and arc-generated quandle agree with the original.
// Arc and crossing indices in a site refer to the diagram the move is
// applied to. New crossings are appended; new arcs get fresh labels.
// Component numbers are carried over unchanged.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "alexq/diagram.hpp"

namespace alexq {

// One end of an arc: the crossing where it passes under, and on which side.
struct UnderEnd {
  std::size_t crossing = 0;
  bool right = true;
  friend bool operator==(const UnderEnd&, const UnderEnd&) = default;
};

// Adds a kink to `arc`, splitting it into the old arc and a new arc b.
// new_is_over: whether b (rather than the old arc) passes over the kink.
// new_on_right: whether b is the right under piece of the kink.
// moved_end: the old under end handed to b (absent for a crossing-free loop,
// which instead gains the single self-crossing (a, a, a)).
// moved_overs: crossings over `arc` that b takes over.
struct R1Add {
  std::size_t arc = 0;
  bool new_is_over = false;
  bool new_on_right = true;
  std::optional<UnderEnd> moved_end;
  std::vector<std::size_t> moved_overs;
};

// Removes a kink crossing whose over arc is one of its under pieces.
struct R1Remove {
  std::size_t crossing = 0;
};

// Pushes `over` across `under`, splitting it into under, a new middle arc m
// and a new outer arc u2 that takes `moved_end` and `moved_overs`. The two
// new crossings are (over, under, m), (over, u2, m) when middle_on_left,
// else (over, m, under), (over, m, u2). A crossing-free `under` stays one
// arc (u2 = under).
struct R2Add {
  std::size_t over = 0;
  std::size_t under = 0;
  bool middle_on_left = true;
  std::optional<UnderEnd> moved_end;
  std::vector<std::size_t> moved_overs;
};

// Inverse of R2Add: two crossings with the same over arc sharing a middle
// arc on the same side, where the middle arc has no other ends and is over
// nowhere.
struct R2Remove {
  std::size_t first = 0;
  std::size_t second = 0;
};

enum class Side : std::uint8_t { Right, Left };

// Slides a strand across a crossing. `r` is the fixed crossing (T, m_R, m_L).
// `p` has over T; `q` has over m_Y where Y is opposite to `x_side`. The
// moving strand runs b_X -> b_mid -> b_Y, where b_X is on the x_side of p
// and b_mid is on the `start_side` of q. Afterwards q has over m_X and p
// keeps over T, with b_mid replaced by a freshly labelled arc.
// The four (x_side, start_side) combinations are the four orientation and
// sign variants; applying the move with both sides flipped undoes it.
struct R3 {
  Side x_side = Side::Right;
  Side start_side = Side::Right;
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t r = 0;
};

using MoveSite = std::variant<R1Add, R1Remove, R2Add, R2Remove, R3>;

std::string move_name(const MoveSite& site);

// Throws UsageError when the site does not apply.
LinkDiagram apply_move(const LinkDiagram& d, const MoveSite& site);

// Site undoing `site`, to be applied to apply_move(d, site).
MoveSite inverse_move(const LinkDiagram& d, const MoveSite& site);

std::vector<R1Remove> r1_remove_sites(const LinkDiagram& d);
std::vector<R2Remove> r2_remove_sites(const LinkDiagram& d);
std::vector<R3> r3_sites(const LinkDiagram& d);

// Random applicable sites, each valid for the diagram produced by the moves
// before it. Deterministic in the seed. R3 configurations are created on
// purpose (two R2 moves followed by the R3) so every kind gets exercised.
std::vector<MoveSite> random_move_sequence(std::uint64_t seed, const LinkDiagram& d, std::size_t length);

}  // namespace alexq
