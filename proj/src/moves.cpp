#include "alexq/moves.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "alexq/error.hpp"
#include "alexq/rng.hpp"

namespace alexq {

namespace {

// Mutable copy of a diagram; rebuilt (and revalidated) at the end of a move.
struct Draft {
  std::vector<std::string> arcs;
  std::vector<int> kappa;
  std::vector<Crossing> crossings;

  explicit Draft(const LinkDiagram& d) : arcs(d.arcs()), kappa(d.kappa()), crossings(d.crossings()) {}

  std::size_t add_arc(int component) {
    std::size_t best = 0;
    for (const auto& a : arcs) {
      if (a.size() > 1 && a[0] == 'a' &&
          std::all_of(a.begin() + 1, a.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
          a.size() < 12) {
        best = std::max<std::size_t>(best, std::stoull(a.substr(1)));
      }
    }
    arcs.push_back("a" + std::to_string(best + 1));
    kappa.push_back(component);
    return arcs.size() - 1;
  }

  void replace_arc(std::size_t from, std::size_t into) {
    for (auto& c : crossings) {
      for (auto* slot : {&c.over, &c.under_right, &c.under_left}) {
        if (*slot == from) *slot = into;
      }
    }
  }

  // Caller guarantees the arc is no longer referenced.
  void erase_arc(std::size_t arc) {
    arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(arc));
    kappa.erase(kappa.begin() + static_cast<std::ptrdiff_t>(arc));
    for (auto& c : crossings) {
      for (auto* slot : {&c.over, &c.under_right, &c.under_left}) {
        if (*slot > arc) --*slot;
      }
    }
  }

  void erase_crossings(std::vector<std::size_t> which) {
    std::sort(which.rbegin(), which.rend());
    for (auto c : which) crossings.erase(crossings.begin() + static_cast<std::ptrdiff_t>(c));
  }

  LinkDiagram finish() {
    try {
      return LinkDiagram::build(std::move(arcs), std::move(crossings), std::move(kappa));
    } catch (const UsageError& e) {
      throw InternalError(std::string("move produced an invalid diagram: ") + e.what());
    }
  }
};

std::size_t& side_slot(Crossing& c, bool right) { return right ? c.under_right : c.under_left; }
std::size_t side_of(const Crossing& c, bool right) { return right ? c.under_right : c.under_left; }
std::size_t side_of(const Crossing& c, Side s) { return side_of(c, s == Side::Right); }
Side flip(Side s) { return s == Side::Right ? Side::Left : Side::Right; }

std::vector<UnderEnd> ends_of(const LinkDiagram& d, std::size_t arc) {
  std::vector<UnderEnd> out;
  for (std::size_t c = 0; c < d.num_crossings(); ++c) {
    if (d.crossings()[c].under_right == arc) out.push_back({c, true});
    if (d.crossings()[c].under_left == arc) out.push_back({c, false});
  }
  return out;
}

std::vector<std::size_t> overs_of(const LinkDiagram& d, std::size_t arc) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < d.num_crossings(); ++c) {
    if (d.crossings()[c].over == arc) out.push_back(c);
  }
  return out;
}

void check_arc(const LinkDiagram& d, std::size_t a) {
  if (a >= d.num_arcs()) throw UsageError("move refers to arc index " + std::to_string(a) + " which does not exist");
}
void check_crossing(const LinkDiagram& d, std::size_t c) {
  if (c >= d.num_crossings()) {
    throw UsageError("move refers to crossing index " + std::to_string(c) + " which does not exist");
  }
}

void check_end(const LinkDiagram& d, std::size_t arc, const UnderEnd& e) {
  check_crossing(d, e.crossing);
  if (side_of(d.crossings()[e.crossing], e.right) != arc) throw UsageError("moved end does not belong to the split arc");
}

void move_overs(const LinkDiagram& d, Draft& draft, std::size_t from, std::size_t to,
                const std::vector<std::size_t>& which) {
  std::set<std::size_t> seen;
  for (auto c : which) {
    check_crossing(d, c);
    if (d.crossings()[c].over != from) throw UsageError("moved over-crossing is not over the split arc");
    if (!seen.insert(c).second) throw UsageError("moved over-crossing listed twice");
    draft.crossings[c].over = to;
  }
}

LinkDiagram apply(const LinkDiagram& d, const R1Add& m) {
  check_arc(d, m.arc);
  Draft draft(d);
  const auto a = m.arc;
  if (d.under_end_count(a) == 0) {
    if (m.moved_end || !m.moved_overs.empty()) throw UsageError("a crossing-free arc has no ends or overs to move");
    draft.crossings.push_back({a, a, a});
    return draft.finish();
  }
  if (!m.moved_end) throw UsageError("R1 on an arc with ends needs the end handed to the new arc");
  check_end(d, a, *m.moved_end);
  const auto b = draft.add_arc(d.component(a));
  side_slot(draft.crossings[m.moved_end->crossing], m.moved_end->right) = b;
  move_overs(d, draft, a, b, m.moved_overs);
  Crossing kink;
  kink.over = m.new_is_over ? b : a;
  kink.under_right = m.new_on_right ? b : a;
  kink.under_left = m.new_on_right ? a : b;
  draft.crossings.push_back(kink);
  return draft.finish();
}

bool r1_removable(const LinkDiagram& d, std::size_t c) {
  const auto& x = d.crossings()[c];
  return x.over == x.under_right || x.over == x.under_left;
}

LinkDiagram apply(const LinkDiagram& d, const R1Remove& m) {
  check_crossing(d, m.crossing);
  if (!r1_removable(d, m.crossing)) throw UsageError("crossing is not a kink (over arc is neither under piece)");
  const auto x = d.crossings()[m.crossing];
  Draft draft(d);
  draft.erase_crossings({m.crossing});
  if (x.under_right != x.under_left) {
    const auto keep = std::min(x.under_right, x.under_left);
    const auto drop = std::max(x.under_right, x.under_left);
    draft.replace_arc(drop, keep);
    draft.erase_arc(drop);
  }
  return draft.finish();
}

LinkDiagram apply(const LinkDiagram& d, const R2Add& m) {
  check_arc(d, m.over);
  check_arc(d, m.under);
  if (m.over == m.under) throw UsageError("R2 needs two different arcs");
  Draft draft(d);
  const int k = d.component(m.under);
  std::size_t u2 = m.under;
  if (d.under_end_count(m.under) == 0) {
    if (m.moved_end || !m.moved_overs.empty()) throw UsageError("a crossing-free arc has no ends or overs to move");
  } else {
    if (!m.moved_end) throw UsageError("R2 on an arc with ends needs the end handed to the new outer arc");
    check_end(d, m.under, *m.moved_end);
    u2 = draft.add_arc(k);
    side_slot(draft.crossings[m.moved_end->crossing], m.moved_end->right) = u2;
    move_overs(d, draft, m.under, u2, m.moved_overs);
  }
  const auto mid = draft.add_arc(k);
  if (m.middle_on_left) {
    draft.crossings.push_back({m.over, m.under, mid});
    draft.crossings.push_back({m.over, u2, mid});
  } else {
    draft.crossings.push_back({m.over, mid, m.under});
    draft.crossings.push_back({m.over, mid, u2});
  }
  return draft.finish();
}

struct R2Shape {
  std::size_t over, x, y, mid;
  bool middle_on_left;
};

std::optional<R2Shape> r2_shape(const LinkDiagram& d, std::size_t c1, std::size_t c2) {
  if (c1 == c2 || c1 >= d.num_crossings() || c2 >= d.num_crossings()) return std::nullopt;
  const auto& a = d.crossings()[c1];
  const auto& b = d.crossings()[c2];
  if (a.over != b.over) return std::nullopt;
  for (bool mid_right : {false, true}) {
    R2Shape s{a.over, side_of(a, !mid_right), side_of(b, !mid_right), side_of(a, mid_right), !mid_right};
    if (side_of(b, mid_right) != s.mid) continue;
    if (s.mid == s.x || s.mid == s.y) continue;
    if (s.over == s.x || s.over == s.y || s.over == s.mid) continue;
    if (!overs_of(d, s.mid).empty()) continue;
    return s;
  }
  return std::nullopt;
}

LinkDiagram apply(const LinkDiagram& d, const R2Remove& m) {
  auto shape = r2_shape(d, m.first, m.second);
  if (!shape) throw UsageError("crossings do not form a removable bigon");
  Draft draft(d);
  draft.erase_crossings({m.first, m.second});
  std::vector<std::size_t> dead{shape->mid};
  if (shape->x != shape->y) {
    const auto keep = std::min(shape->x, shape->y);
    const auto drop = std::max(shape->x, shape->y);
    draft.replace_arc(drop, keep);
    dead.push_back(drop);
  }
  std::sort(dead.rbegin(), dead.rend());
  for (auto a : dead) draft.erase_arc(a);
  return draft.finish();
}

struct R3Shape {
  std::size_t top, m_x, m_y, b_x, b_mid, b_y;
};

std::optional<R3Shape> r3_shape(const LinkDiagram& d, const R3& m) {
  const auto nc = d.num_crossings();
  if (m.p >= nc || m.q >= nc || m.r >= nc) return std::nullopt;
  if (m.p == m.q || m.p == m.r || m.q == m.r) return std::nullopt;
  const auto& p = d.crossings()[m.p];
  const auto& q = d.crossings()[m.q];
  const auto& r = d.crossings()[m.r];
  R3Shape s{};
  s.top = r.over;
  s.m_x = side_of(r, m.x_side);
  s.m_y = side_of(r, flip(m.x_side));
  if (p.over != s.top || q.over != s.m_y) return std::nullopt;
  s.b_x = side_of(p, m.x_side);
  s.b_mid = side_of(p, flip(m.x_side));
  if (side_of(q, m.start_side) != s.b_mid) return std::nullopt;
  s.b_y = side_of(q, flip(m.start_side));
  for (auto a : {s.top, s.m_x, s.m_y, s.b_x, s.b_y}) {
    if (a == s.b_mid) return std::nullopt;
  }
  if (!overs_of(d, s.b_mid).empty()) return std::nullopt;
  return s;
}

LinkDiagram apply(const LinkDiagram& d, const R3& m) {
  auto shape = r3_shape(d, m);
  if (!shape) throw UsageError("crossings do not form an R3 configuration");
  Draft draft(d);
  // The moving strand's middle arc keeps its slot but gets a fresh label.
  const auto fresh = draft.add_arc(d.component(shape->b_mid));
  draft.arcs[shape->b_mid] = draft.arcs[fresh];
  draft.arcs.pop_back();
  draft.kappa.pop_back();
  const auto b_new = shape->b_mid;

  Crossing q2;
  q2.over = shape->m_x;
  side_slot(q2, m.start_side == Side::Right) = shape->b_x;
  side_slot(q2, m.start_side != Side::Right) = b_new;
  Crossing p2;
  p2.over = shape->top;
  side_slot(p2, m.x_side == Side::Right) = b_new;
  side_slot(p2, m.x_side != Side::Right) = shape->b_y;
  draft.crossings[m.q] = q2;
  draft.crossings[m.p] = p2;
  return draft.finish();
}

std::size_t shift_after(std::size_t index, std::initializer_list<std::size_t> removed) {
  std::size_t out = index;
  for (auto r : removed) out -= (index > r);
  return out;
}

}  // namespace

std::string move_name(const MoveSite& site) {
  struct Namer {
    std::string operator()(const R1Add&) const { return "R1+"; }
    std::string operator()(const R1Remove&) const { return "R1-"; }
    std::string operator()(const R2Add&) const { return "R2+"; }
    std::string operator()(const R2Remove&) const { return "R2-"; }
    std::string operator()(const R3& m) const {
      return std::string("R3") + (m.x_side == Side::Right ? "R" : "L") + (m.start_side == Side::Right ? "R" : "L");
    }
  };
  return std::visit(Namer{}, site);
}

LinkDiagram apply_move(const LinkDiagram& d, const MoveSite& site) {
  return std::visit([&](const auto& m) { return apply(d, m); }, site);
}

MoveSite inverse_move(const LinkDiagram& d, const MoveSite& site) {
  const auto nc = d.num_crossings();
  if (std::holds_alternative<R1Add>(site)) return R1Remove{nc};
  if (std::holds_alternative<R2Add>(site)) return R2Remove{nc, nc + 1};
  if (const auto* m = std::get_if<R3>(&site)) return R3{flip(m->x_side), flip(m->start_side), m->p, m->q, m->r};

  if (const auto* m = std::get_if<R1Remove>(&site)) {
    check_crossing(d, m->crossing);
    const auto x = d.crossings()[m->crossing];
    const auto c = m->crossing;
    if (x.under_right == x.under_left) return R1Add{x.under_right, false, true, std::nullopt, {}};
    const auto keep = std::min(x.under_right, x.under_left);
    const auto drop = std::max(x.under_right, x.under_left);
    R1Add inv;
    inv.arc = keep;
    inv.new_is_over = x.over == drop;
    inv.new_on_right = x.under_right == drop;
    for (const auto& e : ends_of(d, drop)) {
      if (e.crossing != c) inv.moved_end = UnderEnd{shift_after(e.crossing, {c}), e.right};
    }
    for (auto o : overs_of(d, drop)) {
      if (o != c) inv.moved_overs.push_back(shift_after(o, {c}));
    }
    return inv;
  }

  const auto& m = std::get<R2Remove>(site);
  auto shape = r2_shape(d, m.first, m.second);
  if (!shape) throw UsageError("crossings do not form a removable bigon");
  R2Add inv;
  inv.middle_on_left = shape->middle_on_left;
  auto arc_after = [&](std::size_t a) {
    std::size_t out = a;
    out -= (a > shape->mid);
    if (shape->x != shape->y) out -= (a > std::max(shape->x, shape->y));
    return out;
  };
  inv.over = arc_after(shape->over);
  inv.under = arc_after(std::min(shape->x, shape->y));
  if (shape->x != shape->y) {
    const auto drop = std::max(shape->x, shape->y);
    for (const auto& e : ends_of(d, drop)) {
      if (e.crossing != m.first && e.crossing != m.second) {
        inv.moved_end = UnderEnd{shift_after(e.crossing, {m.first, m.second}), e.right};
      }
    }
    for (auto o : overs_of(d, drop)) inv.moved_overs.push_back(shift_after(o, {m.first, m.second}));
  }
  return inv;
}

std::vector<R1Remove> r1_remove_sites(const LinkDiagram& d) {
  std::vector<R1Remove> out;
  for (std::size_t c = 0; c < d.num_crossings(); ++c) {
    if (r1_removable(d, c)) out.push_back({c});
  }
  return out;
}

std::vector<R2Remove> r2_remove_sites(const LinkDiagram& d) {
  std::vector<R2Remove> out;
  for (std::size_t a = 0; a < d.num_crossings(); ++a) {
    for (std::size_t b = a + 1; b < d.num_crossings(); ++b) {
      if (r2_shape(d, a, b)) out.push_back({a, b});
    }
  }
  return out;
}

std::vector<R3> r3_sites(const LinkDiagram& d) {
  std::vector<R3> out;
  const auto nc = d.num_crossings();
  for (std::size_t r = 0; r < nc; ++r) {
    for (Side x : {Side::Right, Side::Left}) {
      const auto m_y = side_of(d.crossings()[r], flip(x));
      for (std::size_t q = 0; q < nc; ++q) {
        if (q == r || d.crossings()[q].over != m_y) continue;
        for (Side s : {Side::Right, Side::Left}) {
          const auto b_mid = side_of(d.crossings()[q], s);
          for (const auto& e : ends_of(d, b_mid)) {
            if (e.crossing == q || e.crossing == r) continue;
            if (e.right != (flip(x) == Side::Right)) continue;
            R3 site{x, s, e.crossing, q, r};
            if (r3_shape(d, site)) out.push_back(site);
          }
        }
      }
    }
  }
  return out;
}

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[rng.below(v.size())];
}

std::vector<std::size_t> random_subset(Rng& rng, const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto x : v) {
    if (rng.coin()) out.push_back(x);
  }
  return out;
}

R1Add random_r1(Rng& rng, const LinkDiagram& d) {
  R1Add m;
  m.arc = rng.below(d.num_arcs());
  auto ends = ends_of(d, m.arc);
  if (ends.empty()) return m;
  m.new_is_over = rng.coin();
  m.new_on_right = rng.coin();
  m.moved_end = pick(rng, ends);
  m.moved_overs = random_subset(rng, overs_of(d, m.arc));
  return m;
}

R2Add random_r2(Rng& rng, const LinkDiagram& d, std::size_t over, std::size_t under) {
  R2Add m;
  m.over = over;
  m.under = under;
  m.middle_on_left = rng.coin();
  auto ends = ends_of(d, under);
  if (ends.empty()) return m;
  m.moved_end = pick(rng, ends);
  m.moved_overs = random_subset(rng, overs_of(d, under));
  return m;
}

// Two R2 moves that set up an R3 configuration around crossing r, followed
// by the R3 itself.
std::optional<std::vector<MoveSite>> r3_macro(Rng& rng, const LinkDiagram& d) {
  if (d.num_crossings() == 0) return std::nullopt;
  const auto r = rng.below(d.num_crossings());
  const Side x = rng.coin() ? Side::Right : Side::Left;
  const auto& rc = d.crossings()[r];
  const auto top = rc.over;
  const auto m_y = side_of(rc, flip(x));
  std::vector<std::size_t> candidates;
  for (std::size_t a = 0; a < d.num_arcs(); ++a) {
    if (a != top && a != rc.under_right && a != rc.under_left) candidates.push_back(a);
  }
  if (candidates.empty()) return std::nullopt;
  const auto b = pick(rng, candidates);

  std::vector<MoveSite> out;
  R2Add first = random_r2(rng, d, top, b);
  first.middle_on_left = x == Side::Right;
  auto d1 = apply(d, first);
  out.push_back(first);

  // Middle arc of the first bigon, and its end at the second new crossing.
  const auto p = d.num_crossings();
  const auto mid = side_of(d1.crossings()[p], flip(x));
  R2Add second;
  second.over = m_y;
  second.under = mid;
  second.middle_on_left = rng.coin();
  second.moved_end = UnderEnd{p + 1, flip(x) == Side::Right};
  out.push_back(second);

  const Side start = second.middle_on_left ? Side::Right : Side::Left;
  out.push_back(R3{x, start, p, p + 2, r});
  return out;
}

}  // namespace

std::vector<MoveSite> random_move_sequence(std::uint64_t seed, const LinkDiagram& d, std::size_t length) {
  Rng rng(seed);
  std::vector<MoveSite> out;
  LinkDiagram cur = d;
  while (out.size() < length) {
    const std::size_t left = length - out.size();
    const auto r1s = r1_remove_sites(cur);
    const auto r2s = r2_remove_sites(cur);
    const auto r3s = r3_sites(cur);
    std::vector<MoveSite> batch;
    switch (rng.below(6)) {
      case 0:
        batch.push_back(random_r1(rng, cur));
        break;
      case 1:
        if (!r1s.empty()) batch.push_back(pick(rng, r1s));
        break;
      case 2:
        if (cur.num_arcs() >= 2) {
          const auto o = rng.below(cur.num_arcs());
          auto u = rng.below(cur.num_arcs() - 1);
          if (u >= o) ++u;
          batch.push_back(random_r2(rng, cur, o, u));
        }
        break;
      case 3:
        if (!r2s.empty()) batch.push_back(pick(rng, r2s));
        break;
      case 4:
        if (!r3s.empty()) batch.push_back(pick(rng, r3s));
        break;
      default:
        if (left >= 3) {
          if (auto macro = r3_macro(rng, cur)) batch = std::move(*macro);
        }
        break;
    }
    for (const auto& site : batch) {
      cur = apply_move(cur, site);
      out.push_back(site);
    }
  }
  return out;
}

}  // namespace alexq
