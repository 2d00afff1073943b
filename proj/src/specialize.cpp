#include "alexq/specialize.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "alexq/error.hpp"
#include "alexq/rng.hpp"
#include "json.hpp"

namespace alexq {

Specialization make_specialization(std::uint64_t prime, std::vector<std::uint64_t> assignments,
                                   std::size_t num_vars) {
  const PrimeField field(prime);
  if (assignments.size() != num_vars) {
    throw UsageError("expected " + std::to_string(num_vars) + " assignments, got " +
                     std::to_string(assignments.size()));
  }
  for (auto& u : assignments) {
    u %= prime;
    if (u == 0) throw UsageError("assignments must be nonzero mod " + std::to_string(prime));
  }
  return {prime, std::move(assignments)};
}

FpVector evaluate_row(const PolyRow& row, const Specialization& s) {
  FpVector out(row.size());
  for (std::size_t g = 0; g < row.size(); ++g) {
    out[g] = row[g].is_zero() ? 0 : evaluate_in_prime_field(row[g], s.prime, s.assignments);
  }
  return out;
}

SpecializedModule::SpecializedModule(const ModulePresentation& p, const Specialization& s)
    : spec_(make_specialization(s.prime, s.assignments, p.num_vars)),
      echelon_(PrimeField(s.prime), p.num_generators()) {
  for (const auto& r : p.relations) echelon_.insert(evaluate_row(r, spec_));
  free_ = echelon_.free_columns();
  phi_ = evaluate_row(p.phi, spec_);
}

bool SpecializedModule::equal(const FpVector& x, const FpVector& y) const {
  if (x.size() != ambient_dimension() || y.size() != ambient_dimension()) {
    throw UsageError("vector length does not match the ambient dimension");
  }
  FpVector diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = field().sub(x[i] % prime(), y[i] % prime());
  const auto r = representative(std::move(diff));
  return std::all_of(r.begin(), r.end(), [](auto v) { return v == 0; });
}

FpVector SpecializedModule::coordinates(const FpVector& v) const {
  const auto r = representative(v);
  FpVector out(free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) out[i] = r[free_[i]];
  return out;
}

FpVector SpecializedModule::lift(const FpVector& coords) const {
  if (coords.size() != free_.size()) throw UsageError("coordinate length does not match the module dimension");
  FpVector out(ambient_dimension(), 0);
  for (std::size_t i = 0; i < free_.size(); ++i) out[free_[i]] = coords[i] % prime();
  return out;
}

FpVector SpecializedModule::generator(std::size_t g) const {
  if (g >= ambient_dimension()) throw UsageError("generator index out of range");
  FpVector v(ambient_dimension(), 0);
  v[g] = 1;
  return v;
}

std::uint64_t SpecializedModule::phi(const FpVector& v) const {
  if (v.size() != ambient_dimension()) throw UsageError("vector length does not match the ambient dimension");
  std::uint64_t acc = 0;
  for (std::size_t g = 0; g < v.size(); ++g) acc = field().add(acc, field().mul(v[g] % prime(), phi_[g]));
  return acc;
}

KernelPhi kernel_phi(const SpecializedModule& m) {
  const auto& field = m.field();
  const auto& free = m.free_columns();
  KernelPhi out;
  // Representatives vanish at pivots, so phi on a class only sees free columns.
  std::optional<std::size_t> lead;
  for (std::size_t i = 0; i < free.size() && !lead; ++i) {
    if (m.phi_functional()[free[i]] != 0) lead = i;
  }
  const bool phi_zero = std::all_of(m.phi_functional().begin(), m.phi_functional().end(), [](auto v) { return v == 0; });
  if (phi_zero || !lead) {
    out.degenerate = phi_zero;
    out.dimension = free.size();
    for (std::size_t i = 0; i < free.size(); ++i) {
      FpVector c(free.size(), 0);
      c[i] = 1;
      out.basis.push_back(m.lift(c));
    }
    return out;
  }
  const auto f_lead = m.phi_functional()[free[*lead]];
  const auto inv = field.inv(f_lead);
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (i == *lead) continue;
    FpVector c(free.size(), 0);
    c[i] = 1;
    c[*lead] = field.neg(field.mul(m.phi_functional()[free[i]], inv));
    out.basis.push_back(m.lift(c));
  }
  out.dimension = out.basis.size();
  return out;
}

std::size_t coloring_exponent(const LinkDiagram& d, const Specialization& s) {
  const auto spec = make_specialization(s.prime, s.assignments, d.num_components());
  const PrimeField field(spec.prime);
  auto u = [&](std::size_t arc) { return spec.assignments[static_cast<std::size_t>(d.component(arc) - 1)]; };
  Echelon e(field, d.num_arcs());
  for (const auto& c : d.crossings()) {
    // (1 - u_k(right)) c(over) + u_k(over) c(right) - c(left) = 0
    std::vector<std::pair<std::size_t, std::uint64_t>> entries{
        {c.over, field.sub(1, u(c.under_right))},
        {c.under_right, u(c.over)},
        {c.under_left, field.neg(1)},
    };
    e.insert_sparse(entries);
  }
  return e.nullity();
}

BatteryConfig equality_battery_config() {
  BatteryConfig c;
  c.primes = {5, 7, 11};
  c.tuples_per_prime = 8;
  return c;
}

BatteryConfig parse_battery_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid battery JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("battery configuration must be a JSON object");
  BatteryConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "primes") {
        c.primes = value.get<std::vector<std::uint64_t>>();
      } else if (key == "tuples") {
        c.tuples_per_prime = value.get<std::size_t>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "members") {
        for (const auto& m : value) {
          c.members.push_back({m.at("prime").get<std::uint64_t>(), m.at("assign").get<std::vector<std::uint64_t>>()});
        }
      } else {
        throw ParseError("unknown battery key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed battery configuration: ") + e.what());
  }
  for (auto p : c.primes) PrimeField check(p);
  return c;
}

std::vector<Specialization> battery_members(const BatteryConfig& config, std::size_t num_vars) {
  std::vector<Specialization> out;
  if (!config.members.empty()) {
    for (const auto& m : config.members) out.push_back(make_specialization(m.prime, m.assignments, num_vars));
    return out;
  }
  for (auto p : config.primes) {
    const PrimeField field(p);
    if (num_vars + 2 > p) continue;
    Rng rng(config.seed ^ (p * 0x9e3779b97f4a7c15ULL));
    std::set<std::vector<std::uint64_t>> seen;
    for (std::size_t t = 0; t < config.tuples_per_prime; ++t) {
      std::vector<std::uint64_t> tuple;
      // A few redraws avoid repeating a tuple when the prime leaves room.
      for (int attempt = 0; attempt < 16; ++attempt) {
        tuple.clear();
        while (tuple.size() < num_vars) {
          const auto u = 2 + rng.below(p - 2);
          if (std::find(tuple.begin(), tuple.end(), u) == tuple.end()) tuple.push_back(u);
        }
        if (seen.insert(tuple).second) break;
      }
      out.push_back({p, tuple});
    }
  }
  return out;
}

std::string to_string(Verdict v) { return v == Verdict::Distinguished ? "distinguished" : "indistinguishable"; }

CompareResult battery_compare(const ModulePresentation& a, const ModulePresentation& b, const BatteryConfig& config) {
  CompareResult out;
  if (a.num_vars != b.num_vars) {
    out.verdict = Verdict::Distinguished;
    out.reason = "different numbers of components";
    return out;
  }
  const auto mu = a.num_vars;
  const auto members = battery_members(config, mu);
  out.members = members.size();

  std::vector<std::size_t> perm(mu);
  std::iota(perm.begin(), perm.end(), 0);
  out.all_permutations = mu <= 4;
  std::vector<std::size_t> dims_a;
  for (const auto& m : members) dims_a.push_back(SpecializedModule(a, m).dimension());

  bool every_relabeling_separated = true;
  do {
    ++out.permutations_tried;
    bool separated = false;
    for (std::size_t i = 0; i < members.size() && !separated; ++i) {
      Specialization permuted = members[i];
      for (std::size_t k = 0; k < mu; ++k) permuted.assignments[k] = members[i].assignments[perm[k]];
      separated = SpecializedModule(b, permuted).dimension() != dims_a[i];
    }
    if (!separated) every_relabeling_separated = false;
  } while (every_relabeling_separated && out.all_permutations && std::next_permutation(perm.begin(), perm.end()));

  out.verdict = every_relabeling_separated && !members.empty() ? Verdict::Distinguished : Verdict::Indistinguishable;
  if (members.empty()) {
    out.reason = "no battery member applies";
  } else if (out.verdict == Verdict::Distinguished) {
    out.reason = "cokernel dimensions differ under every component relabeling";
  } else {
    out.reason = "some relabeling agrees on every battery member";
  }
  return out;
}

bool battery_separates(const ModulePresentation& p, const PolyRow& x, const PolyRow& y) {
  if (x.size() != p.num_generators() || y.size() != p.num_generators()) {
    throw UsageError("element length differs from the generator count");
  }
  for (const auto& m : battery_members(equality_battery_config(), p.num_vars)) {
    SpecializedModule sm(p, m);
    if (!sm.equal(evaluate_row(x, m), evaluate_row(y, m))) return true;
  }
  return false;
}

}  // namespace alexq
