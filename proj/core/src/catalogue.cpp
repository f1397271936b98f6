#include "realg/catalogue.hpp"

#include <memory>
#include <random>
#include <set>

#include "realg/machine.hpp"

namespace realg {

std::string lattice_name(int n, int index) {
  return "L" + std::to_string(n) + static_cast<char>('a' + index);
}

namespace {

void sample(std::vector<NamedStructure>& out, Kind k, const LatticePtr& L, const std::string& lname,
            int per_lattice, std::mt19937_64& rng) {
  if (per_lattice <= 0) return;
  // carriers of 5 draw from a prefix of the enumeration
  std::size_t limit = L->size() <= 4 ? 0 : 4000;
  if (k == Kind::Implicative && L->size() > 4) return;
  auto all = enumerate_structures(k, L, limit);
  if (all.empty()) return;
  for (int i = 0; i < per_lattice; ++i) {
    std::size_t pick = rng() % all.size();
    out.push_back({lname + "/" + kind_name(k) + "/sample" + std::to_string(pick),
                   std::make_shared<const Structure>(all[pick])});
  }
}

}  // namespace

std::vector<NamedStructure> structure_catalogue(int max_carrier, std::uint64_t seed,
                                                int per_lattice, int max_values) {
  std::vector<NamedStructure> out;
  std::mt19937_64 rng(seed);
  for (int n = 1; n <= max_carrier && n <= 5; ++n) {
    auto ls = enumerate_lattices(n);
    for (std::size_t li = 0; li < ls.size(); ++li) {
      auto L = std::make_shared<const FiniteLattice>(ls[li]);
      std::string ln = lattice_name(n, static_cast<int>(li));
      out.push_back({ln + "/disjunctive/dummy", std::make_shared<const Structure>(dummy_disjunctive(L))});
      out.push_back({ln + "/conjunctive/dummy", std::make_shared<const Structure>(dummy_conjunctive(L))});
      out.push_back({ln + "/implicative/top-arrow",
                     std::make_shared<const Structure>(top_arrow_implicative(L))});
      if (L->distributive())
        out.push_back({ln + "/implicative/heyting",
                       std::make_shared<const Structure>(heyting_implicative(L))});
      for (Kind k : {Kind::Implicative, Kind::Disjunctive, Kind::Conjunctive})
        sample(out, k, L, ln, per_lattice, rng);
    }
  }
  for (int k = 0; (1 << k) <= max_carrier; ++k) {
    std::string b = "B" + std::to_string(1 << k);
    out.push_back({b + "/implicative/boolean", std::make_shared<const Structure>(boolean_implicative(k))});
    out.push_back({b + "/disjunctive/boolean", std::make_shared<const Structure>(boolean_disjunctive(k))});
    out.push_back({b + "/conjunctive/boolean", std::make_shared<const Structure>(boolean_conjunctive(k))});
  }
  int mi = 0;
  for (const auto& m : machine_catalogue(max_values, 2, seed)) {
    if ((1 << m.value_count()) > max_carrier) {
      ++mi;
      continue;
    }
    std::string name = "M" + std::to_string(mi++);
    if (m.polarity == Machine::Polarity::Disjunctive)
      out.push_back({name + "/disjunctive/powerset",
                     std::make_shared<const Structure>(machine_powerset_disjunctive(m))});
    else
      out.push_back({name + "/conjunctive/powerset",
                     std::make_shared<const Structure>(machine_powerset_conjunctive(m))});
  }
  return out;
}

std::vector<NamedAlgebra> algebra_catalogue(int max_carrier, std::uint64_t seed, int per_lattice,
                                            int max_values) {
  std::vector<NamedAlgebra> out;
  for (const auto& ns : structure_catalogue(max_carrier, seed, per_lattice, max_values)) {
    const int n = ns.structure->size();
    std::set<ElemSet> seen;
    for (int g = -1; g < n; ++g)
      for (bool classical : {false, true}) {
        ElemSet gens(n);
        if (g >= 0) gens.insert(g);
        auto sep = generate_separator(ns.structure, gens, classical);
        if (!seen.insert(sep.members()).second) continue;
        std::string name = ns.name + "/gen" + (g < 0 ? std::string("-") : std::to_string(g)) +
                           (classical ? "c" : "");
        out.push_back({name, sep});
      }
  }
  return out;
}

}  // namespace realg
