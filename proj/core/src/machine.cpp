#include "realg/machine.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace realg {

namespace {

void validate(const Machine& m, Machine::Polarity want) {
  using C = MachineError::Code;
  if (m.polarity != want)
    throw MachineError(C::PolarityMismatch, "machine values sit on the wrong side for this kind");
  const int v = m.value_count();
  if (v > 5 || (1 << v) > max_carrier())
    throw MachineError(C::TooLarge, "powerset of " + std::to_string(v) + " values is too large");
  const int host = want == Machine::Polarity::Disjunctive ? m.contexts : m.terms;
  const int boxed = want == Machine::Polarity::Disjunctive ? m.terms : m.contexts;
  std::vector<char> seen(host, 0);
  for (int id : m.values) {
    if (id < 0 || id >= host || seen[id]) throw MachineError(C::Malformed, "bad value id");
    seen[id] = 1;
  }
  if (static_cast<int>(m.pair.size()) != v * v) throw MachineError(C::Malformed, "pair table size");
  for (int x : m.pair)
    if (x < 0 || x >= v) throw MachineError(C::Malformed, "pair entry out of range");
  if (static_cast<int>(m.box.size()) != boxed) throw MachineError(C::Malformed, "box table size");
  for (int x : m.box)
    if (x < 0 || x >= v) throw MachineError(C::Malformed, "box entry out of range");
  if (static_cast<int>(m.pole.size()) != m.terms * m.contexts)
    throw MachineError(C::Malformed, "pole size");
}

std::vector<std::string> subset_labels(int v) {
  std::vector<std::string> labels(1 << v);
  for (int s = 0; s < (1 << v); ++s) {
    std::string l = "{";
    bool first = true;
    for (int i = 0; i < v; ++i)
      if (s & (1 << i)) {
        if (!first) l += ",";
        l += "v" + std::to_string(i);
        first = false;
      }
    labels[s] = l + "}";
  }
  return labels;
}

std::vector<Elem> pair_image(const Machine& m) {
  const int v = m.value_count(), n = 1 << v;
  std::vector<Elem> t(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int img = 0;
      for (int i = 0; i < v; ++i)
        if (a & (1 << i))
          for (int j = 0; j < v; ++j)
            if (b & (1 << j)) img |= 1 << m.pair[i * v + j];
      t[a * n + b] = img;
    }
  return t;
}

}  // namespace

Structure machine_powerset_disjunctive(const Machine& m) {
  validate(m, Machine::Polarity::Disjunctive);
  const int v = m.value_count(), n = 1 << v;
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rel[a][b] = (b & ~a) == 0;
  auto L = std::make_shared<const FiniteLattice>(validate_lattice(rel, subset_labels(v)));
  std::vector<Elem> neg(n);
  for (int a = 0; a < n; ++a) {
    int img = 0;
    for (int t = 0; t < m.terms; ++t) {
      bool ok = true;
      for (int i = 0; i < v && ok; ++i)
        if ((a & (1 << i)) && !m.orth(t, m.values[i])) ok = false;
      if (ok) img |= 1 << m.box[t];
    }
    neg[a] = img;
  }
  auto par = pair_image(m);
  auto r = check_disjunctive_report(*L, par, neg);
  if (!r.ok)
    throw MachineError(MachineError::Code::NotStructural, "machine powerset is not disjunctive: " + r.describe(), r);
  return Structure(Kind::Disjunctive, L, std::move(par), std::move(neg));
}

Structure machine_powerset_conjunctive(const Machine& m) {
  validate(m, Machine::Polarity::Conjunctive);
  const int v = m.value_count(), n = 1 << v;
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rel[a][b] = (a & ~b) == 0;
  auto L = std::make_shared<const FiniteLattice>(validate_lattice(rel, subset_labels(v)));
  std::vector<Elem> neg(n);
  for (int a = 0; a < n; ++a) {
    int img = 0;
    for (int e = 0; e < m.contexts; ++e) {
      bool ok = true;
      for (int i = 0; i < v && ok; ++i)
        if ((a & (1 << i)) && !m.orth(m.values[i], e)) ok = false;
      if (ok) img |= 1 << m.box[e];
    }
    neg[a] = img;
  }
  auto tens = pair_image(m);
  auto r = check_conjunctive_report(*L, tens, neg);
  if (!r.ok)
    throw MachineError(MachineError::Code::NotStructural, "machine powerset is not conjunctive: " + r.describe(), r);
  return Structure(Kind::Conjunctive, L, std::move(tens), std::move(neg));
}

std::vector<Machine> machine_catalogue(int max_values, int per_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Machine> out;
  for (int pol = 0; pol < 2; ++pol) {
    for (int v = 1; v <= max_values; ++v) {
      for (int k = 0; k < per_size; ++k) {
        Machine m;
        m.polarity = pol == 0 ? Machine::Polarity::Disjunctive : Machine::Polarity::Conjunctive;
        const int extra = static_cast<int>(rng() % 2);
        const int host = v + extra;
        if (pol == 0) {
          m.terms = v;
          m.contexts = host;
        } else {
          m.terms = host;
          m.contexts = v;
        }
        std::vector<int> ids(host);
        std::iota(ids.begin(), ids.end(), 0);
        std::shuffle(ids.begin(), ids.end(), rng);
        m.values.assign(ids.begin(), ids.begin() + v);
        m.pair.resize(v * v);
        const int shape = k % 4;
        for (int i = 0; i < v; ++i)
          for (int j = 0; j < v; ++j) {
            switch (shape) {
              case 0: m.pair[i * v + j] = i; break;
              case 1: m.pair[i * v + j] = std::max(i, j); break;
              case 2: m.pair[i * v + j] = 0; break;
              default: m.pair[i * v + j] = static_cast<int>(rng() % v); break;
            }
          }
        m.box.resize(v);
        std::iota(m.box.begin(), m.box.end(), 0);
        std::shuffle(m.box.begin(), m.box.end(), rng);
        m.pole.resize(m.terms * m.contexts);
        const int density = k % 3;  // empty-ish, half, full-ish
        for (auto& p : m.pole) {
          if (k == 0) {
            p = 0;
          } else if (k == 1) {
            p = 1;
          } else {
            p = static_cast<char>((rng() % 4) < static_cast<unsigned>(density + 1) ? 1 : 0);
          }
        }
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

}  // namespace realg
