#include "realg/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace realg {

namespace {
int g_max_carrier_override = 0;

std::string pair_text(Elem a, Elem b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}
}  // namespace

int max_carrier() {
  if (g_max_carrier_override > 0) return g_max_carrier_override;
  if (const char* env = std::getenv("REALG_MAX_CARRIER")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 64;
}

void set_max_carrier(int n) { g_max_carrier_override = n; }

FiniteLattice validate_lattice(const std::vector<std::vector<bool>>& rel,
                               std::vector<std::string> labels) {
  using C = LatticeError::Code;
  const int n = static_cast<int>(rel.size());
  if (n < 1) throw LatticeError(C::Empty, "nonempty", {}, "lattice needs at least one element");
  for (const auto& row : rel)
    if (static_cast<int>(row.size()) != n)
      throw LatticeError(C::NotAPartialOrder, "shape", {}, "order relation is not square");

  for (Elem a = 0; a < n; ++a)
    if (!rel[a][a])
      throw LatticeError(C::NotAPartialOrder, "reflexivity", {a},
                         "not reflexive at " + std::to_string(a));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (rel[a][b] && rel[b][a])
        throw LatticeError(C::NotAPartialOrder, "antisymmetry", {a, b},
                           "antisymmetry fails at " + pair_text(a, b));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (rel[a][b])
        for (Elem c = 0; c < n; ++c)
          if (rel[b][c] && !rel[a][c])
            throw LatticeError(C::NotAPartialOrder, "transitivity", {a, b, c},
                               "transitivity fails at " + std::to_string(a) + "<=" +
                                   std::to_string(b) + "<=" + std::to_string(c));

  FiniteLattice L;
  L.n_ = n;
  L.leq_.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) L.leq_[a * n + b] = rel[a][b] ? 1 : 0;

  L.meet_.assign(n * n, -1);
  L.join_.assign(n * n, -1);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a; b < n; ++b) {
      Elem m = -1, j = -1;
      for (Elem c = 0; c < n; ++c) {
        if (rel[c][a] && rel[c][b]) {
          bool greatest = true;
          for (Elem d = 0; d < n && greatest; ++d)
            if (rel[d][a] && rel[d][b] && !rel[d][c]) greatest = false;
          if (greatest) m = c;
        }
        if (rel[a][c] && rel[b][c]) {
          bool least = true;
          for (Elem d = 0; d < n && least; ++d)
            if (rel[a][d] && rel[b][d] && !rel[c][d]) least = false;
          if (least) j = c;
        }
      }
      if (m < 0)
        throw LatticeError(C::NotALattice, "meet", {a, b}, "no meet for " + pair_text(a, b));
      if (j < 0)
        throw LatticeError(C::NotALattice, "join", {a, b}, "no join for " + pair_text(a, b));
      L.meet_[a * n + b] = L.meet_[b * n + a] = m;
      L.join_[a * n + b] = L.join_[b * n + a] = j;
    }
  }
  L.bot_ = 0;
  L.top_ = 0;
  for (Elem a = 1; a < n; ++a) {
    L.bot_ = L.meet_[L.bot_ * n + a];
    L.top_ = L.join_[L.top_ * n + a];
  }
  if (labels.empty()) {
    for (Elem a = 0; a < n; ++a) labels.push_back(std::to_string(a));
  } else if (static_cast<int>(labels.size()) != n) {
    labels.resize(n);
    for (Elem a = 0; a < n; ++a)
      if (labels[a].empty()) labels[a] = std::to_string(a);
  }
  L.labels_ = std::move(labels);
  return L;
}

FiniteLattice lattice_from_pairs(int n, const std::vector<std::pair<Elem, Elem>>& le,
                                 std::vector<std::string> labels) {
  if (n < 1) throw LatticeError(LatticeError::Code::Empty, "nonempty", {}, "lattice needs at least one element");
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (Elem a = 0; a < n; ++a) rel[a][a] = true;
  for (auto [a, b] : le) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw LatticeError(LatticeError::Code::NotAPartialOrder, "range", {a, b},
                         "element out of range in " + pair_text(a, b));
    rel[a][b] = true;
  }
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (rel[i][k])
        for (Elem j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = true;
  return validate_lattice(rel, std::move(labels));
}

Elem FiniteLattice::find(const std::string& name) const {
  for (Elem a = 0; a < n_; ++a)
    if (labels_[a] == name) return a;
  if (!name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    long v = std::strtol(name.c_str(), nullptr, 10);
    if (v < n_) return static_cast<Elem>(v);
  }
  if (name == "top") return top_;
  if (name == "bot") return bot_;
  return -1;
}

FiniteLattice FiniteLattice::reversed() const {
  FiniteLattice R = *this;
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) R.leq_[a * n_ + b] = leq_[b * n_ + a];
  R.meet_ = join_;
  R.join_ = meet_;
  std::swap(R.top_, R.bot_);
  return R;
}

std::vector<std::pair<Elem, Elem>> FiniteLattice::covers() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool cover = true;
      for (Elem c = 0; c < n_ && cover; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

ElemSet FiniteLattice::up_set(Elem a) const {
  ElemSet s(n_);
  for (Elem b = 0; b < n_; ++b)
    if (leq(a, b)) s.insert(b);
  return s;
}

ElemSet FiniteLattice::down_set(Elem a) const {
  ElemSet s(n_);
  for (Elem b = 0; b < n_; ++b)
    if (leq(b, a)) s.insert(b);
  return s;
}

ElemSet FiniteLattice::up_closure(const ElemSet& s) const {
  ElemSet out(n_);
  s.for_each([&](Elem a) { out |= up_set(a); });
  return out;
}

bool FiniteLattice::distributive() const {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b)
      for (Elem c = 0; c < n_; ++c)
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return false;
  return true;
}

FiniteLattice chain(int n) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) rel[a][b] = true;
  return validate_lattice(rel);
}

BooleanAlgebra boolean_algebra(int k) {
  if (k < 0 || k > 16)
    throw LatticeError(LatticeError::Code::TooLarge, "atoms", {k},
                       "atom count must lie in [0,16]");
  const int n = 1 << k;
  if (n > max_carrier())
    throw LatticeError(LatticeError::Code::TooLarge, "carrier", {n},
                       "carrier 2^" + std::to_string(k) + " exceeds bound " +
                           std::to_string(max_carrier()));
  static const char* names[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) rel[a][b] = (a & ~b) == 0;
    if (a == 0) {
      labels[a] = "bot";
    } else if (a == n - 1 && k > 0) {
      labels[a] = "top";
    } else {
      std::string s;
      for (int i = 0; i < k; ++i)
        if (a & (1 << i)) s += (i < 8 ? std::string(names[i]) : "a" + std::to_string(i));
      labels[a] = s;
    }
  }
  if (k == 0) labels[0] = "top";
  BooleanAlgebra B;
  B.atoms = k;
  B.lattice = validate_lattice(rel, labels);
  B.complement.resize(n);
  for (int a = 0; a < n; ++a) B.complement[a] = (n - 1) & ~a;
  return B;
}

namespace {

// Canonical code of a lattice whose bottom is 0 and top is n-1: the minimal
// adjacency string over all relabelings of the middle elements.
std::vector<char> canonical_code(const std::vector<std::vector<bool>>& rel) {
  const int n = static_cast<int>(rel.size());
  const int m = n - 2;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<char> best;
  do {
    std::vector<char> code;
    code.reserve(m * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) code.push_back(rel[perm[i]][perm[j]] ? 1 : 0);
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<FiniteLattice> enumerate_lattices(int n) {
  if (n < 1) return {};
  if (n > 7) throw std::invalid_argument("enumerate_lattices supports n <= 7");
  if (n == 1) return {chain(1)};
  const int m = n - 2;
  std::vector<std::pair<int, int>> slots;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) slots.emplace_back(i, j);

  std::map<std::vector<char>, std::vector<std::vector<bool>>> found;
  const unsigned total = 1u << slots.size();
  for (unsigned mask = 0; mask < total; ++mask) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
      rel[a][a] = true;
      rel[0][a] = true;
      rel[a][n - 1] = true;
    }
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask & (1u << s)) rel[slots[s].first][slots[s].second] = true;
    bool transitive = true;
    for (int a = 0; a < n && transitive; ++a)
      for (int b = 0; b < n && transitive; ++b)
        if (rel[a][b])
          for (int c = 0; c < n; ++c)
            if (rel[b][c] && !rel[a][c]) {
              transitive = false;
              break;
            }
    if (!transitive) continue;
    try {
      validate_lattice(rel);
    } catch (const LatticeError&) {
      continue;
    }
    auto code = canonical_code(rel);
    found.try_emplace(std::move(code), rel);
  }
  std::vector<FiniteLattice> out;
  for (auto& [code, rel] : found) out.push_back(validate_lattice(rel));
  return out;
}

std::vector<FiniteLattice> enumerate_lattices_up_to(int n) {
  std::vector<FiniteLattice> out;
  for (int k = 1; k <= n; ++k) {
    auto v = enumerate_lattices(k);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace realg
