#include "grouptest/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace grouptest {

namespace {

std::vector<int> relabel_identity_to_zero(const std::vector<int>& mul, int n, int identity) {
  if (identity == 0) return mul;
  // Swap labels 0 <-> identity.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  perm[0] = identity;
  perm[identity] = 0;
  std::vector<int> out(std::size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      out[std::size_t(perm[x]) * n + perm[y]] = perm[mul[std::size_t(x) * n + y]];
  return out;
}

}  // namespace

GroupPtr FiniteGroup::build(std::vector<int> mul, int n, std::string name) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->mul_ = std::move(mul);
  g->name_ = std::move(name);

  // Identity must exist before inverses make sense.
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = g->mul(e, x) == x && g->mul(x, e) == x;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw NotAGroup("table has no two-sided identity element");
  if (identity != 0) {
    g->mul_ = relabel_identity_to_zero(g->mul_, n, identity);
  }

  g->inv_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (g->mul(x, y) == 0 && g->mul(y, x) == 0) {
        g->inv_[x] = y;
        break;
      }
    }
    if (g->inv_[x] < 0)
      throw NotAGroup("element " + std::to_string(x) + " has no two-sided inverse");
  }

  g->validate();
  g->compute_classes();
  return g;
}

void FiniteGroup::validate() const {
  const int n = n_;
  auto check = [&](int x, int y, int z) {
    if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
      std::ostringstream msg;
      msg << "associativity fails at triple (" << x << ", " << y << ", " << z << ")";
      throw NotAGroup(msg.str());
    }
  };
  if (n <= 512) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) check(x, y, z);
  } else {
    // Randomized spot check: >= 10 n^2 triples with a fixed seed keeps
    // construction deterministic.
    Rng rng(0x61737331ULL ^ std::uint64_t(n));
    const std::int64_t trials = std::int64_t(10) * n * n;
    for (std::int64_t t = 0; t < trials; ++t) {
      const int x = int(rng.below(std::uint64_t(n)));
      const int y = int(rng.below(std::uint64_t(n)));
      const int z = int(rng.below(std::uint64_t(n)));
      check(x, y, z);
    }
  }
}

void FiniteGroup::compute_classes() {
  const int n = n_;
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<int> members;
    for (int z = 0; z < n; ++z) {
      const int y = conjugate(z, x);
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.front() < b.front();
  });
  classes_ = std::move(classes);
  class_of_.assign(n, -1);
  for (int c = 0; c < int(classes_.size()); ++c)
    for (int x : classes_[c]) class_of_[x] = c;
}

std::int64_t FiniteGroup::conjugation_fiber_size(int x, int y) const {
  std::int64_t count = 0;
  for (int z = 0; z < n_; ++z)
    if (conjugate(z, x) == y) ++count;
  return count;
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
  return n_ == other.n_ && mul_ == other.mul_;
}

GroupPtr FiniteGroup::from_cayley_table(const std::vector<std::vector<int>>& table) {
  const int n = int(table.size());
  if (n == 0) throw NotAGroup("empty table");
  std::vector<int> mul(std::size_t(n) * n);
  for (int x = 0; x < n; ++x) {
    if (int(table[x].size()) != n)
      throw NotAGroup("row " + std::to_string(x) + " has " + std::to_string(table[x].size()) +
                      " entries, expected " + std::to_string(n));
    for (int y = 0; y < n; ++y) {
      const int v = table[x][y];
      if (v < 0 || v >= n)
        throw NotAGroup("entry (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") = " + std::to_string(v) + " out of range");
      mul[std::size_t(x) * n + y] = v;
    }
  }
  return build(std::move(mul), n, "custom");
}

namespace {

void check_cap(long long order, int cap, const std::string& what) {
  if (order > cap)
    throw OrderCapExceeded(what + " has order " + std::to_string(order) +
                           " above the cap " + std::to_string(cap));
}

}  // namespace

GroupPtr FiniteGroup::cyclic(int n, int cap) {
  if (n < 1) throw ConfigError("cyclic(n) needs n >= 1");
  check_cap(n, cap, "cyclic(" + std::to_string(n) + ")");
  std::vector<int> mul(std::size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) mul[std::size_t(x) * n + y] = (x + y) % n;
  return build(std::move(mul), n, "cyclic:" + std::to_string(n));
}

GroupPtr FiniteGroup::boolean_cube(int n, int cap) {
  if (n < 0 || n > 20) throw ConfigError("boolean_cube(n) needs 0 <= n <= 20");
  const long long order = 1LL << n;
  check_cap(order, cap, "boolean_cube(" + std::to_string(n) + ")");
  const int m = int(order);
  std::vector<int> mul(std::size_t(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) mul[std::size_t(x) * m + y] = x ^ y;
  return build(std::move(mul), m, "boolean_cube:" + std::to_string(n));
}

GroupPtr FiniteGroup::dihedral(int n, int cap) {
  if (n < 1) throw ConfigError("dihedral(n) needs n >= 1");
  const long long order = 2LL * n;
  check_cap(order, cap, "dihedral(" + std::to_string(n) + ")");
  const int m = int(order);
  // Index k < n is the rotation r^k, index n + k the reflection s r^k,
  // with relations r^n = s^2 = 1 and s r s = r^{-1}.
  auto compose = [n](int a, int b) {
    const bool fa = a >= n, fb = b >= n;
    const int ka = fa ? a - n : a, kb = fb ? b - n : b;
    if (!fa && !fb) return (ka + kb) % n;
    if (!fa && fb) return n + (kb - ka % n + n) % n;   // r^ka s r^kb = s r^{kb-ka}
    if (fa && !fb) return n + (ka + kb) % n;            // s r^ka r^kb
    return (kb - ka % n + n) % n;                       // s r^ka s r^kb = r^{kb-ka}
  };
  std::vector<int> mul(std::size_t(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) mul[std::size_t(x) * m + y] = compose(x, y);
  return build(std::move(mul), m, "dihedral:" + std::to_string(n));
}

GroupPtr FiniteGroup::symmetric(int n, int cap) {
  if (n < 1 || n > 8) throw ConfigError("symmetric(n) needs 1 <= n <= 8");
  long long order = 1;
  for (int i = 2; i <= n; ++i) order *= i;
  check_cap(order, cap, "symmetric(" + std::to_string(n) + ")");
  // Permutations in lexicographic one-line order; identity comes first.
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int m = int(perms.size());
  auto rank = [&](const std::vector<int>& q) {
    const auto it = std::lower_bound(perms.begin(), perms.end(), q);
    return int(it - perms.begin());
  };
  std::vector<int> mul(std::size_t(m) * m);
  std::vector<int> comp(n);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      // (x . y)(i) = x(y(i)): apply y first, then x.
      for (int i = 0; i < n; ++i) comp[i] = perms[x][perms[y][i]];
      mul[std::size_t(x) * m + y] = rank(comp);
    }
  }
  return build(std::move(mul), m, "symmetric:" + std::to_string(n));
}

GroupPtr FiniteGroup::quaternion(int cap) {
  check_cap(8, cap, "quaternion");
  // Elements [1,-1,i,-i,j,-j,k,-k]: index = 2*unit + sign with units 1,i,j,k.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{+1, +1, +1, +1},
                                     {+1, -1, +1, -1},
                                     {+1, -1, -1, +1},
                                     {+1, +1, -1, -1}};
  std::vector<int> mul(64);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, sa = a % 2, ub = b / 2, sb = b % 2;
      const int u = unit_mul[ua][ub];
      int s = (sa + sb) % 2;
      if (sign_mul[ua][ub] < 0) s ^= 1;
      mul[std::size_t(a) * 8 + b] = 2 * u + s;
    }
  }
  return build(std::move(mul), 8, "quaternion");
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b, int cap) {
  const long long order = (long long)a->order() * b->order();
  check_cap(order, cap, "product");
  const int nb = b->order(), m = int(order);
  std::vector<int> mul(std::size_t(m) * m);
  for (int x = 0; x < m; ++x) {
    const int xa = x / nb, xb = x % nb;
    for (int y = 0; y < m; ++y) {
      const int ya = y / nb, yb = y % nb;
      mul[std::size_t(x) * m + y] = a->mul(xa, ya) * nb + b->mul(xb, yb);
    }
  }
  return build(std::move(mul), m, "product(" + a->name() + "," + b->name() + ")");
}

namespace {

// Recursive-descent parser over the colon/comma token stream of a builtin
// spec.  Every family has fixed arity, so nesting is unambiguous.
struct SpecParser {
  const std::string& s;
  std::size_t pos = 0;
  int cap;

  std::string token() {
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] != ':' && s[pos] != ',') ++pos;
    return s.substr(start, pos - start);
  }
  void expect(char c) {
    if (pos >= s.size() || s[pos] != c)
      throw ParseError("group spec '" + s + "': expected '" + std::string(1, c) +
                       "' at position " + std::to_string(pos));
    ++pos;
  }
  int integer() {
    const std::string t = token();
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw ParseError("group spec '" + s + "': bad integer '" + t + "'");
    }
  }

  GroupPtr parse() {
    const std::string head = token();
    if (head != "builtin") throw ParseError("group spec must start with 'builtin:'");
    expect(':');
    return family();
  }

  GroupPtr family() {
    const std::string fam = token();
    if (fam == "quaternion") return FiniteGroup::quaternion(cap);
    if (fam == "product") {
      expect(':');
      GroupPtr a = parse();
      expect(',');
      GroupPtr b = parse();
      return FiniteGroup::direct_product(a, b, cap);
    }
    expect(':');
    const int n = integer();
    if (fam == "cyclic") return FiniteGroup::cyclic(n, cap);
    if (fam == "boolean_cube") return FiniteGroup::boolean_cube(n, cap);
    if (fam == "dihedral") return FiniteGroup::dihedral(n, cap);
    if (fam == "symmetric") return FiniteGroup::symmetric(n, cap);
    throw ParseError("unknown builtin family '" + fam + "'");
  }
};

}  // namespace

GroupPtr FiniteGroup::from_spec(const std::string& spec, int cap) {
  SpecParser p{spec, 0, cap};
  GroupPtr g = p.parse();
  if (p.pos != spec.size())
    throw ParseError("group spec '" + spec + "': trailing characters at position " +
                     std::to_string(p.pos));
  return g;
}

}  // namespace grouptest
