#include "xkit/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "xkit/error.hpp"

namespace xkit {

FiniteGroup::FiniteGroup(int order, std::vector<int> table, std::vector<std::string> labels)
    : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
  const auto n = static_cast<std::size_t>(order_);
  if (order_ < 1 || table_.size() != n * n) fail(Errc::precondition_failed, "group table has wrong size");
  for (int v : table_)
    if (v < 0 || v >= order_) fail(Errc::precondition_failed, "group table entry out of range");
  for (int a = 0; a < order_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) fail(Errc::precondition_failed, "element 0 is not the identity");
  inverse_.assign(n, -1);
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) == 0 && mul(b, a) == 0) inverse_[a] = b;
  for (int a = 0; a < order_; ++a)
    if (inverse_[a] < 0) fail(Errc::precondition_failed, "element without two-sided inverse");
  if (labels_.empty())
    for (int a = 0; a < order_; ++a) labels_.push_back(std::to_string(a));
}

int FiniteGroup::pow(int a, long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  int r = 0;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return FiniteGroup(n, std::move(t));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  // index f*n + k stands for r^k s^f
  const int order = 2 * n;
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      int k1 = x % n, f1 = x / n, k2 = y % n, f2 = y / n;
      int k = ((k1 + (f1 ? -k2 : k2)) % n + n) % n;
      t[x * order + y] = (f1 ^ f2) * n + k;
    }
  return FiniteGroup(order, std::move(t));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> swap(n), cycle(n);
    for (int i = 0; i < n; ++i) {
      swap[i] = i;
      cycle[i] = (i + 1) % n;
    }
    std::swap(swap[0], swap[1]);
    gens = {swap, cycle};
  }
  return from_permutations(std::max(n, 1), gens);
}

FiniteGroup FiniteGroup::alternating(int n) {
  std::vector<std::vector<int>> gens;
  for (int k = 2; k < n; ++k) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return from_permutations(std::max(n, 1), gens);
}

FiniteGroup FiniteGroup::quaternion() {
  // index 2*unit + negative, units 1,i,j,k
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<int> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int u = unit_mul[x / 2][y / 2];
      int s = sign_mul[x / 2][y / 2] * (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1);
      t[x * 8 + y] = 2 * u + (s < 0);
    }
  return FiniteGroup(8, std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

FiniteGroup FiniteGroup::klein_four() { return direct_product(cyclic(2), cyclic(2)); }

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int n = a.order() * b.order();
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[x * n + y] = a.mul(x / b.order(), y / b.order()) * b.order() + b.mul(x % b.order(), y % b.order());
  return FiniteGroup(n, std::move(t));
}

FiniteGroup FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                           std::vector<std::vector<int>>* elements) {
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  for (const auto& g : gens)
    if (static_cast<int>(g.size()) != degree) fail(Errc::precondition_failed, "permutation of wrong degree");
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(degree);
    for (int i = 0; i < degree; ++i) r[i] = q[p[i]];
    return r;
  };
  std::map<std::vector<int>, int> index{{id, 0}};
  std::vector<std::vector<int>> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      auto next = compose(elems[i], g);
      if (index.emplace(next, static_cast<int>(elems.size())).second) elems.push_back(next);
    }
  const int n = static_cast<int>(elems.size());
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x * n + y] = index.at(compose(elems[x], elems[y]));
  if (elements) *elements = elems;
  return FiniteGroup(n, std::move(t));
}

bool satisfies_group_axioms(const FiniteGroup& g) {
  const int n = g.order();
  for (int a = 0; a < n; ++a) {
    if (g.mul(a, 0) != a || g.mul(0, a) != a) return false;
    if (g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0) return false;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
  }
  return true;
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s : gens) {
      int y = g.mul(out[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGroup subgroup_table(const FiniteGroup& g, const std::vector<int>& elements) {
  const int n = static_cast<int>(elements.size());
  if (n == 0 || elements[0] != 0) fail(Errc::precondition_failed, "subgroup list must start with the identity");
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < n; ++i) pos[elements[i]] = i;
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int p = pos[g.mul(elements[x], elements[y])];
      if (p < 0) fail(Errc::precondition_failed, "element list is not closed under multiplication");
      t[x * n + y] = p;
    }
  return FiniteGroup(n, std::move(t));
}

bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
  std::vector<char> in(g.order(), 0);
  for (int e : elements) in[e] = 1;
  for (int h : elements)
    for (int x = 0; x < g.order(); ++x)
      if (!in[g.conj(h, x)]) return false;
  return true;
}

std::vector<int> generating_set(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<int> span{0};
  // prefer elements of large order so the set stays small
  std::vector<int> candidates(g.order());
  for (int i = 0; i < g.order(); ++i) candidates[i] = i;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](int a, int b) { return g.element_order(a) > g.element_order(b); });
  for (int c : candidates) {
    if (static_cast<int>(span.size()) == g.order()) break;
    if (std::binary_search(span.begin(), span.end(), c)) continue;
    gens.push_back(c);
    span = generated_subgroup(g, gens);
  }
  return gens;
}

std::vector<int> element_order_profile(const FiniteGroup& g) {
  std::vector<int> out;
  for (int a = 0; a < g.order(); ++a) out.push_back(g.element_order(a));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != src.order()) return false;
  for (int a = 0; a < src.order(); ++a)
    for (int b = 0; b < src.order(); ++b)
      if (map[src.mul(a, b)] != dst.mul(map[a], map[b])) return false;
  return true;
}

namespace {

// Extends generator images to a homomorphism, or returns nullopt on conflict.
std::optional<std::vector<int>> extend(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens,
                                       const std::vector<int>& images) {
  std::vector<int> map(a.order(), -1);
  map[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int y = a.mul(x, gens[k]);
      int img = b.mul(map[x], images[k]);
      if (map[y] < 0) {
        map[y] = img;
        queue.push_back(y);
      } else if (map[y] != img) {
        return std::nullopt;
      }
    }
  }
  return map;
}

void search_homs(const FiniteGroup& a, const FiniteGroup& b, bool bijective_only,
                 const std::function<bool(const std::vector<int>&)>& visit) {
  const auto gens = generating_set(a);
  std::vector<int> images(gens.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      auto map = extend(a, b, gens, images);
      if (!map) return true;
      if (bijective_only) {
        std::vector<char> hit(b.order(), 0);
        for (int v : *map) hit[v] = 1;
        if (std::count(hit.begin(), hit.end(), 1) != b.order()) return true;
      }
      return visit(*map);
    }
    for (int y = 0; y < b.order(); ++y) {
      if (bijective_only && b.element_order(y) != a.element_order(gens[k])) continue;
      images[k] = y;
      if (!rec(k + 1)) return false;
    }
    return true;
  };
  rec(0);
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (element_order_profile(a) != element_order_profile(b)) return std::nullopt;
  std::optional<std::vector<int>> found;
  search_homs(a, b, true, [&](const std::vector<int>& m) {
    found = m;
    return false;
  });
  return found;
}

FiniteGroup automorphism_group(const FiniteGroup& g, std::vector<std::vector<int>>* automorphisms) {
  std::vector<std::vector<int>> auts;
  search_homs(g, g, true, [&](const std::vector<int>& m) {
    auts.push_back(m);
    return true;
  });
  std::vector<int> id(g.order());
  for (int i = 0; i < g.order(); ++i) id[i] = i;
  auto it = std::find(auts.begin(), auts.end(), id);
  std::iter_swap(auts.begin(), it);
  std::sort(auts.begin() + 1, auts.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < auts.size(); ++i) index[auts[i]] = static_cast<int>(i);
  const int n = static_cast<int>(auts.size());
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::vector<int> c(g.order());
      for (int m = 0; m < g.order(); ++m) c[m] = auts[y][auts[x][m]];
      t[x * n + y] = index.at(c);
    }
  if (automorphisms) *automorphisms = auts;
  return FiniteGroup(n, std::move(t));
}

}  // namespace xkit
