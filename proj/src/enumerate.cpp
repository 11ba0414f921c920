#include "xkit/enumerate.hpp"

#include <cstdlib>
#include <deque>
#include <string>

#include "xkit/error.hpp"

namespace xkit {

std::size_t default_bound() {
  if (const char* env = std::getenv("XKIT_BOUND")) {
    try {
      long long v = std::stoll(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultBound;
}

int EnumeratedGroup::evaluate(const std::vector<Letter>& letters) const {
  int r = 0;
  for (const Letter& l : letters) {
    int g = gen_images_.at(l.gen);
    r = group_.mul(r, l.sign > 0 ? g : group_.inv(g));
  }
  return r;
}

namespace {

// Coset table over the trivial subgroup. Column 2g is generator g, 2g+1 its inverse.
class CayleyBuilder {
 public:
  CayleyBuilder(const GroupPresentation& p, std::size_t bound) : ngen_(p.generators.size()), bound_(bound) {
    for (const auto& r : p.relators) {
      if (r.is_identity()) continue;
      std::vector<int> cols;
      for (const Letter& l : r.letters()) cols.push_back(col(l));
      relators_.push_back(std::move(cols));
    }
    cap_ = bound_ * 16 + 256;
    new_coset();
  }

  void run() {
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan_and_fill(static_cast<int>(c), r);
      }
      if (!live(c)) continue;
      for (std::size_t x = 0; x < 2 * ngen_; ++x)
        if (entry(static_cast<int>(c), static_cast<int>(x)) < 0) define(static_cast<int>(c), static_cast<int>(x));
    }
  }

  EnumeratedGroup finish(const GroupPresentation& p) {
    // renumber live cosets breadth first so normal forms are shortlex-minimal paths
    std::vector<int> order_of(parent_.size(), -1);
    std::vector<int> elems{0};
    std::vector<FreeWord> words{FreeWord()};
    order_of[0] = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t x = 0; x < 2 * ngen_; ++x) {
        int y = entry(elems[i], static_cast<int>(x));
        if (order_of[y] < 0) {
          order_of[y] = static_cast<int>(elems.size());
          elems.push_back(y);
          words.push_back(words[i] * FreeWord::generator(static_cast<int>(x / 2), x % 2 ? -1 : 1));
        }
      }
    const int n = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int c = elems[a];
        for (const Letter& l : words[b].letters()) c = entry(c, col(l));
        table[static_cast<std::size_t>(a) * n + b] = order_of[c];
      }
    std::vector<int> gens;
    for (std::size_t g = 0; g < ngen_; ++g) gens.push_back(order_of[entry(0, static_cast<int>(2 * g))]);
    std::vector<std::string> labels;
    for (const auto& w : words) labels.push_back(p.render(w));
    return EnumeratedGroup(FiniteGroup(n, std::move(table), std::move(labels)), std::move(words), std::move(gens));
  }

 private:
  static int col(const Letter& l) { return 2 * l.gen + (l.sign < 0 ? 1 : 0); }
  static int inv_col(int x) { return x ^ 1; }

  int& entry(int c, int x) { return table_[static_cast<std::size_t>(c) * 2 * ngen_ + x]; }
  bool live(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  int new_coset() {
    if (parent_.size() >= cap_) fail(Errc::unbounded, "coset table exceeded allocation cap");
    int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + 2 * ngen_, -1);
    if (++live_count_ > bound_)
      fail(Errc::unbounded, "closure exceeded bound " + std::to_string(bound_) + " (group possibly infinite)");
    return c;
  }

  void define(int c, int x) {
    int d = new_coset();
    entry(c, x) = d;
    entry(d, inv_col(x)) = c;
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, w[i]) >= 0) f = entry(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, inv_col(w[j])) >= 0) b = entry(b, inv_col(w[j--]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        entry(f, w[i]) = b;
        entry(b, inv_col(w[i])) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int k, int l, std::deque<int>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    --live_count_;
    queue.push_back(l);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      int e = queue.front();
      queue.pop_front();
      for (int x = 0; x < static_cast<int>(2 * ngen_); ++x) {
        int f = entry(e, x);
        if (f < 0) continue;
        entry(f, inv_col(x)) = -1;
        int e1 = rep(e), f1 = rep(f);
        if (entry(e1, x) >= 0) {
          merge(f1, entry(e1, x), queue);
        } else if (entry(f1, inv_col(x)) >= 0) {
          merge(e1, entry(f1, inv_col(x)), queue);
        } else {
          entry(e1, x) = f1;
          entry(f1, inv_col(x)) = e1;
        }
      }
    }
  }

  std::size_t ngen_;
  std::size_t bound_;
  std::size_t cap_;
  std::size_t live_count_ = 0;
  std::vector<std::vector<int>> relators_;
  std::vector<int> parent_;
  std::vector<int> table_;
};

}  // namespace

EnumeratedGroup enumerate_fp_group(const GroupPresentation& p, std::size_t bound) {
  if (bound < 1) fail(Errc::precondition_failed, "bound must be at least 1");
  CayleyBuilder builder(p, bound);
  builder.run();
  return builder.finish(p);
}

}  // namespace xkit
