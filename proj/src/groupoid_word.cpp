#include "xkit/groupoid_word.hpp"

#include <numeric>

#include "xkit/error.hpp"

namespace xkit {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

GroupoidWordSolver::GroupoidWordSolver(GroupoidPresentation p, std::size_t bound)
    : presentation_(std::move(p)), bound_(bound) {
  const auto& g = presentation_.graph;
  const int n = static_cast<int>(g.edges.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> related(n, 0);
  for (const auto& r : presentation_.relations) {
    int first = -1;
    for (const auto* side : {&r.lhs, &r.rhs})
      for (const Letter& l : side->letters) {
        related[l.gen] = 1;
        if (first < 0) first = l.gen;
        parent[find_root(parent, l.gen)] = find_root(parent, first);
      }
  }
  block_of_edge_.assign(n, -1);
  std::map<int, int> block_index;
  for (int e = 0; e < n; ++e) {
    if (!related[e]) continue;
    int root = find_root(parent, e);
    auto [it, fresh] = block_index.emplace(root, static_cast<int>(blocks_.size()));
    if (fresh) blocks_.emplace_back();
    block_of_edge_[e] = it->second;
  }
  // each block keeps the full object set and the full edge list; only its own edges matter
  for (auto& b : blocks_) b.graph = g;
  for (const auto& r : presentation_.relations) {
    const Letter* any = !r.lhs.letters.empty() ? &r.lhs.letters.front()
                        : !r.rhs.letters.empty() ? &r.rhs.letters.front() : nullptr;
    if (any) blocks_[block_of_edge_[any->gen]].relations.push_back(r);
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    DirectedGraph sub;
    sub.objects = g.objects;
    for (int e = 0; e < n; ++e)
      if (block_of_edge_[e] == static_cast<int>(b)) sub.edges.push_back(g.edges[e]);
    block_components_.push_back(components(sub));
  }
}

const GroupoidWordSolver::BlockGroup& GroupoidWordSolver::block_group(int block, int object) const {
  int comp = block_components_[block][object];
  auto key = std::make_pair(block, comp);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;
  const auto& p = blocks_[block];
  const auto& g = p.graph;
  // spanning tree of the block's component, other edges excluded
  std::vector<int> order;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (block_of_edge_[e] == block) order.push_back(static_cast<int>(e));
  auto tree_all = maximal_tree(g, order);
  std::vector<int> tree;
  for (int e : tree_all)
    if (block_of_edge_[e] == block && block_components_[block][g.edges[e].source] == comp) tree.push_back(e);
  // vertex group over the block's own edges only
  GroupoidPresentation own;
  own.graph.objects = g.objects;
  std::vector<int> new_index(g.edges.size(), -1);
  for (int e : order) {
    new_index[e] = static_cast<int>(own.graph.edges.size());
    own.graph.edges.push_back(g.edges[e]);
  }
  auto remap = [&](const EdgePath& path) {
    EdgePath out{path.start, {}};
    for (const Letter& l : path.letters) out.letters.push_back({new_index[l.gen], l.sign});
    return out;
  };
  for (const auto& r : p.relations) own.relations.push_back({remap(r.lhs), remap(r.rhs)});
  std::vector<int> own_tree;
  for (int e : tree) own_tree.push_back(new_index[e]);
  auto bg = std::make_shared<BlockGroup>();
  bg->vertex = vertex_group_data(own, object, own_tree);
  // loop_word expects indices of the full graph
  std::vector<int> full_generator(g.edges.size(), -1);
  for (int e : order) full_generator[e] = bg->vertex.edge_generator[new_index[e]];
  bg->vertex.edge_generator = full_generator;
  bg->group = enumerate_fp_group(bg->vertex.presentation, bound_);
  return *cache_.emplace(key, std::move(bg)).first->second;
}

bool GroupoidWordSolver::syllable_trivial(int block, const EdgePath& syllable) const {
  const auto& g = presentation_.graph;
  if (path_end(syllable, g) != syllable.start) return false;
  if (syllable.letters.empty()) return true;
  if (block < 0) return false;  // freely reduced and nonempty
  const auto& bg = block_group(block, syllable.start);
  return bg.group.evaluate(bg.vertex.loop_word(syllable)) == 0;
}

bool GroupoidWordSolver::is_identity(const EdgePath& path) const {
  const auto& g = presentation_.graph;
  check_composable(path, g);
  std::vector<Letter> letters = free_reduce(path.letters);
  for (bool changed = true; changed && !letters.empty();) {
    changed = false;
    std::vector<Letter> kept;
    int at = path.start;
    for (std::size_t i = 0; i < letters.size();) {
      int block = block_of_edge_[letters[i].gen];
      std::size_t j = i + 1;
      if (block >= 0)
        while (j < letters.size() && block_of_edge_[letters[j].gen] == block) ++j;
      else
        while (j < letters.size() && letters[j].gen == letters[i].gen) ++j;
      EdgePath syllable{at, std::vector<Letter>(letters.begin() + static_cast<long>(i),
                                                letters.begin() + static_cast<long>(j))};
      if (syllable_trivial(block, syllable)) {
        changed = true;
      } else {
        kept.insert(kept.end(), syllable.letters.begin(), syllable.letters.end());
      }
      at = path_end(syllable, g);
      i = j;
    }
    letters = free_reduce(std::move(kept));
  }
  return letters.empty();
}

bool GroupoidWordSolver::equal(const EdgePath& a, const EdgePath& b) const {
  if (a.start != b.start || path_end(a, presentation_.graph) != path_end(b, presentation_.graph)) return false;
  return is_identity(concat(a, inverse(b, presentation_.graph), presentation_.graph));
}

}  // namespace xkit
