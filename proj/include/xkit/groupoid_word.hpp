#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "xkit/enumerate.hpp"
#include "xkit/groupoid.hpp"

namespace xkit {

// Word problem in a presented groupoid whose relations split into blocks with finite
// vertex groups. Edges sharing a relation form a block; the groupoid is the free product
// of its blocks over the object set, so a path is trivial exactly when deleting trivial
// single-block syllables empties it. Throws unbounded when a block group does not close.
class GroupoidWordSolver {
 public:
  GroupoidWordSolver(GroupoidPresentation p, std::size_t bound);

  bool is_identity(const EdgePath& path) const;
  bool equal(const EdgePath& a, const EdgePath& b) const;
  const GroupoidPresentation& presentation() const { return presentation_; }

 private:
  struct BlockGroup {
    VertexGroup vertex;
    EnumeratedGroup group;
  };
  bool syllable_trivial(int block, const EdgePath& syllable) const;
  const BlockGroup& block_group(int block, int object) const;

  GroupoidPresentation presentation_;
  std::size_t bound_;
  std::vector<int> block_of_edge_;       // -1 for edges in no relation
  std::vector<GroupoidPresentation> blocks_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<BlockGroup>> cache_;  // (block, component) -> group
  std::vector<std::vector<int>> block_components_;
};

}  // namespace xkit
