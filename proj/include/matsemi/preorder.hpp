#pragma once

#include <functional>
#include <vector>

#include "partition.hpp"

namespace matsemi {

  //! Depth of every element in the partial order induced on classes of the
  //! preorder `below(a, b)` (read: a is below b).  Maximal classes have depth
  //! 0; otherwise depth is one more than the deepest strictly greater class,
  //! i.e. the length of the longest chain down from a maximal class.
  inline std::vector<int> preorder_depths(std::size_t                      m,
                                          std::function<bool(Id, Id)> const& below) {
    std::vector<std::vector<bool>> rel(m, std::vector<bool>(m));
    for (Id a = 0; a < m; ++a) {
      for (Id b = 0; b < m; ++b) {
        rel[a][b] = below(a, b);
      }
    }
    std::vector<int> depth(m, -1);
    std::function<int(Id)> visit = [&](Id a) -> int {
      if (depth[a] >= 0) {
        return depth[a];
      }
      int d = 0;
      for (Id b = 0; b < m; ++b) {
        if (rel[a][b] && !rel[b][a]) {
          d = std::max(d, visit(b) + 1);
        }
      }
      return depth[a] = d;
    };
    for (Id a = 0; a < m; ++a) {
      visit(a);
    }
    return depth;
  }

}  // namespace matsemi
