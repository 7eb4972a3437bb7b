#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freeplanar/diagram.hpp"

namespace freeplanar::detail {

struct GlueOut {
  Matching match;
  std::map<char, int> loops;
};

// Joins two involutions along link pairs (a index, b index). Kept points are
// listed as global ids (A point i -> i, B point j -> |A| + j) in result order.
// Returns nothing when some link joins two different colors.
std::optional<GlueOut> glue(const Matching& ma, const std::string& colorsA, const Matching& mb,
                            const std::string& colorsB,
                            const std::vector<std::pair<int, int>>& links,
                            const std::vector<int>& keep);

} // namespace freeplanar::detail
