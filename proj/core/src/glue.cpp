#include "glue.hpp"

namespace freeplanar::detail {

std::optional<GlueOut> glue(const Matching& ma, const std::string& colorsA, const Matching& mb,
                            const std::string& colorsB,
                            const std::vector<std::pair<int, int>>& links,
                            const std::vector<int>& keep) {
  int na = static_cast<int>(ma.size());
  int nb = static_cast<int>(mb.size());
  for (const auto& [a, b] : links)
    if (colorsA[a] != colorsB[b]) return std::nullopt;

  // Global ids: A points 0..na-1, B points na..na+nb-1.
  std::vector<int> link(na + nb, -1);
  for (const auto& [a, b] : links) {
    link[a] = na + b;
    link[na + b] = a;
  }
  auto partner = [&](int p) { return p < na ? ma[p] : na + mb[p - na]; };

  std::vector<int> out_index(na + nb, -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) out_index[keep[i]] = i;

  GlueOut out;
  out.match.assign(keep.size(), -1);
  std::vector<bool> seen(na + nb, false);
  for (int p = 0; p < na + nb; ++p) {
    if (out_index[p] < 0 || seen[p]) continue;
    seen[p] = true;
    int q = partner(p);
    while (out_index[q] < 0) {
      seen[q] = true;
      q = link[q];
      seen[q] = true;
      q = partner(q);
    }
    seen[q] = true;
    out.match[out_index[p]] = out_index[q];
    out.match[out_index[q]] = out_index[p];
  }
  for (int p = 0; p < na + nb; ++p) {
    if (seen[p] || link[p] < 0) continue;
    char color = p < na ? colorsA[p] : colorsB[p - na];
    int q = p;
    do {
      seen[q] = true;
      q = partner(q);
      seen[q] = true;
      q = link[q];
    } while (q != p);
    out.loops[color] += 1;
  }
  return out;
}

} // namespace freeplanar::detail
