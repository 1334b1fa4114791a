#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ramsey/graph.h"

namespace ramsey {

// Whether the edges of color c in p contain a (not necessarily induced)
// copy of a. Clique targets use a common-neighbourhood search.
bool contains_mono(const ColoredPosition& p, Color c, const Graph& a);

// Whether coloring the uncolored edge with c would create a copy of a in
// color c. Only copies through the new edge are examined.
bool move_completes(const ColoredPosition& p, int edge, Color c, const Graph& a);

struct ArrowOptions {
  int max_uncolored = 24;
};

// True iff every red/green completion of the uncolored edges contains a
// monochromatic copy of a.
bool arrows(const ColoredPosition& p, const Graph& a, const ArrowOptions& opt = {});

// Calls fn with the sorted host edge indices of each distinct copy of
// pattern in host, restricted to host edges where allowed[e] is true.
// Stops early when fn returns false. Throws BudgetExceeded past
// max_embeddings labeled embeddings.
void for_each_copy(const Graph& host, const std::vector<bool>& allowed, const Graph& pattern,
                   const std::function<bool(const std::vector<int>&)>& fn,
                   uint64_t max_embeddings = 50'000'000);

}  // namespace ramsey
