#pragma once

#include <string>
#include <vector>

namespace rinv {

/// Sorted, duplicate-free set of column indices.
using IndexSet = std::vector<int>;

/// Sorts and validates `ids` against the universe [0, universe). Throws
/// BadParams on duplicates or out-of-range entries.
IndexSet make_index_set(std::vector<int> ids, int universe);

IndexSet iota_set(int count);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet complement(const IndexSet& a, int universe);
bool is_subset(const IndexSet& a, const IndexSet& b);
bool contains(const IndexSet& a, int id);

std::string to_string(const IndexSet& s);

}  // namespace rinv
