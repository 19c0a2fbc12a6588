#include "rinv/index_set.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>

#include "rinv/error.hpp"

namespace rinv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::NotFullColumnRank: return "NotFullColumnRank";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotAProjector: return "NotAProjector";
    case ErrorCode::NotEnoughVectors: return "NotEnoughVectors";
    case ErrorCode::DimTooLarge: return "DimTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::IdentityMismatch: return "IdentityMismatch";
    case ErrorCode::NotRealRooted: return "NotRealRooted";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
    case ErrorCode::TooManySubsets: return "TooManySubsets";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

IndexSet make_index_set(std::vector<int> ids, int universe) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    fail(ErrorCode::BadParams, "index set contains duplicates");
  }
  if (!ids.empty() && (ids.front() < 0 || ids.back() >= universe)) {
    fail(ErrorCode::BadParams, "index out of range [0, " + std::to_string(universe) + ")");
  }
  return ids;
}

IndexSet iota_set(int count) {
  IndexSet s(static_cast<std::size_t>(std::max(count, 0)));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet complement(const IndexSet& a, int universe) {
  return set_difference(iota_set(universe), a);
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains(const IndexSet& a, int id) {
  return std::binary_search(a.begin(), a.end(), id);
}

std::string to_string(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace rinv
