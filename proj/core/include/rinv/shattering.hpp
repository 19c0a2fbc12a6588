#pragma once

#include <cstdint>
#include <vector>

#include "rinv/index_set.hpp"

namespace rinv {

inline constexpr int kDefaultSauerCap = 24;

/// Family of sign vectors in {-1,+1}^dim. Member bit i set means coordinate
/// i is +1. Members are kept sorted and distinct.
class SignSet {
 public:
  explicit SignSet(int dim, std::vector<std::uint32_t> members = {});

  int dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::uint32_t>& members() const { return members_; }

  /// True iff every pattern in {-1,+1}^sigma is the restriction of a member.
  bool shatters(const IndexSet& sigma) const;

 private:
  int dim_;
  std::vector<std::uint32_t> members_;
};

/// Number of subsets of [dim] with fewer than `target` elements.
std::uint64_t count_small_subsets(int dim, int target);

/// Sets shattered by omega, found by the Pajor recursion (split on the last
/// coordinate, recurse on both halves, lift sets shattered by both). The
/// result is a subfamily of sh(omega) with at least |omega| members, each
/// encoded as a coordinate bitmask.
std::vector<std::uint32_t> shattered_family(const SignSet& omega);

/// A largest set in shattered_family(omega); ties go to the
/// lexicographically smallest index set. Throws NotEnoughVectors when
/// |omega| <= count_small_subsets(dim, target) and DimTooLarge when
/// dim > sauer_cap.
IndexSet sauer_shelah_extract(const SignSet& omega, int target, int sauer_cap = kDefaultSauerCap);

}  // namespace rinv
