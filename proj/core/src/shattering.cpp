#include "rinv/shattering.hpp"

#include <algorithm>
#include <bit>

#include "rinv/error.hpp"

namespace rinv {

namespace {

// Members are sorted, so the ones with the top bit clear come first.
std::vector<std::uint32_t> family_rec(const std::uint32_t* first, const std::uint32_t* last, int dim) {
  if (first == last) return {};
  if (dim == 0) return {0u};
  const std::uint32_t top = 1u << (dim - 1);
  const std::uint32_t* split = std::lower_bound(first, last, top);
  std::vector<std::uint32_t> minus = family_rec(first, split, dim - 1);
  std::vector<std::uint32_t> plus_members(split, last);
  for (auto& x : plus_members) x &= ~top;
  std::vector<std::uint32_t> plus = family_rec(plus_members.data(), plus_members.data() + plus_members.size(), dim - 1);

  std::vector<std::uint32_t> both;
  std::set_intersection(minus.begin(), minus.end(), plus.begin(), plus.end(), std::back_inserter(both));
  std::vector<std::uint32_t> out;
  out.reserve(minus.size() + plus.size());
  std::set_union(minus.begin(), minus.end(), plus.begin(), plus.end(), std::back_inserter(out));
  for (std::uint32_t s : both) out.push_back(s | top);
  // Lifted sets all carry the top bit, so they sort after every other entry.
  return out;
}

IndexSet mask_to_set(std::uint32_t mask) {
  IndexSet s;
  while (mask != 0) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

}  // namespace

SignSet::SignSet(int dim, std::vector<std::uint32_t> members) : dim_(dim), members_(std::move(members)) {
  if (dim < 0 || dim > 32) fail(ErrorCode::DimTooLarge, "sign vectors are limited to 32 coordinates");
  const std::uint32_t limit = dim == 32 ? 0xffffffffu : (1u << dim) - 1u;
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() > limit) fail(ErrorCode::BadParams, "sign vector has bits beyond dim");
}

bool SignSet::shatters(const IndexSet& sigma) const {
  if (sigma.size() > 24) fail(ErrorCode::DimTooLarge, "shatter check limited to 24 coordinates");
  for (int i : sigma) {
    if (i < 0 || i >= dim_) fail(ErrorCode::BadParams, "shatter check index out of range");
  }
  const std::size_t patterns = std::size_t{1} << sigma.size();
  if (members_.size() < patterns) return false;
  std::vector<bool> seen(patterns, false);
  std::size_t count = 0;
  for (std::uint32_t x : members_) {
    std::size_t p = 0;
    for (std::size_t b = 0; b < sigma.size(); ++b) p |= static_cast<std::size_t>((x >> sigma[b]) & 1u) << b;
    if (!seen[p]) {
      seen[p] = true;
      if (++count == patterns) return true;
    }
  }
  return false;
}

std::uint64_t count_small_subsets(int dim, int target) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(dim, k)
  for (int k = 0; k < target && k <= dim; ++k) {
    total += binom;
    binom = binom * static_cast<std::uint64_t>(dim - k) / static_cast<std::uint64_t>(k + 1);
  }
  return total;
}

std::vector<std::uint32_t> shattered_family(const SignSet& omega) {
  const auto& m = omega.members();
  return family_rec(m.data(), m.data() + m.size(), omega.dim());
}

IndexSet sauer_shelah_extract(const SignSet& omega, int target, int sauer_cap) {
  if (omega.dim() > sauer_cap) {
    fail(ErrorCode::DimTooLarge, "sign set dimension " + std::to_string(omega.dim()) + " exceeds cap " +
                                     std::to_string(sauer_cap));
  }
  if (target < 0) fail(ErrorCode::BadParams, "target must be >= 0");
  if (omega.size() <= count_small_subsets(omega.dim(), target)) {
    fail(ErrorCode::NotEnoughVectors, "|Omega| = " + std::to_string(omega.size()) +
                                          " does not force a shattered set of size " + std::to_string(target));
  }
  const std::vector<std::uint32_t> fam = shattered_family(omega);
  IndexSet best;
  int best_size = -1;
  for (std::uint32_t mask : fam) {
    const int size = std::popcount(mask);
    if (size < best_size) continue;
    IndexSet cand = mask_to_set(mask);
    if (size > best_size || cand < best) {
      best = std::move(cand);
      best_size = size;
    }
  }
  return best;
}

}  // namespace rinv
