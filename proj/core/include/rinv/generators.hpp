#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rinv/matrix.hpp"

namespace rinv {

/// Parameters for the named matrix families. n defaults to m when 0.
struct GenParams {
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::string path;  // from-file only
};

/// Kinds: identity, harmonic, circulant-sqrt, gaussian, unit-columns,
/// from-file. Throws UnknownGenerator / BadParams.
Matrix generate(const std::string& kind, const GenParams& params);

const std::vector<std::string>& generator_kinds();

/// n x m matrix with s_j = 1/sqrt(j) on the leading diagonal (n >= m).
Matrix harmonic_matrix(int m, int n = 0);

/// Symmetric square root of (m+1) I - J, J the all-ones matrix.
Matrix circulant_sqrt(int m);

/// Gaussian matrix with columns rescaled to unit Euclidean norm.
Matrix unit_column_matrix(int n, int m, std::uint64_t seed);

}  // namespace rinv
