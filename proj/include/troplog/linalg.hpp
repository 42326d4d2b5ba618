#pragma once

#include "troplog/rational.hpp"

#include <vector>

namespace troplog {

using Matrix = std::vector<std::vector<Rational>>;

std::size_t rank(Matrix rows);

/// Throws Error(InvalidInput) for non-square input.
Rational determinant(Matrix square);

}  // namespace troplog
