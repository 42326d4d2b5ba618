#pragma once

#include "troplog/affine.hpp"

#include <cstdint>
#include <string>

namespace troplog {

/// Tropical shadow t -> degree * t + translation of a self-map of the
/// logarithmic torus. Degree 0 is the constant-map stratum.
struct SelfMapNormalForm {
  std::int64_t degree = 1;
  AffineExpr translation;
  std::int64_t kernel_order = 1;

  std::string stratum() const;
  AffineExpr apply(const AffineExpr& t) const;

  friend bool operator==(const SelfMapNormalForm&, const SelfMapNormalForm&) = default;
};

SelfMapNormalForm classify_self_map(std::int64_t degree, AffineExpr translation);

/// outer o inner: t -> r (s t + b) + a.
SelfMapNormalForm compose(const SelfMapNormalForm& outer, const SelfMapNormalForm& inner);

}  // namespace troplog
