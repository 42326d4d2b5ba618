#include "troplog/selfmap.hpp"

#include "troplog/error.hpp"

#include <limits>

namespace troplog {

namespace {

std::int64_t checked_abs(std::int64_t r) {
  if (r == std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::InvalidInput, "degree out of range");
  return r < 0 ? -r : r;
}

}  // namespace

std::string SelfMapNormalForm::stratum() const {
  if (degree == 0) return "constant";
  return "B_mu_" + std::to_string(kernel_order);
}

AffineExpr SelfMapNormalForm::apply(const AffineExpr& t) const {
  return t * Rational(degree) + translation;
}

SelfMapNormalForm classify_self_map(std::int64_t degree, AffineExpr translation) {
  return {degree, std::move(translation), checked_abs(degree)};
}

SelfMapNormalForm compose(const SelfMapNormalForm& outer, const SelfMapNormalForm& inner) {
  std::int64_t degree = 0;
  if (__builtin_mul_overflow(outer.degree, inner.degree, &degree))
    throw Error(ErrorCode::InvalidInput, "composite degree overflows");
  return classify_self_map(degree, outer.apply(inner.translation));
}

}  // namespace troplog
