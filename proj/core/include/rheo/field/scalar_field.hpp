#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "rheo/geometry/vec3.hpp"

namespace rheo {

// Implicit function over 3D space: negative inside, zero on the surface.
// Immutable and cheap to copy; safe to evaluate from many threads.
//
// `bounds`, when present, is a box outside of which the field is positive.
// `lipschitz_bound`, when present, is >= the true Lipschitz constant.
class ScalarField {
 public:
  using Function = std::function<double(const Point3&)>;

  explicit ScalarField(Function fn, std::optional<Box3> bounds = std::nullopt,
                       std::optional<double> lipschitz_bound = std::nullopt);

  double operator()(const Point3& p) const { return (*fn_)(p); }

  const std::optional<Box3>& bounds() const { return bounds_; }
  const std::optional<double>& lipschitz_bound() const { return lipschitz_; }

  ScalarField with_bounds(std::optional<Box3> bounds) const;
  ScalarField with_lipschitz(std::optional<double> lipschitz_bound) const;

 private:
  std::shared_ptr<const Function> fn_;
  std::optional<Box3> bounds_;
  std::optional<double> lipschitz_;
};

}  // namespace rheo
