#include "rheo/field/scalar_field.hpp"

namespace rheo {

ScalarField::ScalarField(Function fn, std::optional<Box3> bounds,
                         std::optional<double> lipschitz_bound)
    : fn_(std::make_shared<const Function>(std::move(fn))),
      bounds_(bounds),
      lipschitz_(lipschitz_bound) {}

ScalarField ScalarField::with_bounds(std::optional<Box3> bounds) const {
  ScalarField out = *this;
  out.bounds_ = bounds;
  return out;
}

ScalarField ScalarField::with_lipschitz(std::optional<double> lipschitz_bound) const {
  ScalarField out = *this;
  out.lipschitz_ = lipschitz_bound;
  return out;
}

}  // namespace rheo
