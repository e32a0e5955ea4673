#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "rheo/field/scalar_field.hpp"
#include "rheo/span/deck.hpp"

namespace rheo {

// Vertical queries against a deck: the lowest deck surface point above or
// below (x, z), if the deck covers that location.
class DeckHeightMap {
 public:
  explicit DeckHeightMap(const DeckSurface& deck);
  std::optional<double> height_at(double x, double z) const;

 private:
  Mesh mesh_;
  double x0_ = 0.0;
  double z0_ = 0.0;
  double cell_ = 1.0;
  int nx_ = 1;
  int nz_ = 1;
  std::vector<std::vector<std::uint32_t>> buckets_;
};

// Convex hull of the deck grid projected to XZ, counter-clockwise in (x, z).
std::vector<std::array<double, 2>> deck_footprint(const DeckSurface& deck);
// Signed distance to a convex polygon in the XZ plane.
double polygon_sdf(const std::vector<std::array<double, 2>>& polygon, double x, double z);

struct ShellSpec {
  // Empty means the automatic deck-to-ground shell.
  std::optional<ScalarField> user;
  double ground_y = 0.0;
};

// Deck-to-ground volume over the footprint.
ScalarField auto_shell(const DeckSurface& deck, double ground_y);

// Footprint extruded from ground_y up to the deck underside.
ScalarField footprint_prism(const DeckSurface& deck, double deck_thickness, double ground_y);

// union(deck plate, intersect(lattice, shell, footprint prism)).
ScalarField structural_preform(const DeckSurface& deck, double deck_thickness,
                               const ShellSpec& shell, const ScalarField& lattice);

}  // namespace rheo
