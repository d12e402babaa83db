#pragma once

#include <optional>
#include <vector>

namespace cellcov::sim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Base-station layout plus the path-loss law. The hexagonal form covers the
// 19-cell macrocell grid (center cell plus two rings); fixed_distances
// overrides the lattice for reduced test layouts whose interferer distances
// do not depend on the user position.
struct NetworkGeometry {
    double R = 866.0;      // half inter-site distance (m)
    double beta = 3.76;    // path loss exponent, >= 2
    double d_min = 35.0;   // minimum user-BS distance (m)
    std::vector<Vec2> bs_positions;  // 19 entries, center first, then by (distance, angle)
    Vec2 user_direction{1.0, 0.0};   // unit vector from the center BS
    std::optional<std::vector<double>> fixed_distances;

    double corner_radius() const;  // max in-cell user radius, 2R/sqrt(3)
    std::size_t interferer_count() const;
};

// 19-cell hexagonal layout with inter-site distance 2R. The default user ray
// points at a cell corner (30 degrees), the only direction that reaches
// r = 900 m inside a cell of apothem 866 m.
NetworkGeometry hex_layout(double R, double beta = 3.76, double d_min = 35.0,
                           double direction_deg = 30.0);

// Reduced layout with explicit interferer distances.
NetworkGeometry fixed_geometry(std::vector<double> distances_m, double beta, double d_min = 35.0);

// Distances from a user at radius r along the geometry's ray to every
// interfering BS. For the hexagonal layout requires d_min <= r <= 2R/sqrt(3).
std::vector<double> interferer_distances(const NetworkGeometry& geom, double r);

// Same, along an arbitrary ray (degrees); used for angular averaging.
std::vector<double> interferer_distances(const NetworkGeometry& geom, double r, double direction_deg);

}  // namespace cellcov::sim
