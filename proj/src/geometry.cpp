#include "cellcov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cellcov::sim {

namespace {
constexpr double kPi = 3.14159265358979323846;

double hypot2(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}
}  // namespace

double NetworkGeometry::corner_radius() const { return 2.0 * R / std::sqrt(3.0); }

std::size_t NetworkGeometry::interferer_count() const {
    if (fixed_distances) return fixed_distances->size();
    return bs_positions.empty() ? 0 : bs_positions.size() - 1;
}

NetworkGeometry hex_layout(double R, double beta, double d_min, double direction_deg) {
    if (!(R > 0.0)) throw std::invalid_argument("hex_layout: R must be positive");
    if (!(beta >= 2.0)) throw std::invalid_argument("hex_layout: beta must be >= 2");

    const Vec2 a1{2.0 * R, 0.0};
    const Vec2 a2{R, R * std::sqrt(3.0)};
    std::vector<Vec2> pts;
    for (int u = -2; u <= 2; ++u)
        for (int v = -2; v <= 2; ++v) {
            if (std::abs(u + v) > 2) continue;  // keep the two hexagonal rings
            pts.push_back({u * a1.x + v * a2.x, u * a1.y + v * a2.y});
        }

    const Vec2 origin{0.0, 0.0};
    std::sort(pts.begin(), pts.end(), [&](const Vec2& p, const Vec2& q) {
        const double dp = hypot2(p, origin), dq = hypot2(q, origin);
        if (std::fabs(dp - dq) > 1e-9) return dp < dq;
        return std::atan2(p.y, p.x) < std::atan2(q.y, q.x);
    });

    NetworkGeometry geom;
    geom.R = R;
    geom.beta = beta;
    geom.d_min = d_min;
    geom.bs_positions = std::move(pts);
    const double th = direction_deg * kPi / 180.0;
    geom.user_direction = {std::cos(th), std::sin(th)};
    if (geom.bs_positions.size() != 19) throw std::logic_error("hex_layout: expected 19 sites");
    return geom;
}

NetworkGeometry fixed_geometry(std::vector<double> distances_m, double beta, double d_min) {
    if (distances_m.empty()) throw std::invalid_argument("fixed_geometry: no distances");
    for (double d : distances_m)
        if (!(d > 0.0)) throw std::invalid_argument("fixed_geometry: distance <= 0");
    NetworkGeometry geom;
    geom.beta = beta;
    geom.d_min = d_min;
    geom.fixed_distances = std::move(distances_m);
    return geom;
}

std::vector<double> interferer_distances(const NetworkGeometry& geom, double r) {
    const double deg = std::atan2(geom.user_direction.y, geom.user_direction.x) * 180.0 / kPi;
    return interferer_distances(geom, r, deg);
}

std::vector<double> interferer_distances(const NetworkGeometry& geom, double r, double direction_deg) {
    if (geom.fixed_distances) {
        if (!(r > 0.0)) throw std::domain_error("interferer_distances: r <= 0");
        return *geom.fixed_distances;
    }
    if (r < geom.d_min || r > geom.corner_radius() + 1e-9)
        throw std::domain_error("interferer_distances: user radius outside the cell");
    const double th = direction_deg * kPi / 180.0;
    const Vec2 user{r * std::cos(th), r * std::sin(th)};
    std::vector<double> d;
    d.reserve(geom.bs_positions.size() - 1);
    for (std::size_t i = 1; i < geom.bs_positions.size(); ++i)
        d.push_back(hypot2(geom.bs_positions[i], user));
    return d;
}

}  // namespace cellcov::sim
