#pragma once

#include <span>
#include <string>
#include <vector>

#include "curvball/geom_core.hpp"
#include "curvball/kp.hpp"
#include "curvball/rng.hpp"

namespace curvball::svg {

// Planar picture of a 2-dimensional model: identity for E^2, orthographic
// (first two coordinates) for S^2, Poincare disk for H^2.
Eigen::Vector2d project(const Space& s, const Point& p);

// Disks of radius r about the points and their intersection (exact arc
// polygon for E^2, sampled hits otherwise).
std::string render_dual(const Space& s, std::span<const Point> points, double r,
                        const RngSpec& rng);

// Two panels: the union of balls K, then tau_H K, with H drawn in both.
std::string render_symmetrization(const Space& s, std::span<const Point> centers,
                                  double ball_radius, const OrientedHyperplane& h,
                                  const RngSpec& rng);

// P, Q and both delta-duals, colour-coded.
std::string render_kp(const KPParams& p, std::span<const Point> pts_p,
                      std::span<const Point> pts_q, const RngSpec& rng);

}  // namespace curvball::svg
