#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

namespace curvball {

// Largest supported ambient vector length (d + 1 for the curved models).
inline constexpr int kMaxAmbient = 11;
inline constexpr int kMaxDim = kMaxAmbient - 1;

// Small fixed-capacity vector; no heap traffic in the sampling loops.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbient, 1>;

inline constexpr double kModelTol = 1e-9;
inline constexpr double kSideTol = 1e-12;

enum class Curvature : int { Hyperbolic = -1, Euclidean = 0, Spherical = 1 };

struct Space {
  Curvature curvature = Curvature::Euclidean;
  int dim = 2;
  // Working scale k for hyperbolic Kneser-Poulsen contexts.
  std::optional<double> k_cap;

  static Space euclidean(int d);
  static Space spherical(int d);
  static Space hyperbolic(int d, std::optional<double> k = std::nullopt);
  static Space from_kappa(int kappa, int d, std::optional<double> k = std::nullopt);

  int kappa() const { return static_cast<int>(curvature); }
  int ambient_dim() const { return curvature == Curvature::Euclidean ? dim : dim + 1; }
  bool curved() const { return curvature != Curvature::Euclidean; }
  // Upper end of the admissible dual radii: pi/2 on the sphere, +inf otherwise.
  double max_dual_radius() const;
  bool admissible_dual_radius(double r) const;

  friend bool operator==(const Space& a, const Space& b) {
    return a.curvature == b.curvature && a.dim == b.dim;
  }
};

std::string to_string(Curvature c);
Curvature curvature_from_string(const std::string& name);

struct Point {
  Vec coords;
};

// Euclidean dot product for kappa >= 0, Lorentz product (+,...,+,-) for kappa = -1.
double form(const Space& s, const Vec& x, const Vec& y);
double lorentz(const Vec& x, const Vec& y);

// Throws InputError unless p satisfies the model invariants of s.
void validate(const Space& s, const Point& p);
bool on_model(const Space& s, const Vec& v, double tol = kModelTol);

// Validating constructor; renormalizes when within `tol` of the model.
Point make_point(const Space& s, const Vec& coords, double tol = kModelTol);
// Unconditional projection onto the model (used after every derived point).
Point project(const Space& s, Vec coords);
// (0,...,0) for E^d; (0,...,0,1) for S^d and H^d.
Point origin(const Space& s);

// Hyperbolic/spherical point at geodesic distance rho from the origin along
// the unit direction u (length d). Flat case returns rho*u.
Point from_polar(const Space& s, const Vec& u, double rho);

// Isometry carrying origin(s) to c, applied to x.
Point transport_from_origin(const Space& s, const Point& c, const Point& x);
// Inverse of transport_from_origin (carries c to the origin).
Point transport_to_origin(const Space& s, const Point& c, const Point& x);

// Chart at c: intrinsic tangent coordinates (length d) of x, and back.
// to_local(c, x) has norm distance(c, x); from_local inverts it.
Vec to_local(const Space& s, const Point& c, const Point& x);
Point from_local(const Space& s, const Point& c, const Vec& v);

double distance(const Space& s, const Point& x, const Point& y);

namespace detail {
// No model validation; callers guarantee valid points.
double raw_distance(const Space& s, const Vec& x, const Vec& y);
}  // namespace detail

struct OrientedHyperplane {
  Vec normal;
  double offset = 0.0;  // only meaningful for kappa = 0
};

// Validating constructor; normalizes the normal in the appropriate form.
OrientedHyperplane make_hyperplane(const Space& s, const Vec& normal, double offset = 0.0);

double side_value(const Space& s, const OrientedHyperplane& h, const Point& x);
int side(const Space& s, const OrientedHyperplane& h, const Point& x);
Point reflect(const Space& s, const OrientedHyperplane& h, const Point& x);
Point geodesic_point(const Space& s, const Point& x, const Point& y, double t);
// Perpendicular bisector of a and b, oriented so that b lies on the positive side.
OrientedHyperplane bisector(const Space& s, const Point& a, const Point& b);

// Exponential map at c: geodesic of length t from c with unit tangent v
// (v is a tangent vector at c in ambient coordinates).
Point exp_map(const Space& s, const Point& c, const Vec& v, double t);
// Inverse of exp_map: tangent vector at c of length distance(c, x).
Vec log_map(const Space& s, const Point& c, const Point& x);

struct Ball {
  Point center;
  double radius = 0.0;
  bool empty = false;

  // Negative nominal radius yields the empty ball.
  static Ball make(const Space& s, const Point& center, double nominal_radius);
  bool contains(const Space& s, const Point& x, double tol = 0.0) const;
};

// Smallest ball that the triangle inequality certifies to contain both inputs.
Ball ball_hull(const Space& s, const Ball& a, const Ball& b);

}  // namespace curvball
