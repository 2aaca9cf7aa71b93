#include "curvball/svg.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "curvball/errors.hpp"
#include "curvball/exact2d.hpp"
#include "curvball/measure.hpp"
#include "curvball/oracle_sets.hpp"

namespace curvball::svg {

namespace {

using V2 = Eigen::Vector2d;

constexpr int kCirclePoints = 160;
constexpr int kDots = 6000;

struct Panel {
  std::string id;
  std::vector<std::string> items;
  V2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  V2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void extend(const V2& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

// Screen coordinates: y flipped so counter-clockwise stays counter-clockwise.
std::string xy(const V2& p) { return fmt(p.x()) + "," + fmt(-p.y()); }

void require_planar(const Space& s) {
  if (s.dim != 2) throw InputError("rendering is only available for d = 2");
}

void add_geodesic_circle(Panel& panel, const Space& s, const Point& c, double r,
                         const std::string& style) {
  if (s.curvature == Curvature::Euclidean) {
    const V2 p = c.coords.head<2>();
    panel.extend(p - V2(r, r));
    panel.extend(p + V2(r, r));
    panel.items.push_back("<circle cx=\"" + fmt(p.x()) + "\" cy=\"" + fmt(-p.y()) + "\" r=\"" +
                          fmt(r) + "\" " + style + "/>");
    return;
  }
  std::string pts;
  for (int i = 0; i <= kCirclePoints; ++i) {
    const double a = 2.0 * std::numbers::pi * i / kCirclePoints;
    Vec v(2);
    v << r * std::cos(a), r * std::sin(a);
    const V2 q = project(s, from_local(s, c, v));
    panel.extend(q);
    pts += xy(q) + " ";
  }
  panel.items.push_back("<polyline points=\"" + pts + "\" " + style + "/>");
}

void add_points(Panel& panel, const Space& s, std::span<const Point> pts, double size,
                const std::string& fill) {
  for (const auto& p : pts) {
    const V2 q = project(s, p);
    panel.extend(q);
    panel.items.push_back("<circle cx=\"" + fmt(q.x()) + "\" cy=\"" + fmt(-q.y()) + "\" r=\"" +
                          fmt(size) + "\" fill=\"" + fill + "\"/>");
  }
}

void add_hits(Panel& panel, const SetOracle& k, const RngSpec& rng, double size,
              const std::string& fill) {
  if (k.known_empty()) return;
  const BallSampler sampler(k.space(), k.bound());
  RandomStream stream(rng);
  std::string path;
  for (int i = 0; i < kDots; ++i) {
    const Point x = sampler.sample(stream);
    if (!k.contains(x)) continue;
    const V2 q = project(k.space(), x);
    path += "M" + xy(q) + "h" + fmt(size) + "v" + fmt(size) + "h" + fmt(-size) + "z";
  }
  if (!path.empty()) {
    panel.items.push_back("<path d=\"" + path + "\" fill=\"" + fill + "\" fill-opacity=\"0.6\"/>");
  }
}

void add_arc_polygon(Panel& panel, const exact2d::ArcPolygon& a, const std::string& style) {
  using exact2d::Degeneracy;
  switch (a.degenerate) {
    case Degeneracy::Empty: return;
    case Degeneracy::SinglePoint: {
      panel.items.push_back("<circle cx=\"" + fmt(a.point.x()) + "\" cy=\"" + fmt(-a.point.y()) +
                            "\" r=\"" + fmt(0.01 * a.radius) + "\" " + style + "/>");
      return;
    }
    case Degeneracy::FullDisk: {
      const V2 c = a.centers.front();
      panel.items.push_back("<circle cx=\"" + fmt(c.x()) + "\" cy=\"" + fmt(-c.y()) + "\" r=\"" +
                            fmt(a.radius) + "\" " + style + "/>");
      return;
    }
    case Degeneracy::None: break;
  }
  std::string d = "M" + xy(a.vertices.front());
  for (const auto& arc : a.arcs) {
    const V2 end = a.arc_point(arc, arc.end);
    const int large = arc.end - arc.start > std::numbers::pi ? 1 : 0;
    // Counter-clockwise in the plane is clockwise on screen (sweep 0).
    d += "A" + fmt(a.radius) + "," + fmt(a.radius) + " 0 " + std::to_string(large) + " 0 " +
         xy(end);
  }
  d += "Z";
  panel.items.push_back("<path class=\"arc-polygon\" d=\"" + d + "\" " + style + "/>");
}

void add_hyperplane(Panel& panel, const Space& s, const OrientedHyperplane& h) {
  // Trace the geodesic H through its point nearest the origin.
  const Point o = origin(s);
  const double v = side_value(s, h, o);
  Point foot = o;
  Vec along(2);
  if (s.curvature == Curvature::Euclidean) {
    foot = Point{o.coords - v * h.normal};
    along << -h.normal[1], h.normal[0];
  } else {
    foot = reflect(s, h, o);
    foot = geodesic_point(s, o, foot, 0.5);
    Vec n = to_local(s, foot, project(s, foot.coords + 1e-6 * h.normal));
    if (n.norm() < 1e-15) n = Vec::Unit(2, 0);
    n.normalize();
    along << -n[1], n[0];
  }
  const double span = std::max(panel.hi.x() - panel.lo.x(), panel.hi.y() - panel.lo.y());
  const double reach = std::isfinite(span) ? span : 2.0;
  std::string pts;
  for (int i = -40; i <= 40; ++i) {
    const double t = reach * i / 40.0;
    Point q = s.curvature == Curvature::Euclidean ? Point{foot.coords + t * along}
                                                  : from_local(s, foot, t * along);
    pts += xy(project(s, q)) + " ";
  }
  panel.items.push_back("<polyline class=\"hyperplane\" points=\"" + pts +
                        "\" fill=\"none\" stroke=\"#444\" stroke-dasharray=\"4 3\" "
                        "vector-effect=\"non-scaling-stroke\"/>");
}

std::string compose(std::vector<Panel> panels) {
  const double pad = 0.08;
  double width = 0.0;
  double height = 0.0;
  std::vector<double> offsets;
  for (auto& p : panels) {
    if (!std::isfinite(p.lo.x())) {
      p.lo = V2(-1, -1);
      p.hi = V2(1, 1);
    }
    const V2 size = p.hi - p.lo;
    const double m = pad * std::max(size.x(), size.y()) + 1e-9;
    p.lo -= V2(m, m);
    p.hi += V2(m, m);
    offsets.push_back(width);
    width += p.hi.x() - p.lo.x();
    height = std::max(height, p.hi.y() - p.lo.y());
  }
  std::ostringstream os;
  const double top = [&] {
    double t = std::numeric_limits<double>::infinity();
    for (const auto& p : panels) t = std::min(t, -p.hi.y());
    return t;
  }();
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 " << fmt(top) << " " << fmt(width)
     << " " << fmt(height) << "\" width=\"" << static_cast<int>(400 * panels.size())
     << "\" height=\"400\">\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& p = panels[i];
    os << "<g id=\"" << p.id << "\" transform=\"translate(" << fmt(offsets[i] - p.lo.x())
       << ",0)\">\n";
    for (const auto& item : p.items) os << "  " << item << "\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

const std::string kThin = "vector-effect=\"non-scaling-stroke\" stroke-width=\"1\"";

}  // namespace

Eigen::Vector2d project(const Space& s, const Point& p) {
  switch (s.curvature) {
    case Curvature::Euclidean: return p.coords.head<2>();
    case Curvature::Spherical: return p.coords.head<2>();
    case Curvature::Hyperbolic: return p.coords.head<2>() / (1.0 + p.coords[2]);
  }
  return V2::Zero();
}

std::string render_dual(const Space& s, std::span<const Point> points, double r,
                        const RngSpec& rng) {
  require_planar(s);
  Panel panel{"dual", {}, {}, {}};
  panel.lo = V2::Constant(std::numeric_limits<double>::infinity());
  panel.hi = -panel.lo;
  for (const auto& p : points) {
    add_geodesic_circle(panel, s, p, r, "fill=\"none\" stroke=\"#1f77b4\" " + kThin);
  }
  if (s.curvature == Curvature::Euclidean) {
    std::vector<exact2d::P2> centers;
    for (const auto& p : points) centers.push_back(p.coords.head<2>());
    add_arc_polygon(panel, exact2d::disk_polygon(centers, r),
                    "fill=\"#ff7f0e\" fill-opacity=\"0.5\" stroke=\"#d62728\" " + kThin);
  } else {
    add_hits(panel, dual_of_points(s, points, r).oracle(), rng, 0.004, "#ff7f0e");
  }
  add_points(panel, s, points, 0.01, "#000");
  return compose({panel});
}

std::string render_symmetrization(const Space& s, std::span<const Point> centers,
                                  double ball_radius, const OrientedHyperplane& h,
                                  const RngSpec& rng) {
  require_planar(s);
  const UnionOfBalls k = UnionOfBalls::congruent(s, centers, ball_radius);
  const SetOracle before = k.oracle();
  const SetOracle after = symmetrize(before, h);
  auto blank = [](const std::string& id) {
    Panel p{id, {}, {}, {}};
    p.lo = V2::Constant(std::numeric_limits<double>::infinity());
    p.hi = -p.lo;
    return p;
  };
  Panel left = blank("before");
  Panel right = blank("after");
  for (const auto& c : centers) {
    add_geodesic_circle(left, s, c, ball_radius, "fill=\"none\" stroke=\"#1f77b4\" " + kThin);
    add_geodesic_circle(right, s, c, ball_radius,
                        "fill=\"none\" stroke=\"#bbb\" stroke-dasharray=\"2 2\" " + kThin);
  }
  add_hits(left, before, rng.child(0), 0.01 * ball_radius, "#1f77b4");
  add_hits(right, after, rng.child(1), 0.01 * ball_radius, "#2ca02c");
  right.extend(left.lo);
  right.extend(left.hi);
  add_hyperplane(left, s, h);
  add_hyperplane(right, s, h);
  return compose({left, right});
}

std::string render_kp(const KPParams& p, std::span<const Point> pts_p,
                      std::span<const Point> pts_q, const RngSpec& rng) {
  const Space& s = p.space;
  require_planar(s);
  Panel panel{"kp", {}, {}, {}};
  panel.lo = V2::Constant(std::numeric_limits<double>::infinity());
  panel.hi = -panel.lo;
  const double dot = 0.15 * p.lambda;
  if (s.curvature == Curvature::Euclidean) {
    auto planar = [](std::span<const Point> pts) {
      std::vector<exact2d::P2> out;
      for (const auto& x : pts) out.push_back(x.coords.head<2>());
      return out;
    };
    panel.items.push_back("<g id=\"Q-dual\">");
    add_arc_polygon(panel, exact2d::disk_polygon(planar(pts_q), p.delta),
                    "fill=\"#2ca02c\" fill-opacity=\"0.35\" stroke=\"#2ca02c\" " + kThin);
    panel.items.push_back("</g>");
    panel.items.push_back("<g id=\"P-dual\">");
    add_arc_polygon(panel, exact2d::disk_polygon(planar(pts_p), p.delta),
                    "fill=\"#d62728\" fill-opacity=\"0.5\" stroke=\"#d62728\" " + kThin);
    panel.items.push_back("</g>");
  } else {
    panel.items.push_back("<g id=\"Q-dual\">");
    add_hits(panel, dual_of_points(s, pts_q, p.delta).oracle(), rng.child(0), 0.004, "#2ca02c");
    panel.items.push_back("</g>");
    panel.items.push_back("<g id=\"P-dual\">");
    add_hits(panel, dual_of_points(s, pts_p, p.delta).oracle(), rng.child(1), 0.004, "#d62728");
    panel.items.push_back("</g>");
  }
  add_points(panel, s, pts_p, dot, "#d62728");
  add_points(panel, s, pts_q, 0.5 * dot, "#2ca02c");
  return compose({panel});
}

}  // namespace curvball::svg
