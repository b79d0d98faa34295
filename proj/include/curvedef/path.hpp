#pragma once

#include <cmath>
#include <vector>

#include "curvedef/cpoly.hpp"

namespace curvedef {

/// One path piece: straight segment or circular arc.
struct PathSeg {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  // line
  Cplx a{0, 0}, b{0, 0};
  // arc: center + radius, angle swept from ang0 to ang1 (either direction)
  Cplx center{0, 0};
  double radius = 0, ang0 = 0, ang1 = 0;

  static PathSeg line(Cplx from, Cplx to) {
    PathSeg s;
    s.kind = Kind::Line;
    s.a = from;
    s.b = to;
    return s;
  }
  static PathSeg arc(Cplx center, double radius, double ang0, double ang1) {
    PathSeg s;
    s.kind = Kind::Arc;
    s.center = center;
    s.radius = radius;
    s.ang0 = ang0;
    s.ang1 = ang1;
    return s;
  }

  Cplx at(double t) const {
    if (kind == Kind::Line) return a + t * (b - a);
    double ang = ang0 + t * (ang1 - ang0);
    return center + radius * Cplx{std::cos(ang), std::sin(ang)};
  }
  PathSeg reversed() const {
    PathSeg s = *this;
    if (kind == Kind::Line) {
      std::swap(s.a, s.b);
    } else {
      std::swap(s.ang0, s.ang1);
    }
    return s;
  }
  double length() const {
    if (kind == Kind::Line) return std::abs(b - a);
    return radius * std::abs(ang1 - ang0);
  }
};

/// A path in the z-disc: polyline/arc pieces, plus a declared exclusion set
/// (typically branch points) the path must keep clear of.
struct ZPath {
  std::vector<PathSeg> segs;
  int orientation = +1;
  std::vector<Cplx> exclusions;
  double clearance = 0.0;

  Cplx start() const { return segs.empty() ? Cplx{0, 0} : segs.front().at(0.0); }
  Cplx end() const { return segs.empty() ? Cplx{0, 0} : segs.back().at(1.0); }
  bool closed() const { return std::abs(start() - end()) < 1e-12; }

  ZPath reversed() const {
    ZPath p;
    p.orientation = -orientation;
    p.exclusions = exclusions;
    p.clearance = clearance;
    for (size_t i = segs.size(); i-- > 0;) p.segs.push_back(segs[i].reversed());
    return p;
  }

  ZPath then(const ZPath& other) const {
    require(std::abs(end() - other.start()) < 1e-9, ErrKind::InvalidInput, "path concatenation: endpoints differ");
    ZPath p = *this;
    p.segs.insert(p.segs.end(), other.segs.begin(), other.segs.end());
    for (auto& e : other.exclusions) p.exclusions.push_back(e);
    p.clearance = std::min(clearance, other.clearance);
    return p;
  }

  static ZPath polyline(const std::vector<Cplx>& pts) {
    ZPath p;
    for (size_t k = 0; k + 1 < pts.size(); ++k) p.segs.push_back(PathSeg::line(pts[k], pts[k + 1]));
    return p;
  }

  /// turns > 0: counterclockwise circles starting at angle start_ang.
  static ZPath circle(Cplx center, double radius, int turns = 1, double start_ang = 0.0) {
    ZPath p;
    int n = std::abs(turns) * 4;
    double dir = turns >= 0 ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k)
      p.segs.push_back(PathSeg::arc(center, radius, start_ang + dir * k * M_PI / 2.0,
                                    start_ang + dir * (k + 1) * M_PI / 2.0));
    return p;
  }

  /// Standard lasso: from the basepoint R on the positive real boundary
  /// circle, sweep along the circle to the target's argument, run a straight
  /// spoke inward, loop once around the target, and come back.
  static ZPath lasso(double boundary_radius, Cplx target, double loop_radius) {
    double theta = std::arg(target);
    double rho = std::abs(target);
    require(rho + loop_radius < boundary_radius, ErrKind::InvalidInput, "lasso target outside boundary");
    ZPath p;
    Cplx dir{std::cos(theta), std::sin(theta)};
    Cplx spoke_out = boundary_radius * dir;
    Cplx spoke_in = (rho + loop_radius) * dir;
    if (std::abs(theta) > 1e-15) p.segs.push_back(PathSeg::arc({0, 0}, boundary_radius, 0.0, theta));
    p.segs.push_back(PathSeg::line(spoke_out, spoke_in));
    for (int k = 0; k < 4; ++k)
      p.segs.push_back(PathSeg::arc(target, loop_radius, theta + k * M_PI / 2.0, theta + (k + 1) * M_PI / 2.0));
    p.segs.push_back(PathSeg::line(spoke_in, spoke_out));
    if (std::abs(theta) > 1e-15) p.segs.push_back(PathSeg::arc({0, 0}, boundary_radius, theta, 0.0));
    return p;
  }
};

}  // namespace curvedef
