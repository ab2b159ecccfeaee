#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flat/periodicity.hpp"

namespace flat {

// Plane isometry z -> exp(i*angle*pi)*z + tau, or with conj(z) when reflect.
struct Motion {
  bool reflect = false;
  Rational angle;  // mod 2
  Point tau;

  Point apply(const Point& z) const;
  Rational apply_direction(const Rational& d) const;
  // Reflection across the line through p with direction phi, applied after this motion.
  Motion reflected(const Point& p, const Rational& phi) const;
  // Orthogonal part as an element of G_P.
  Dihedral label(const Polygon& P) const;
  friend bool operator==(const Motion& a, const Motion& b) {
    return a.reflect == b.reflect && a.angle == b.angle && a.tau == b.tau;
  }
};

// a after b
Motion compose(const Motion& a, const Motion& b);
Motion inverse(const Motion& m);
std::string motion_key(const Motion& m);

// New copy obtained by reflecting copy `parent` across its side `side`.
struct TilingStep {
  size_t parent, side;
};

struct TilingSide {
  long partner_copy = -1, partner_side = -1;
  bool external() const { return partner_copy < 0; }
};

struct TilingPoint {
  Point position;
  std::vector<std::pair<size_t, size_t>> corners;  // (copy, base vertex index)
  long base_vertex = -1;
  Rational total;  // sum of corner angles, multiple of pi
  bool interior = false;
  long outline_vertex = -1;  // vertex index in the outline, -1 for straight or interior points
};

struct Tiling {
  Polygon base;
  std::vector<TilingStep> steps;  // copy i+1 comes from steps[i]
  std::vector<Motion> motions;
  std::vector<std::vector<Point>> copies;  // vertex k of a copy is the image of base vertex k
  std::vector<std::vector<TilingSide>> sides;
  std::vector<TilingPoint> points;
  Polygon outline;
  Point outline_origin;
  std::vector<size_t> outline_points;  // tiling point of each outline vertex
  // side k of the outline is made of these (copy, side) pairs
  std::vector<std::vector<std::pair<size_t, size_t>>> outline_sides;

  size_t size() const { return copies.size(); }
};

// Places the copies and checks every tiling condition exactly.
Tiling verify_tiling(const Polygon& P, const std::vector<TilingStep>& steps);
// Same from explicit motions (the first is usually the identity).
Tiling verify_motions(const Polygon& P, const std::vector<Motion>& motions);

// Tiling of Q by P from a tiling of Q by Pbar and a tiling of Pbar by P.
Tiling compose_tilings(const Tiling& outer, const Tiling& inner);

struct CoverPoint {
  size_t point;             // index into Tiling::points
  long base_vertex;
  RationalAngle base_angle;  // m0/n0
  long k;                    // number of copies meeting there
  std::string kind;          // vertex | edge | interior
  long cone_up;              // cone angle over 2*pi of each preimage
  long e;                    // ramification index
  long e_formula;            // k/gcd(k, n0) for outline vertices
  long preimages;            // number of points of M_Q over this point
  long image;                // point class in M_P seen from the identity sheet
  bool branched() const { return e > 1; }
};

struct CoverAnalysis {
  long n_copies = 0, N_P = 0, N_Q = 0, N_Q_sides = 0, m = 0;
  Rational degree;
  long d = 0;
  std::vector<CoverPoint> points;
  std::vector<long> branch_locus;  // point classes of M_P
  std::vector<Dihedral> G_Q, H;    // as elements of G_P
  Topology top_P, top_Q;
  long ramification = 0;
  bool rh_consistent = false;
  bool degree_consistent = false;  // every face of M_P covered d times
  bool class_degree_consistent = false;  // sum of e over each fiber is d
  bool locus_invariant = false;    // under H
};

long riemann_hurwitz_chi(long d, long chi_base, long ramification);

// Throws DomainError for a non-integer degree or a Riemann-Hurwitz violation.
CoverAnalysis analyze_cover(const Tiling& t);

struct BaseInfo {
  bool lattice = true;
  bool square_tiled = false;
};

enum class Appropriate { yes, no, unknown };
std::string to_string(Appropriate a);

struct AppropriateVerdict {
  Appropriate appropriate = Appropriate::no;
  std::vector<std::string> reasons;
};

// verdicts are indexed by point class of M_P.
AppropriateVerdict appropriate_verdict(const Tiling& t, const CoverAnalysis& a,
                                       const std::vector<PeriodicityVerdict>& verdicts, const BaseInfo& base = {});

// Smallest k with k*alpha of odd reduced denominator.
long odd_multiplier(const RationalAngle& alpha);

}  // namespace flat
