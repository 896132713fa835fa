#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fanoforge/bitset.hpp"
#include "fanoforge/presemifield.hpp"

namespace fanoforge::geometry {

using algebra::FieldElem;
using algebra::Presemifield;

struct PlanePoint {
  enum class Kind : std::uint8_t { affine, slope, infinity };
  Kind kind = Kind::infinity;
  std::uint16_t a = 0;  // affine x, or the slope value
  std::uint16_t b = 0;  // affine y

  static PlanePoint affine(FieldElem x, FieldElem y) {
    return {Kind::affine, std::uint16_t(x), std::uint16_t(y)};
  }
  static PlanePoint slope(FieldElem m) { return {Kind::slope, std::uint16_t(m), 0}; }
  static PlanePoint infinity() { return {Kind::infinity, 0, 0}; }

  auto operator<=>(const PlanePoint&) const = default;
  std::string text() const;  // "affine <x> <y>" | "slope <m>" | "infinity"
};

struct PlaneLine {
  enum class Kind : std::uint8_t { regular, vertical, at_infinity };
  Kind kind = Kind::at_infinity;
  std::uint16_t a = 0;  // regular slope m, or the vertical x
  std::uint16_t b = 0;  // regular intercept

  static PlaneLine regular(FieldElem m, FieldElem k) {
    return {Kind::regular, std::uint16_t(m), std::uint16_t(k)};
  }
  static PlaneLine vertical(FieldElem c) { return {Kind::vertical, std::uint16_t(c), 0}; }
  static PlaneLine at_infinity() { return {Kind::at_infinity, 0, 0}; }

  auto operator<=>(const PlaneLine&) const = default;
  std::string text() const;  // "regular <m> <k>" | "vertical <c>" | "at-infinity"
};

// Projective plane of order n coordinatized by a presemifield: affine points
// (x, y), one point per slope, one point at infinity; lines y = m*x + k,
// verticals x = c, and the line at infinity. Characteristic 2 throughout, so
// subtraction is XOR. Point and line indices mirror each other: affine (x, y)
// and regular (m, k) both map to first*n + second, slopes and verticals to
// n^2 + value, and the infinite elements to n^2 + n.
class Plane {
public:
  // requires a presemifield verified distributive and zero-divisor-free
  explicit Plane(Presemifield psf);

  // skips the verification-flag requirement; for probing broken algebras
  static Plane unchecked(Presemifield psf);

  std::uint32_t order() const { return n_; }
  std::uint32_t point_count() const { return count_; }  // n^2 + n + 1, lines too
  const Presemifield& presemifield() const { return psf_; }

  FieldElem mul(FieldElem a, FieldElem b) const { return psf_.mul(a, b); }
  FieldElem solve_left(FieldElem m, FieldElem c) const { return solve_.solve(m, c); }

  bool incident(const PlanePoint& p, const PlaneLine& l) const;

  // the unique line through two distinct points
  PlaneLine join(const PlanePoint& p, const PlanePoint& q) const;
  // the unique common point of two distinct lines
  PlanePoint meet(const PlaneLine& l, const PlaneLine& m) const;

  std::uint32_t index_of(const PlanePoint& p) const;
  std::uint32_t index_of(const PlaneLine& l) const;
  PlanePoint point_at(std::uint32_t index) const;
  PlaneLine line_at(std::uint32_t index) const;

  // sorted indices; always n+1 of them
  std::vector<std::uint32_t> points_on_line(const PlaneLine& l) const;
  std::vector<std::uint32_t> lines_through_point(const PlanePoint& p) const;

private:
  struct unchecked_tag {};
  Plane(Presemifield psf, unchecked_tag);

  Presemifield psf_;
  algebra::SolveTable solve_;
  std::uint32_t n_ = 0;
  std::uint32_t count_ = 0;
};

// Explicit point-line incidence bitmap; rows are lines.
struct IncidenceStructure {
  std::uint32_t num_points = 0;
  std::uint32_t num_lines = 0;
  BitMatrix line_points;

  static IncidenceStructure from_plane(const Plane& plane);
};

// The substructure induced by the chosen points and lines; entries must be
// pairwise distinct within each list.
IncidenceStructure restrict_structure(const Plane& plane,
                                      std::span<const PlanePoint> points,
                                      std::span<const PlaneLine> lines);

struct PlaneAxiomCheck {
  bool ok = false;
  std::int64_t probes = 0;
  std::string witness;
};

struct PlaneAxiomReport {
  PlaneAxiomCheck points_joined_once;  // every point pair lies on exactly one line
  PlaneAxiomCheck lines_meet_once;     // every line pair meets in exactly one point
  PlaneAxiomCheck quadrilateral;       // four points exist, no three collinear

  bool all() const {
    return points_joined_once.ok && lines_meet_once.ok && quadrilateral.ok;
  }
};

// Exhaustive check over the explicit bitmap; callers keep the structure small
// (full planes up to order 64, restricted substructures always).
PlaneAxiomReport verify_plane_axioms(const IncidenceStructure& s);

// Seeded join/meet spot-check for orders too large to materialize.
PlaneAxiomReport verify_plane_axioms_sampled(const Plane& plane, std::uint64_t seed,
                                             std::int64_t pairs);

// "plane n=<order> source=<field|knuth|table>" then one sorted index row per line.
void export_incidence_text(const Plane& plane, std::ostream& out);
// same header plus format=packed, then ceil((n^2+n+1)/8) bytes per line,
// point p at bit (p & 7) of byte (p >> 3)
void export_incidence_packed(const Plane& plane, std::ostream& out);

}  // namespace fanoforge::geometry
