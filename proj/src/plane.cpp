#include "fanoforge/plane.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <random>
#include <sstream>

#include "fanoforge/errors.hpp"

namespace fanoforge::geometry {

std::string PlanePoint::text() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::affine: os << "affine " << a << " " << b; break;
    case Kind::slope: os << "slope " << a; break;
    case Kind::infinity: os << "infinity"; break;
  }
  return os.str();
}

std::string PlaneLine::text() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::regular: os << "regular " << a << " " << b; break;
    case Kind::vertical: os << "vertical " << a; break;
    case Kind::at_infinity: os << "at-infinity"; break;
  }
  return os.str();
}

Plane::Plane(Presemifield psf) : Plane(std::move(psf), unchecked_tag{}) {
  if (!psf_.verified_distributive || !psf_.verified_no_zero_divisors) {
    throw InputError("plane: presemifield must be verified distributive and zero-divisor-free");
  }
}

Plane Plane::unchecked(Presemifield psf) { return Plane(std::move(psf), unchecked_tag{}); }

Plane::Plane(Presemifield psf, unchecked_tag)
    : psf_(std::move(psf)), solve_(psf_), n_(psf_.n), count_(psf_.n * psf_.n + psf_.n + 1) {}

bool Plane::incident(const PlanePoint& p, const PlaneLine& l) const {
  switch (p.kind) {
    case PlanePoint::Kind::affine:
      switch (l.kind) {
        case PlaneLine::Kind::regular: return p.b == (mul(l.a, p.a) ^ l.b);
        case PlaneLine::Kind::vertical: return p.a == l.a;
        case PlaneLine::Kind::at_infinity: return false;
      }
      break;
    case PlanePoint::Kind::slope:
      switch (l.kind) {
        case PlaneLine::Kind::regular: return p.a == l.a;
        case PlaneLine::Kind::vertical: return false;
        case PlaneLine::Kind::at_infinity: return true;
      }
      break;
    case PlanePoint::Kind::infinity:
      switch (l.kind) {
        case PlaneLine::Kind::regular: return false;
        case PlaneLine::Kind::vertical: return true;
        case PlaneLine::Kind::at_infinity: return true;
      }
      break;
  }
  throw InternalError("incident: unreachable point/line kind");
}

PlaneLine Plane::join(const PlanePoint& p, const PlanePoint& q) const {
  if (p == q) throw InternalError("join: degenerate pair " + p.text());
  // normalize so the affine case, then the slope case, comes first
  const PlanePoint& u = p.kind <= q.kind ? p : q;
  const PlanePoint& v = p.kind <= q.kind ? q : p;
  switch (u.kind) {
    case PlanePoint::Kind::affine:
      switch (v.kind) {
        case PlanePoint::Kind::affine: {
          if (u.a == v.a) return PlaneLine::vertical(u.a);
          // m*(x1 + x2) = y1 + y2 by left distributivity
          const FieldElem m = solve_left(FieldElem(u.a ^ v.a), FieldElem(u.b ^ v.b));
          return PlaneLine::regular(m, u.b ^ mul(m, u.a));
        }
        case PlanePoint::Kind::slope:
          return PlaneLine::regular(v.a, u.b ^ mul(v.a, u.a));
        case PlanePoint::Kind::infinity:
          return PlaneLine::vertical(u.a);
      }
      break;
    case PlanePoint::Kind::slope:
      return PlaneLine::at_infinity();  // slope + slope or slope + infinity
    case PlanePoint::Kind::infinity:
      break;
  }
  throw InternalError("join: unreachable point kinds");
}

PlanePoint Plane::meet(const PlaneLine& l, const PlaneLine& m) const {
  if (l == m) throw InternalError("meet: degenerate pair " + l.text());
  const PlaneLine& u = l.kind <= m.kind ? l : m;
  const PlaneLine& v = l.kind <= m.kind ? m : l;
  switch (u.kind) {
    case PlaneLine::Kind::regular:
      switch (v.kind) {
        case PlaneLine::Kind::regular: {
          if (u.a == v.a) return PlanePoint::slope(u.a);
          const FieldElem x = solve_left(FieldElem(u.a ^ v.a), FieldElem(u.b ^ v.b));
          return PlanePoint::affine(x, mul(u.a, x) ^ u.b);
        }
        case PlaneLine::Kind::vertical:
          return PlanePoint::affine(v.a, mul(u.a, v.a) ^ u.b);
        case PlaneLine::Kind::at_infinity:
          return PlanePoint::slope(u.a);
      }
      break;
    case PlaneLine::Kind::vertical:
      return PlanePoint::infinity();  // vertical + vertical or vertical + at-infinity
    case PlaneLine::Kind::at_infinity:
      break;
  }
  throw InternalError("meet: unreachable line kinds");
}

std::uint32_t Plane::index_of(const PlanePoint& p) const {
  switch (p.kind) {
    case PlanePoint::Kind::affine: return std::uint32_t(p.a) * n_ + p.b;
    case PlanePoint::Kind::slope: return n_ * n_ + p.a;
    case PlanePoint::Kind::infinity: return n_ * n_ + n_;
  }
  throw InternalError("index_of: unreachable point kind");
}

std::uint32_t Plane::index_of(const PlaneLine& l) const {
  switch (l.kind) {
    case PlaneLine::Kind::regular: return std::uint32_t(l.a) * n_ + l.b;
    case PlaneLine::Kind::vertical: return n_ * n_ + l.a;
    case PlaneLine::Kind::at_infinity: return n_ * n_ + n_;
  }
  throw InternalError("index_of: unreachable line kind");
}

PlanePoint Plane::point_at(std::uint32_t index) const {
  if (index < n_ * n_) return PlanePoint::affine(index / n_, index % n_);
  if (index < n_ * n_ + n_) return PlanePoint::slope(index - n_ * n_);
  if (index == n_ * n_ + n_) return PlanePoint::infinity();
  throw InternalError("point_at: index out of range");
}

PlaneLine Plane::line_at(std::uint32_t index) const {
  if (index < n_ * n_) return PlaneLine::regular(index / n_, index % n_);
  if (index < n_ * n_ + n_) return PlaneLine::vertical(index - n_ * n_);
  if (index == n_ * n_ + n_) return PlaneLine::at_infinity();
  throw InternalError("line_at: index out of range");
}

std::vector<std::uint32_t> Plane::points_on_line(const PlaneLine& l) const {
  std::vector<std::uint32_t> out;
  out.reserve(n_ + 1);
  switch (l.kind) {
    case PlaneLine::Kind::regular:
      for (std::uint32_t t = 0; t < n_; ++t) out.push_back(t * n_ + (mul(l.a, t) ^ l.b));
      out.push_back(n_ * n_ + l.a);
      break;
    case PlaneLine::Kind::vertical:
      for (std::uint32_t y = 0; y < n_; ++y) out.push_back(std::uint32_t(l.a) * n_ + y);
      out.push_back(n_ * n_ + n_);
      break;
    case PlaneLine::Kind::at_infinity:
      for (std::uint32_t m = 0; m < n_; ++m) out.push_back(n_ * n_ + m);
      out.push_back(n_ * n_ + n_);
      break;
  }
  return out;  // ascending by construction: the major coordinate increases
}

std::vector<std::uint32_t> Plane::lines_through_point(const PlanePoint& p) const {
  std::vector<std::uint32_t> out;
  out.reserve(n_ + 1);
  switch (p.kind) {
    case PlanePoint::Kind::affine:
      for (std::uint32_t m = 0; m < n_; ++m) out.push_back(m * n_ + (mul(m, p.a) ^ p.b));
      out.push_back(n_ * n_ + p.a);
      break;
    case PlanePoint::Kind::slope:
      for (std::uint32_t k = 0; k < n_; ++k) out.push_back(std::uint32_t(p.a) * n_ + k);
      out.push_back(n_ * n_ + n_);
      break;
    case PlanePoint::Kind::infinity:
      for (std::uint32_t c = 0; c < n_; ++c) out.push_back(n_ * n_ + c);
      out.push_back(n_ * n_ + n_);
      break;
  }
  return out;
}

IncidenceStructure IncidenceStructure::from_plane(const Plane& plane) {
  if (plane.order() > 64) {
    throw InputError("incidence structure: explicit bitmap is limited to order <= 64");
  }
  const std::uint32_t count = plane.point_count();
  IncidenceStructure s;
  s.num_points = count;
  s.num_lines = count;
  s.line_points = BitMatrix(count, count);
  for (std::uint32_t li = 0; li < count; ++li) {
    for (const std::uint32_t pi : plane.points_on_line(plane.line_at(li))) s.line_points.set(li, pi);
  }
  return s;
}

IncidenceStructure restrict_structure(const Plane& plane,
                                      std::span<const PlanePoint> points,
                                      std::span<const PlaneLine> lines) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw InternalError("restrict: duplicate point " + points[i].text());
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i] == lines[j]) throw InternalError("restrict: duplicate line " + lines[i].text());
    }
  }
  IncidenceStructure s;
  s.num_points = std::uint32_t(points.size());
  s.num_lines = std::uint32_t(lines.size());
  s.line_points = BitMatrix(s.num_lines, s.num_points);
  for (std::uint32_t li = 0; li < s.num_lines; ++li) {
    for (std::uint32_t pi = 0; pi < s.num_points; ++pi) {
      if (plane.incident(points[pi], lines[li])) s.line_points.set(li, pi);
    }
  }
  return s;
}

namespace {

// |row(a) & row(b) & row(c)| over one matrix
std::uint64_t and3_popcount(const BitMatrix& m, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  std::uint64_t total = 0;
  const std::uint64_t* ra = m.row(a);
  const std::uint64_t* rb = m.row(b);
  const std::uint64_t* rc = m.row(c);
  for (std::size_t i = 0; i < m.words_per_row(); ++i) {
    total += std::uint64_t(std::popcount(ra[i] & rb[i] & rc[i]));
  }
  return total;
}

PlaneAxiomCheck check_unique_cover(const BitMatrix& rows, const char* kind_a, const char* kind_b) {
  PlaneAxiomCheck chk;
  chk.ok = true;
  for (std::uint32_t i = 0; i < rows.rows() && chk.ok; ++i) {
    for (std::uint32_t j = i + 1; j < rows.rows(); ++j) {
      ++chk.probes;
      const std::uint64_t common = rows.and_popcount(i, j);
      if (common != 1) {
        std::ostringstream os;
        os << kind_a << " " << i << " and " << j << " share " << common << " " << kind_b;
        chk = {false, chk.probes, os.str()};
        break;
      }
    }
  }
  return chk;
}

PlaneAxiomCheck find_quadrilateral(const BitMatrix& point_lines) {
  PlaneAxiomCheck chk;
  const std::uint32_t np = point_lines.rows();
  if (np < 4) {
    chk.witness = "fewer than four points";
    return chk;
  }
  const auto collinear = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    return and3_popcount(point_lines, a, b, c) > 0;
  };
  if (np <= 16) {
    for (std::uint32_t a = 0; a < np; ++a)
      for (std::uint32_t b = a + 1; b < np; ++b)
        for (std::uint32_t c = b + 1; c < np; ++c)
          for (std::uint32_t d = c + 1; d < np; ++d) {
            ++chk.probes;
            if (!collinear(a, b, c) && !collinear(a, b, d) && !collinear(a, c, d) &&
                !collinear(b, c, d)) {
              std::ostringstream os;
              os << "points " << a << " " << b << " " << c << " " << d;
              return PlaneAxiomCheck{true, chk.probes, os.str()};
            }
          }
    chk.witness = "no four points in general position";
    return chk;
  }
  // greedy: extend a pair to a triangle, then to a quadrilateral
  const std::uint32_t a = 0, b = 1;
  for (std::uint32_t c = 2; c < np; ++c) {
    ++chk.probes;
    if (collinear(a, b, c)) continue;
    for (std::uint32_t d = 2; d < np; ++d) {
      if (d == c) continue;
      ++chk.probes;
      if (!collinear(a, b, d) && !collinear(a, c, d) && !collinear(b, c, d)) {
        std::ostringstream os;
        os << "points " << a << " " << b << " " << c << " " << d;
        return PlaneAxiomCheck{true, chk.probes, os.str()};
      }
    }
  }
  chk.witness = "no four points in general position";
  return chk;
}

}  // namespace

PlaneAxiomReport verify_plane_axioms(const IncidenceStructure& s) {
  PlaneAxiomReport rep;
  const BitMatrix point_lines = s.line_points.transposed();
  rep.points_joined_once = check_unique_cover(point_lines, "points", "lines");
  rep.lines_meet_once = check_unique_cover(s.line_points, "lines", "points");
  rep.quadrilateral = find_quadrilateral(point_lines);
  return rep;
}

PlaneAxiomReport verify_plane_axioms_sampled(const Plane& plane, std::uint64_t seed,
                                             std::int64_t pairs) {
  PlaneAxiomReport rep;
  const std::uint32_t count = plane.point_count();
  std::mt19937_64 rng(seed);
  const auto draw_pair = [&rng, count]() {
    std::uint32_t a = std::uint32_t(rng() % count);
    std::uint32_t b = std::uint32_t(rng() % count);
    while (b == a) b = std::uint32_t(rng() % count);
    return std::pair<std::uint32_t, std::uint32_t>(a, b);
  };

  rep.points_joined_once.ok = true;
  for (std::int64_t i = 0; i < pairs; ++i) {
    const auto [pi, qi] = draw_pair();
    const PlanePoint p = plane.point_at(pi);
    const PlanePoint q = plane.point_at(qi);
    const PlaneLine l = plane.join(p, q);
    ++rep.points_joined_once.probes;
    int common = 0;
    for (const std::uint32_t li : plane.lines_through_point(p)) {
      if (plane.incident(q, plane.line_at(li))) ++common;
    }
    if (!plane.incident(p, l) || !plane.incident(q, l) || common != 1) {
      std::ostringstream os;
      os << "points " << pi << " and " << qi << " share " << common << " lines";
      rep.points_joined_once = {false, rep.points_joined_once.probes, os.str()};
      break;
    }
  }

  rep.lines_meet_once.ok = true;
  for (std::int64_t i = 0; i < pairs; ++i) {
    const auto [li, mi] = draw_pair();
    const PlaneLine l = plane.line_at(li);
    const PlaneLine m = plane.line_at(mi);
    const PlanePoint p = plane.meet(l, m);
    ++rep.lines_meet_once.probes;
    int common = 0;
    for (const std::uint32_t pi : plane.points_on_line(l)) {
      if (plane.incident(plane.point_at(pi), m)) ++common;
    }
    if (!plane.incident(p, l) || !plane.incident(p, m) || common != 1) {
      std::ostringstream os;
      os << "lines " << li << " and " << mi << " share " << common << " points";
      rep.lines_meet_once = {false, rep.lines_meet_once.probes, os.str()};
      break;
    }
  }

  // the unit square is always in general position
  const PlanePoint quad[4] = {PlanePoint::affine(0, 0), PlanePoint::affine(1, 0),
                              PlanePoint::affine(0, 1), PlanePoint::affine(1, 1)};
  rep.quadrilateral.ok = true;
  rep.quadrilateral.witness = "affine unit square";
  for (int i = 0; i < 4 && rep.quadrilateral.ok; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const PlaneLine l = plane.join(quad[i], quad[j]);
      ++rep.quadrilateral.probes;
      for (int t = 0; t < 4; ++t) {
        if (t == i || t == j) continue;
        if (plane.incident(quad[t], l)) {
          rep.quadrilateral = {false, rep.quadrilateral.probes,
                               "three of the affine unit square are collinear"};
          break;
        }
      }
    }
  }
  return rep;
}

void export_incidence_text(const Plane& plane, std::ostream& out) {
  out << "plane n=" << plane.order() << " source=" << plane.presemifield().source << "\n";
  const std::uint32_t count = plane.point_count();
  for (std::uint32_t li = 0; li < count; ++li) {
    const auto pts = plane.points_on_line(plane.line_at(li));
    for (std::size_t i = 0; i < pts.size(); ++i) out << pts[i] << (i + 1 == pts.size() ? "" : " ");
    out << "\n";
  }
}

void export_incidence_packed(const Plane& plane, std::ostream& out) {
  out << "plane n=" << plane.order() << " source=" << plane.presemifield().source
      << " format=packed\n";
  const std::uint32_t count = plane.point_count();
  std::vector<char> row((count + 7) / 8);
  for (std::uint32_t li = 0; li < count; ++li) {
    std::fill(row.begin(), row.end(), 0);
    for (const std::uint32_t pi : plane.points_on_line(plane.line_at(li))) {
      row[pi >> 3] = char(row[pi >> 3] | (1 << (pi & 7)));
    }
    out.write(row.data(), std::streamsize(row.size()));
  }
}

}  // namespace fanoforge::geometry
