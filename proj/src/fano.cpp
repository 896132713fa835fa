#include "fanoforge/fano.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>

#include "fanoforge/errors.hpp"
#include "fanoforge/parallel.hpp"

namespace fanoforge::fano {

using polarity::polar;

std::string TriangleCensus::text() const {
  std::ostringstream os;
  os << "census n=" << n << " nonabsolute-edges=" << nonabsolute_edges
     << " triangle-lb=" << total_triangles_lower_bound
     << " absolute-cap=" << triangles_at_absolutes_upper_bound
     << " good-triangles=" << good_triangles_exact << " fano-lb=" << fano_lower_bound;
  return os.str();
}

std::int64_t fano_lower_bound(std::int64_t n) {
  if (n < 2 || (n % 2) != 0) throw InputError("lower bound: order must be even and >= 2");
  if (n > 2000000) throw InputError("lower bound: order too large for 64-bit arithmetic");
  const std::int64_t triangles = (n * n * n - n) / 6;
  const std::int64_t cap = (n + 1) * (n / 2 - 1);
  const std::int64_t bound = triangles - cap;
  if (bound <= 0) throw InternalError("lower bound: nonpositive at even order " + std::to_string(n));
  return bound;
}

namespace {

bool is_absolute_vertex(const PolarityGraph& g, std::uint32_t v) {
  return g.class_of(v) == PolarityGraph::kAbsolute;
}

Triangle make_triangle(const PolarityGraph& g, std::uint32_t u, std::uint32_t v,
                       std::uint32_t w) {
  Triangle t;
  t.v = {u, v, w};
  std::sort(t.v.begin(), t.v.end());
  for (int i = 0; i < 3; ++i) t.cls[i] = g.class_of(t.v[i]);
  if (t.v[0] == t.v[1] || t.v[1] == t.v[2]) {
    throw InternalError("triangle: repeated vertex");
  }
  for (int i = 0; i < 3; ++i) {
    if (t.cls[i] < 0) throw InternalError("triangle: vertex outside the partition classes");
  }
  if (t.cls[0] == t.cls[1] || t.cls[0] == t.cls[2] || t.cls[1] == t.cls[2]) {
    throw InternalError("triangle: two vertices share a partition class");
  }
  return t;
}

}  // namespace

std::int64_t count_nonabsolute_edges(const PolarityGraph& g, unsigned workers) {
  const Plane& plane = g.plane();
  const std::uint32_t count = g.vertex_count();
  return map_reduce(
      std::size_t(0), std::size_t(count), workers, std::int64_t(0),
      [&](std::size_t b, std::size_t e) {
        std::int64_t edges = 0;
        for (std::size_t u = b; u < e; ++u) {
          if (is_absolute_vertex(g, std::uint32_t(u))) continue;
          for (const std::uint32_t v : plane.points_on_line(plane.line_at(std::uint32_t(u)))) {
            if (v > u && !is_absolute_vertex(g, v)) ++edges;
          }
        }
        return edges;
      },
      [](std::int64_t a, std::int64_t b) { return a + b; });
}

EdgeTriangle triangle_of_edge(const PolarityGraph& g, std::uint32_t u, std::uint32_t v) {
  if (u == v) throw InternalError("triangle_of_edge: identical endpoints");
  if (is_absolute_vertex(g, u) || is_absolute_vertex(g, v)) {
    throw InternalError("triangle_of_edge: absolute endpoint");
  }
  if (!g.adjacent(u, v)) throw InternalError("triangle_of_edge: not an edge");
  const std::uint32_t w = g.common_neighbor(u, v);
  if (w == u || w == v) throw InternalError("triangle_of_edge: degenerate common neighbor");
  EdgeTriangle out;
  out.third = w;
  out.third_absolute = is_absolute_vertex(g, w);
  if (!out.third_absolute) out.triangle = make_triangle(g, u, v, w);
  return out;
}

void enumerate_good_triangles(const PolarityGraph& g,
                              const std::function<bool(const Triangle&)>& visit) {
  const Plane& plane = g.plane();
  const std::uint32_t count = g.vertex_count();
  for (std::uint32_t u = 0; u < count; ++u) {
    if (is_absolute_vertex(g, u)) continue;
    for (const std::uint32_t v : plane.points_on_line(plane.line_at(u))) {
      if (v <= u || is_absolute_vertex(g, v)) continue;
      const std::uint32_t w = g.common_neighbor(u, v);
      if (is_absolute_vertex(g, w)) continue;
      if (w <= v) continue;  // emit each triangle at its least edge only
      if (!visit(make_triangle(g, u, v, w))) return;
    }
  }
}

std::int64_t triangles_at_absolute(const PolarityGraph& g, std::uint32_t a) {
  if (!is_absolute_vertex(g, a)) {
    throw InternalError("triangles_at_absolute: vertex " + std::to_string(a) + " is not absolute");
  }
  const std::vector<std::uint32_t> nbrs = g.neighbors(a);
  std::int64_t cnt = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (g.adjacent(nbrs[i], nbrs[j])) ++cnt;
    }
  }
  const std::int64_t cap = std::int64_t(g.order()) / 2 - 1;
  if (cnt > cap) {
    throw InternalError("triangle cap violated at absolute " + std::to_string(a) + ": " +
                        std::to_string(cnt) + " > " + std::to_string(cap));
  }
  return cnt;
}

TriangleCensus count_fanos_through_pole(const PolarityGraph& g, unsigned workers) {
  const Plane& plane = g.plane();
  const std::uint32_t count = g.vertex_count();
  const std::int64_t n = g.order();

  struct EdgeScan {
    std::int64_t edges = 0;
    std::int64_t absorbed = 0;  // edges whose triangle completion is absolute
  };
  const EdgeScan scan = map_reduce(
      std::size_t(0), std::size_t(count), workers, EdgeScan{},
      [&](std::size_t b, std::size_t e) {
        EdgeScan part;
        for (std::size_t u = b; u < e; ++u) {
          if (is_absolute_vertex(g, std::uint32_t(u))) continue;
          for (const std::uint32_t v : plane.points_on_line(plane.line_at(std::uint32_t(u)))) {
            if (v <= u || is_absolute_vertex(g, v)) continue;
            ++part.edges;
            if (is_absolute_vertex(g, g.common_neighbor(std::uint32_t(u), v))) ++part.absorbed;
          }
        }
        return part;
      },
      [](EdgeScan a, const EdgeScan& b) {
        a.edges += b.edges;
        a.absorbed += b.absorbed;
        return a;
      });

  const std::int64_t edge_formula = n * (n - 1) * (n + 1) / 2;
  if (scan.edges != edge_formula) {
    throw InternalError("census: nonabsolute edge count " + std::to_string(scan.edges) +
                        " differs from formula " + std::to_string(edge_formula));
  }

  // each triangle at an absolute owns exactly one non-absolute edge
  std::int64_t at_absolutes = 0;
  for (const std::uint32_t a : g.absolutes()) at_absolutes += triangles_at_absolute(g, a);
  if (at_absolutes != scan.absorbed) {
    throw InternalError("census: absorbed edges " + std::to_string(scan.absorbed) +
                        " differ from the per-absolute triangle recount " +
                        std::to_string(at_absolutes));
  }

  if ((scan.edges - scan.absorbed) % 3 != 0) {
    throw InternalError("census: good-triangle edge total is not divisible by three");
  }

  TriangleCensus census;
  census.n = g.order();
  census.nonabsolute_edges = scan.edges;
  census.total_triangles_lower_bound = (n * n * n - n) / 6;
  census.triangles_at_absolutes_upper_bound = (n + 1) * (n / 2 - 1);
  census.good_triangles_exact = (scan.edges - scan.absorbed) / 3;
  census.fano_lower_bound = fano_lower_bound(n);
  if (census.good_triangles_exact < census.fano_lower_bound) {
    throw InternalError("census: good-triangle count " +
                        std::to_string(census.good_triangles_exact) +
                        " falls below the bound " + std::to_string(census.fano_lower_bound));
  }
  return census;
}

std::string FanoCertificate::text() const {
  std::ostringstream os;
  os << "fano-certificate n=" << n << " source=" << source << " k=" << k << " modulus=0x"
     << std::hex << modulus << std::dec << "\n";
  for (int i = 0; i < 7; ++i) os << "point " << i << " " << points[i].text() << "\n";
  for (int i = 0; i < 7; ++i) os << "line " << i << " " << lines[i].text() << "\n";
  os << "incidence 0x" << std::hex << std::setw(13) << std::setfill('0') << incidence_bits
     << std::dec << "\n";
  os << "verified " << (verified ? "true" : "false") << "\n";
  return os.str();
}

CertificateCheck verify_certificate(const Plane& plane, const FanoCertificate& cert) {
  const auto fail = [](std::string reason) { return CertificateCheck{false, std::move(reason)}; };
  const std::uint32_t n = plane.order();
  if (cert.n != n) return fail("certificate order differs from the plane order");

  for (int i = 0; i < 7; ++i) {
    const PlanePoint& p = cert.points[i];
    const bool point_ok =
        (p.kind == PlanePoint::Kind::affine && p.a < n && p.b < n) ||
        (p.kind == PlanePoint::Kind::slope && p.a < n && p.b == 0) ||
        (p.kind == PlanePoint::Kind::infinity && p.a == 0 && p.b == 0);
    if (!point_ok) return fail("point " + std::to_string(i) + " is out of range");
    const PlaneLine& l = cert.lines[i];
    const bool line_ok =
        (l.kind == PlaneLine::Kind::regular && l.a < n && l.b < n) ||
        (l.kind == PlaneLine::Kind::vertical && l.a < n && l.b == 0) ||
        (l.kind == PlaneLine::Kind::at_infinity && l.a == 0 && l.b == 0);
    if (!line_ok) return fail("line " + std::to_string(i) + " is out of range");
  }
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      if (cert.points[i] == cert.points[j]) return fail("points repeat");
      if (cert.lines[i] == cert.lines[j]) return fail("lines repeat");
    }
  }
  for (int i = 0; i < 7; ++i) {
    if (cert.lines[i] != polar(cert.points[i])) {
      return fail("line " + std::to_string(i) + " is not the polar of its point");
    }
  }

  // exactly the middle three points are absolute
  for (int i = 0; i < 7; ++i) {
    const bool expect = (i >= 1 && i <= 3);
    if (polarity::is_absolute(plane, cert.points[i]) != expect) {
      return fail("absolute pattern broken at point " + std::to_string(i));
    }
  }
  // the head point is the polar point of the absolute line
  const PlaneLine absolute_line = plane.join(cert.points[1], cert.points[2]);
  if (cert.points[0] != polar(absolute_line)) {
    return fail("first point is not the pole");
  }

  std::uint64_t recomputed = 0;
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      if (plane.incident(cert.points[r], cert.lines[c])) {
        recomputed |= std::uint64_t(1) << (r * 7 + c);
      }
    }
  }
  if (recomputed != cert.incidence_bits) return fail("incidence bitmap mismatch");

  for (int r = 0; r < 7; ++r) {
    int row = 0, col = 0;
    for (int c = 0; c < 7; ++c) {
      row += int((cert.incidence_bits >> (r * 7 + c)) & 1);
      col += int((cert.incidence_bits >> (c * 7 + r)) & 1);
    }
    if (row != 3) return fail("point " + std::to_string(r) + " is not on exactly three lines");
    if (col != 3) return fail("line " + std::to_string(r) + " does not carry exactly three points");
  }

  geometry::IncidenceStructure s;
  s.num_points = 7;
  s.num_lines = 7;
  s.line_points = BitMatrix(7, 7);
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      if ((cert.incidence_bits >> (r * 7 + c)) & 1) s.line_points.set(std::uint32_t(c), std::uint32_t(r));
    }
  }
  const geometry::PlaneAxiomReport axioms = geometry::verify_plane_axioms(s);
  if (!axioms.all()) return fail("restricted structure fails the plane axioms");

  // with lines equal to the polars, the bitmap doubles as the seven-vertex
  // loop-carrying adjacency matrix; pin it to the expected pattern
  std::uint64_t expected = 0;
  const auto set_sym = [&expected](int a, int b) {
    expected |= std::uint64_t(1) << (a * 7 + b);
    expected |= std::uint64_t(1) << (b * 7 + a);
  };
  for (int t = 1; t <= 3; ++t) {
    expected |= std::uint64_t(1) << (t * 7 + t);  // loops at the absolutes
    set_sym(0, t);                                // pole to each absolute
    set_sym(t, t + 3);                            // each absolute to its triangle vertex
  }
  set_sym(4, 5);
  set_sym(4, 6);
  set_sym(5, 6);  // the triangle
  if (cert.incidence_bits != expected) {
    return fail("subgraph adjacency differs from the seven-point polarity pattern");
  }
  return {};
}

FanoCertificate assemble_fano(const PolarityGraph& g, const Triangle& t) {
  if (!(t.v[0] < t.v[1] && t.v[1] < t.v[2])) {
    throw InternalError("assemble: triangle vertices must be strictly ascending");
  }
  for (int i = 0; i < 3; ++i) {
    if (g.class_of(t.v[i]) != t.cls[i] || t.cls[i] < 0) {
      throw InternalError("assemble: triangle classes do not match the partition");
    }
  }
  if (!g.adjacent(t.v[0], t.v[1]) || !g.adjacent(t.v[0], t.v[2]) ||
      !g.adjacent(t.v[1], t.v[2])) {
    throw InternalError("assemble: vertices do not form a triangle");
  }

  // order the triangle by partition class so absolutes pair their vertices
  std::array<std::pair<std::int32_t, std::uint32_t>, 3> by_class = {
      std::pair<std::int32_t, std::uint32_t>{t.cls[0], t.v[0]},
      {t.cls[1], t.v[1]},
      {t.cls[2], t.v[2]}};
  std::sort(by_class.begin(), by_class.end());

  const Plane& plane = g.plane();
  FanoCertificate cert;
  cert.n = g.order();
  cert.source = plane.presemifield().source;
  cert.k = plane.presemifield().k;
  cert.modulus = plane.presemifield().modulus;
  cert.points[0] = plane.point_at(g.pole());
  for (int i = 0; i < 3; ++i) {
    cert.points[1 + i] = plane.point_at(g.absolutes()[std::size_t(by_class[i].first)]);
    cert.points[4 + i] = plane.point_at(by_class[i].second);
  }
  for (int i = 0; i < 7; ++i) cert.lines[i] = polar(cert.points[i]);
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      if (plane.incident(cert.points[r], cert.lines[c])) {
        cert.incidence_bits |= std::uint64_t(1) << (r * 7 + c);
      }
    }
  }
  const CertificateCheck chk = verify_certificate(plane, cert);
  if (!chk.ok) {
    throw InternalError("assembled certificate failed verification: " + chk.reason);
  }
  cert.verified = true;
  return cert;
}

FanoCertificate find_fano(const PolarityGraph& g, unsigned workers) {
  const Plane& plane = g.plane();
  const std::uint32_t count = g.vertex_count();
  using Found = std::optional<Triangle>;
  const Found found = map_reduce(
      std::size_t(0), std::size_t(count), workers, Found{},
      [&](std::size_t b, std::size_t e) -> Found {
        for (std::size_t u = b; u < e; ++u) {
          if (is_absolute_vertex(g, std::uint32_t(u))) continue;
          for (const std::uint32_t v : plane.points_on_line(plane.line_at(std::uint32_t(u)))) {
            if (v <= u || is_absolute_vertex(g, v)) continue;
            const std::uint32_t w = g.common_neighbor(std::uint32_t(u), v);
            if (is_absolute_vertex(g, w) || w <= v) continue;
            return make_triangle(g, std::uint32_t(u), v, w);
          }
        }
        return {};
      },
      [](Found a, Found b) { return a ? a : b; });  // chunk order keeps it canonical
  if (!found) throw InternalError("no seven-point subplane found");
  return assemble_fano(g, *found);
}

}  // namespace fanoforge::fano
