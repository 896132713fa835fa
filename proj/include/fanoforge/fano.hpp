#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "fanoforge/plane.hpp"
#include "fanoforge/polarity.hpp"

namespace fanoforge::fano {

using geometry::Plane;
using geometry::PlaneLine;
using geometry::PlanePoint;
using polarity::PolarityGraph;

// A triangle on non-absolute vertices, ascending, with the partition class of
// each vertex. Good triangles have three distinct classes by construction.
struct Triangle {
  std::array<std::uint32_t, 3> v{};
  std::array<std::int32_t, 3> cls{};

  auto operator<=>(const Triangle&) const = default;
};

struct TriangleCensus {
  std::uint32_t n = 0;
  std::int64_t nonabsolute_edges = 0;                // n(n-1)(n+1)/2
  std::int64_t total_triangles_lower_bound = 0;      // (n^3 - n)/6
  std::int64_t triangles_at_absolutes_upper_bound = 0;  // (n+1)(n/2 - 1)
  std::int64_t good_triangles_exact = 0;
  std::int64_t fano_lower_bound = 0;

  std::string text() const;  // one stable "census ..." line
};

// (n^3 - n)/6 - (n+1)(n/2 - 1); defined for even n >= 2 and always positive
std::int64_t fano_lower_bound(std::int64_t n);

// edges with both endpoints non-absolute
std::int64_t count_nonabsolute_edges(const PolarityGraph& g, unsigned workers = 1);

// The unique triangle completion of a non-absolute edge. The third vertex
// may be absolute, in which case the edge spawns no good triangle.
struct EdgeTriangle {
  std::uint32_t third = 0;
  bool third_absolute = false;
  Triangle triangle;  // meaningful only when the third vertex is not absolute
};
EdgeTriangle triangle_of_edge(const PolarityGraph& g, std::uint32_t u, std::uint32_t v);

// Visits every triangle whose vertices are all non-absolute, in canonical
// ascending order (sorted by least vertex, then second). Return false from
// the visitor to stop early.
void enumerate_good_triangles(const PolarityGraph& g,
                              const std::function<bool(const Triangle&)>& visit);

// exact triangle count at one absolute vertex; never exceeds n/2 - 1
std::int64_t triangles_at_absolute(const PolarityGraph& g, std::uint32_t a);

// Full census: edge count against the closed formula, exact good-triangle
// count, the cross-check that absorbed edges equal the per-absolute triangle
// recount, and the lower-bound assertion.
TriangleCensus count_fanos_through_pole(const PolarityGraph& g, unsigned workers = 1);

// A seven-point subplane witness: the pole, three absolutes, and a good
// triangle, with their polar lines and the full 7x7 incidence bitmap.
struct FanoCertificate {
  std::uint32_t n = 0;
  std::string source;
  unsigned k = 0;
  std::uint32_t modulus = 0;
  std::array<PlanePoint, 7> points{};  // pole, a_i, a_j, a_k, v_i, v_j, v_k
  std::array<PlaneLine, 7> lines{};    // polar images, same order
  std::uint64_t incidence_bits = 0;    // bit r*7+c = point r on line c
  bool verified = false;

  std::string text() const;  // stable, byte-identical across runs
};

struct CertificateCheck {
  bool ok = true;
  std::string reason;
};

// Re-derives everything the certificate claims: ranges, distinctness, polar
// pairing, the pole, the bitmap, 3-regularity, the plane axioms of the
// restricted structure, and the seven-point polarity adjacency pattern.
CertificateCheck verify_certificate(const Plane& plane, const FanoCertificate& cert);

// certificate for one good triangle; self-verifies before returning
FanoCertificate assemble_fano(const PolarityGraph& g, const Triangle& t);

// certificate for the canonically first good triangle
FanoCertificate find_fano(const PolarityGraph& g, unsigned workers = 1);

}  // namespace fanoforge::fano
