#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fanoforge/bitset.hpp"
#include "fanoforge/plane.hpp"

namespace fanoforge::polarity {

using geometry::Plane;
using geometry::PlaneLine;
using geometry::PlanePoint;

// The canonical polarity: affine (a, b) <-> regular (a, b), slope m <->
// vertical m, infinity <-> the line at infinity. Point and line indices
// coincide under it.
PlaneLine polar(const PlanePoint& p);
PlanePoint polar(const PlaneLine& l);

// p lies on its own polar line
bool is_absolute(const Plane& plane, const PlanePoint& p);

// sorted indices of all absolute points; a plane of even order n must have
// exactly n+1 of them or the polarity is not orthogonal
std::vector<std::uint32_t> absolute_points(const Plane& plane);

// the single line through all the given point indices, or an invariant
// breach naming the label; used to certify that the absolutes are collinear
PlaneLine common_line_of(const Plane& plane, const std::vector<std::uint32_t>& points,
                         const std::string& label = "points");

struct PreservationCheck {
  bool ok = false;
  std::int64_t probes = 0;
  std::string witness;
};

// u on polar(v) iff v on polar(u); commutativity of the multiplication is
// exactly what makes this hold, so a non-commutative algebra fails here
PreservationCheck check_incidence_preservation(const Plane& plane, bool exhaustive,
                                               std::uint64_t seed, std::int64_t samples);

// Polarity graph on the plane's point indices: u ~ v iff point u lies on the
// polar line of v. Loops (absolute points) are kept as a flag set; neighbor
// lists and adjacency never include the vertex itself. Immutable after
// construction and safe to share across worker threads.
class PolarityGraph {
public:
  // requires a presemifield additionally verified commutative
  explicit PolarityGraph(std::shared_ptr<const Plane> plane);

  const Plane& plane() const { return *plane_; }
  std::shared_ptr<const Plane> plane_ptr() const { return plane_; }
  std::uint32_t order() const { return plane_->order(); }
  std::uint32_t vertex_count() const { return plane_->point_count(); }

  bool adjacent(std::uint32_t u, std::uint32_t v) const;  // false when u == v
  bool loop_at(std::uint32_t v) const;
  // sorted, n+1 entries for non-absolute vertices and n for absolute ones
  std::vector<std::uint32_t> neighbors(std::uint32_t v) const;

  const std::vector<std::uint32_t>& absolutes() const { return absolutes_; }
  std::uint32_t pole() const { return pole_; }          // the polar point of the absolute line
  const PlaneLine& baer_line() const { return baer_; }  // the line carrying every absolute

  // classes()[i] lists the non-absolute, non-pole vertices attached to
  // absolutes()[i]; together with the pole and the absolutes they partition
  // the vertex set
  const std::vector<std::vector<std::uint32_t>>& classes() const { return classes_; }
  static constexpr std::int32_t kPole = -1;
  static constexpr std::int32_t kAbsolute = -2;
  std::int32_t class_of(std::uint32_t v) const { return class_of_[v]; }

  // the meet of the two polar lines; the one vertex adjacent to both u and v
  // (for an absolute endpoint this can be u or v itself, through its loop)
  std::uint32_t common_neighbor(std::uint32_t u, std::uint32_t v) const;

  // line-incidence rows, loop bits included; lazily built, order <= 256 only
  const BitMatrix& adjacency_rows() const;

private:
  std::shared_ptr<const Plane> plane_;
  std::vector<std::uint32_t> absolutes_;
  std::uint32_t pole_ = 0;
  PlaneLine baer_;
  std::vector<std::vector<std::uint32_t>> classes_;
  std::vector<std::int32_t> class_of_;
  mutable std::once_flag adj_once_;
  mutable std::unique_ptr<BitMatrix> adj_;
};

// The five structural properties of the graph, each checked independently:
//   unique_common_neighbor  every vertex pair has exactly one common neighbor
//   c4_free                 no vertex pair has two common neighbors
//   absolute_independence   absolute vertices are pairwise non-adjacent
//   neighborhood_degree     every neighborhood induces maximum degree <= 1
//   edge_triangle           every edge between non-absolute vertices lies in
//                           exactly one triangle
// Common-neighbor counts use the loop-carrying incidence rows.
struct GraphPropertyCheck {
  bool ok = true;
  std::int64_t probes = 0;
  std::string witness;
};

struct GraphPropertyReport {
  GraphPropertyCheck unique_common_neighbor;
  GraphPropertyCheck c4_free;
  GraphPropertyCheck absolute_independence;
  GraphPropertyCheck neighborhood_degree;
  GraphPropertyCheck edge_triangle;

  bool all() const {
    return unique_common_neighbor.ok && c4_free.ok && absolute_independence.ok &&
           neighborhood_degree.ok && edge_triangle.ok;
  }
};

enum class CheckMode { exhaustive, sampled };

GraphPropertyReport check_graph_properties(const PolarityGraph& g, CheckMode mode,
                                           std::uint64_t seed, std::int64_t samples,
                                           unsigned workers);

// exhaustive core over explicit loop-carrying rows; reused by mutation tests
GraphPropertyReport check_graph_properties_rows(const BitMatrix& rows,
                                                const std::vector<std::uint32_t>& absolutes,
                                                unsigned workers);

// "# polarity-graph n=<order> absolutes=<count> pole=<index>" then one
// "u v" edge per line with u < v, loops as "u u", ascending
void export_graph(const PolarityGraph& g, std::ostream& out);

}  // namespace fanoforge::polarity
