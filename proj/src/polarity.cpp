#include "fanoforge/polarity.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <random>
#include <sstream>

#include "fanoforge/errors.hpp"
#include "fanoforge/parallel.hpp"

namespace fanoforge::polarity {

PlaneLine polar(const PlanePoint& p) {
  switch (p.kind) {
    case PlanePoint::Kind::affine: return PlaneLine::regular(p.a, p.b);
    case PlanePoint::Kind::slope: return PlaneLine::vertical(p.a);
    case PlanePoint::Kind::infinity: return PlaneLine::at_infinity();
  }
  throw InternalError("polar: unreachable point kind");
}

PlanePoint polar(const PlaneLine& l) {
  switch (l.kind) {
    case PlaneLine::Kind::regular: return PlanePoint::affine(l.a, l.b);
    case PlaneLine::Kind::vertical: return PlanePoint::slope(l.a);
    case PlaneLine::Kind::at_infinity: return PlanePoint::infinity();
  }
  throw InternalError("polar: unreachable line kind");
}

bool is_absolute(const Plane& plane, const PlanePoint& p) {
  return plane.incident(p, polar(p));
}

std::vector<std::uint32_t> absolute_points(const Plane& plane) {
  std::vector<std::uint32_t> out;
  const std::uint32_t count = plane.point_count();
  for (std::uint32_t i = 0; i < count; ++i) {
    if (is_absolute(plane, plane.point_at(i))) out.push_back(i);
  }
  const std::uint32_t expected = plane.order() + 1;
  if (out.size() != expected) {
    throw InternalError("not orthogonal: expected " + std::to_string(expected) +
                        " absolute points, found " + std::to_string(out.size()));
  }
  return out;
}

PlaneLine common_line_of(const Plane& plane, const std::vector<std::uint32_t>& points,
                         const std::string& label) {
  if (points.size() < 2) throw InternalError(label + ": need at least two points for a common line");
  const PlaneLine line =
      plane.join(plane.point_at(points[0]), plane.point_at(points[1]));
  for (const std::uint32_t pi : points) {
    if (!plane.incident(plane.point_at(pi), line)) {
      throw InternalError(label + " not collinear: point " + std::to_string(pi) + " is off " +
                          line.text());
    }
  }
  return line;
}

PreservationCheck check_incidence_preservation(const Plane& plane, bool exhaustive,
                                               std::uint64_t seed, std::int64_t samples) {
  PreservationCheck chk;
  chk.ok = true;
  const std::uint32_t count = plane.point_count();
  const auto probe = [&](std::uint32_t u, std::uint32_t v) {
    const PlanePoint pu = plane.point_at(u);
    const PlanePoint pv = plane.point_at(v);
    const bool uv = plane.incident(pu, polar(pv));
    const bool vu = plane.incident(pv, polar(pu));
    ++chk.probes;
    if (uv != vu) {
      std::ostringstream os;
      os << "u=" << u << " v=" << v << " u-on-polar-v=" << uv << " v-on-polar-u=" << vu;
      chk = {false, chk.probes, os.str()};
      return false;
    }
    return true;
  };
  if (exhaustive) {
    for (std::uint32_t u = 0; u < count && chk.ok; ++u) {
      for (std::uint32_t v = u + 1; v < count; ++v) {
        if (!probe(u, v)) break;
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::int64_t i = 0; i < samples && chk.ok; ++i) {
      const std::uint32_t u = std::uint32_t(rng() % count);
      std::uint32_t v = std::uint32_t(rng() % count);
      while (v == u) v = std::uint32_t(rng() % count);
      if (!probe(u, v)) break;
    }
  }
  return chk;
}

PolarityGraph::PolarityGraph(std::shared_ptr<const Plane> plane) : plane_(std::move(plane)) {
  if (!plane_) throw InternalError("polarity graph: null plane");
  if (!plane_->presemifield().verified_commutative) {
    throw InputError("polarity graph: presemifield must be verified commutative");
  }
  absolutes_ = absolute_points(*plane_);
  baer_ = common_line_of(*plane_, absolutes_, "absolute points");
  pole_ = plane_->index_of(polar(baer_));

  // the pole's neighborhood is exactly the absolute set
  const std::vector<std::uint32_t> pole_line = plane_->points_on_line(plane_->line_at(pole_));
  if (pole_line != absolutes_) {
    throw InternalError("pole neighborhood differs from the absolute set");
  }

  const std::uint32_t count = plane_->point_count();
  const std::uint32_t n = plane_->order();
  constexpr std::int32_t kUnassigned = -3;
  class_of_.assign(count, kUnassigned);
  for (const std::uint32_t a : absolutes_) class_of_[a] = kAbsolute;
  if (class_of_[pole_] != kUnassigned) throw InternalError("pole is an absolute point");
  class_of_[pole_] = kPole;

  classes_.resize(absolutes_.size());
  for (std::size_t i = 0; i < absolutes_.size(); ++i) {
    const std::uint32_t a = absolutes_[i];
    for (const std::uint32_t v : plane_->points_on_line(plane_->line_at(a))) {
      if (v == a || v == pole_) continue;
      if (class_of_[v] != kUnassigned) {
        throw InternalError("partition defect: vertex " + std::to_string(v) +
                            " reached from two absolutes");
      }
      class_of_[v] = std::int32_t(i);
      classes_[i].push_back(v);
    }
    if (classes_[i].size() != std::size_t(n) - 1) {
      throw InternalError("partition defect: class " + std::to_string(i) + " has " +
                          std::to_string(classes_[i].size()) + " vertices, expected " +
                          std::to_string(n - 1));
    }
  }
  for (std::uint32_t v = 0; v < count; ++v) {
    if (class_of_[v] == kUnassigned) {
      throw InternalError("partition defect: vertex " + std::to_string(v) + " uncovered");
    }
  }
}

bool PolarityGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
  if (u == v) return false;
  return plane_->incident(plane_->point_at(u), plane_->line_at(v));
}

bool PolarityGraph::loop_at(std::uint32_t v) const {
  return is_absolute(*plane_, plane_->point_at(v));
}

std::vector<std::uint32_t> PolarityGraph::neighbors(std::uint32_t v) const {
  std::vector<std::uint32_t> out = plane_->points_on_line(plane_->line_at(v));
  out.erase(std::remove(out.begin(), out.end(), v), out.end());
  return out;
}

std::uint32_t PolarityGraph::common_neighbor(std::uint32_t u, std::uint32_t v) const {
  if (u == v) throw InternalError("common_neighbor: identical vertices");
  return plane_->index_of(plane_->meet(plane_->line_at(u), plane_->line_at(v)));
}

const BitMatrix& PolarityGraph::adjacency_rows() const {
  std::call_once(adj_once_, [this] {
    if (order() > 256) throw InputError("adjacency rows: explicit cache is limited to order 256");
    const std::uint32_t count = vertex_count();
    auto m = std::make_unique<BitMatrix>(count, count);
    for (std::uint32_t v = 0; v < count; ++v) {
      for (const std::uint32_t p : plane_->points_on_line(plane_->line_at(v))) m->set(v, p);
    }
    adj_ = std::move(m);
  });
  if (!adj_) throw InputError("adjacency rows: explicit cache is limited to order 256");
  return *adj_;
}

namespace {

GraphPropertyCheck merge_checks(GraphPropertyCheck a, const GraphPropertyCheck& b) {
  if (a.ok && !b.ok) {
    a.ok = false;
    a.witness = b.witness;
  }
  a.probes += b.probes;
  return a;
}

// common-neighbor count and first common vertex of two sorted index lists
std::pair<int, std::int64_t> merge_common(const std::vector<std::uint32_t>& a,
                                          const std::vector<std::uint32_t>& b) {
  int cnt = 0;
  std::int64_t first = -1;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      if (cnt == 0) first = a[i];
      ++cnt;
      ++i;
      ++j;
    }
  }
  return {cnt, first};
}

struct PairScan {
  GraphPropertyCheck unique;
  GraphPropertyCheck c4;
};

}  // namespace

GraphPropertyReport check_graph_properties_rows(const BitMatrix& rows,
                                                const std::vector<std::uint32_t>& absolutes,
                                                unsigned workers) {
  const std::uint32_t count = rows.rows();
  std::vector<std::uint8_t> absolute_flag(count, 0);
  for (const std::uint32_t a : absolutes) absolute_flag[a] = 1;

  GraphPropertyReport rep;

  // (a) + (b): one sweep over vertex pairs
  const PairScan pairs = map_reduce(
      std::size_t(0), std::size_t(count), workers, PairScan{},
      [&](std::size_t ub, std::size_t ue) {
        PairScan part;
        for (std::size_t u = ub; u < ue; ++u) {
          for (std::uint32_t v = std::uint32_t(u) + 1; v < count; ++v) {
            ++part.unique.probes;
            ++part.c4.probes;
            const std::uint64_t c = rows.and_popcount(std::uint32_t(u), v);
            if (c != 1 && part.unique.ok) {
              std::ostringstream os;
              os << "u=" << u << " v=" << v << " common=" << c;
              part.unique.ok = false;
              part.unique.witness = os.str();
            }
            if (c >= 2 && part.c4.ok) {
              std::ostringstream os;
              os << "u=" << u << " v=" << v << " common=" << c;
              part.c4.ok = false;
              part.c4.witness = os.str();
            }
          }
          if (!part.unique.ok && !part.c4.ok) break;
        }
        return part;
      },
      [](PairScan acc, const PairScan& p) {
        acc.unique = merge_checks(std::move(acc.unique), p.unique);
        acc.c4 = merge_checks(std::move(acc.c4), p.c4);
        return acc;
      });
  rep.unique_common_neighbor = pairs.unique;
  rep.c4_free = pairs.c4;

  // (c): absolute vertices pairwise non-adjacent
  for (std::size_t i = 0; i < absolutes.size(); ++i) {
    for (std::size_t j = i + 1; j < absolutes.size(); ++j) {
      ++rep.absolute_independence.probes;
      if (rows.test(absolutes[i], absolutes[j])) {
        std::ostringstream os;
        os << "absolutes " << absolutes[i] << " and " << absolutes[j] << " adjacent";
        rep.absolute_independence.ok = false;
        rep.absolute_independence.witness = os.str();
        break;
      }
    }
    if (!rep.absolute_independence.ok) break;
  }

  // (d): every neighborhood induces maximum degree <= 1
  rep.neighborhood_degree = map_reduce(
      std::size_t(0), std::size_t(count), workers, GraphPropertyCheck{},
      [&](std::size_t vb, std::size_t ve) {
        GraphPropertyCheck part;
        std::vector<std::uint64_t> mask(rows.words_per_row());
        for (std::size_t v = vb; v < ve && part.ok; ++v) {
          const std::uint64_t* rv = rows.row(std::uint32_t(v));
          std::copy(rv, rv + rows.words_per_row(), mask.begin());
          mask[v >> 6] &= ~(std::uint64_t(1) << (v & 63));  // members exclude v itself
          ++part.probes;
          for (std::size_t w = 0; w < mask.size() && part.ok; ++w) {
            std::uint64_t bits = mask[w];
            while (bits != 0) {
              const std::uint32_t m = std::uint32_t(w * 64 + std::size_t(std::countr_zero(bits)));
              bits &= bits - 1;
              std::uint64_t deg =
                  kernels::active().and_popcount(rows.row(m), mask.data(), mask.size());
              // m sits in the mask, but a loop is not a member edge
              if (rows.test(m, m)) --deg;
              if (deg > 1) {
                std::ostringstream os;
                os << "v=" << v << " member=" << m << " induced-degree=" << deg;
                part.ok = false;
                part.witness = os.str();
                break;
              }
            }
          }
        }
        return part;
      },
      [](GraphPropertyCheck acc, const GraphPropertyCheck& p) {
        return merge_checks(std::move(acc), p);
      });

  // (e): each non-absolute edge lies in exactly one triangle
  rep.edge_triangle = map_reduce(
      std::size_t(0), std::size_t(count), workers, GraphPropertyCheck{},
      [&](std::size_t ub, std::size_t ue) {
        GraphPropertyCheck part;
        for (std::size_t u = ub; u < ue && part.ok; ++u) {
          if (absolute_flag[u]) continue;
          const std::uint64_t* ru = rows.row(std::uint32_t(u));
          for (std::size_t w = 0; w < rows.words_per_row() && part.ok; ++w) {
            std::uint64_t bits = ru[w];
            while (bits != 0) {
              const std::uint32_t v = std::uint32_t(w * 64 + std::size_t(std::countr_zero(bits)));
              bits &= bits - 1;
              if (v <= u || absolute_flag[v]) continue;
              ++part.probes;
              const std::uint64_t c = rows.and_popcount(std::uint32_t(u), v);
              const std::int64_t common = rows.and_first(std::uint32_t(u), v);
              if (c != 1 || common == std::int64_t(u) || common == std::int64_t(v)) {
                std::ostringstream os;
                os << "edge u=" << u << " v=" << v << " common=" << c;
                part.ok = false;
                part.witness = os.str();
                break;
              }
            }
          }
        }
        return part;
      },
      [](GraphPropertyCheck acc, const GraphPropertyCheck& p) {
        return merge_checks(std::move(acc), p);
      });

  return rep;
}

namespace {

GraphPropertyReport check_sampled(const PolarityGraph& g, std::uint64_t seed,
                                  std::int64_t samples, unsigned workers) {
  const Plane& plane = g.plane();
  const std::uint32_t count = g.vertex_count();
  const std::uint32_t n = g.order();
  GraphPropertyReport rep;
  std::mt19937_64 rng(seed);

  // loop-carrying neighbor row of a vertex
  const auto row_of = [&plane](std::uint32_t v) {
    return plane.points_on_line(plane.line_at(v));
  };

  // probe lists are drawn up front so worker count cannot shift the sequence
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_probes;
  pair_probes.reserve(std::size_t(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    const std::uint32_t u = std::uint32_t(rng() % count);
    std::uint32_t v = std::uint32_t(rng() % count);
    while (v == u) v = std::uint32_t(rng() % count);
    pair_probes.emplace_back(u, v);
  }

  const PairScan pairs = map_reduce(
      std::size_t(0), pair_probes.size(), workers, PairScan{},
      [&](std::size_t b, std::size_t e) {
        PairScan part;
        for (std::size_t i = b; i < e; ++i) {
          const auto [u, v] = pair_probes[i];
          const auto [c, first] = merge_common(row_of(u), row_of(v));
          (void)first;
          ++part.unique.probes;
          ++part.c4.probes;
          if (c != 1 && part.unique.ok) {
            std::ostringstream os;
            os << "u=" << u << " v=" << v << " common=" << c;
            part.unique.ok = false;
            part.unique.witness = os.str();
          }
          if (c >= 2 && part.c4.ok) {
            std::ostringstream os;
            os << "u=" << u << " v=" << v << " common=" << c;
            part.c4.ok = false;
            part.c4.witness = os.str();
          }
          if (!part.unique.ok && !part.c4.ok) break;
        }
        return part;
      },
      [](PairScan acc, const PairScan& p) {
        acc.unique = merge_checks(std::move(acc.unique), p.unique);
        acc.c4 = merge_checks(std::move(acc.c4), p.c4);
        return acc;
      });
  rep.unique_common_neighbor = pairs.unique;
  rep.c4_free = pairs.c4;

  // (c) stays exhaustive: the absolute set is only n+1 vertices
  const auto& abs = g.absolutes();
  for (std::size_t i = 0; i < abs.size() && rep.absolute_independence.ok; ++i) {
    for (std::size_t j = i + 1; j < abs.size(); ++j) {
      ++rep.absolute_independence.probes;
      if (g.adjacent(abs[i], abs[j])) {
        std::ostringstream os;
        os << "absolutes " << abs[i] << " and " << abs[j] << " adjacent";
        rep.absolute_independence.ok = false;
        rep.absolute_independence.witness = os.str();
        break;
      }
    }
  }

  // (d): all vertices when the graph is small, a seeded subset otherwise
  std::vector<std::uint32_t> vertex_probes;
  if (count <= 5000) {
    vertex_probes.resize(count);
    for (std::uint32_t v = 0; v < count; ++v) vertex_probes[v] = v;
  } else {
    const std::int64_t want = std::max<std::int64_t>(std::int64_t(1000), samples / (n + 1));
    vertex_probes.reserve(std::size_t(want));
    for (std::int64_t i = 0; i < want; ++i) vertex_probes.push_back(std::uint32_t(rng() % count));
  }
  rep.neighborhood_degree = map_reduce(
      std::size_t(0), vertex_probes.size(), workers, GraphPropertyCheck{},
      [&](std::size_t b, std::size_t e) {
        GraphPropertyCheck part;
        for (std::size_t i = b; i < e && part.ok; ++i) {
          const std::uint32_t v = vertex_probes[i];
          const std::vector<std::uint32_t> members = g.neighbors(v);
          ++part.probes;
          for (std::size_t x = 0; x < members.size() && part.ok; ++x) {
            int deg = 0;
            for (std::size_t y = 0; y < members.size(); ++y) {
              if (x != y && g.adjacent(members[x], members[y])) ++deg;
            }
            if (deg > 1) {
              std::ostringstream os;
              os << "v=" << v << " member=" << members[x] << " induced-degree=" << deg;
              part.ok = false;
              part.witness = os.str();
            }
          }
        }
        return part;
      },
      [](GraphPropertyCheck acc, const GraphPropertyCheck& p) {
        return merge_checks(std::move(acc), p);
      });

  // (e): seeded non-absolute edges
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_probes;
  edge_probes.reserve(std::size_t(samples));
  while (std::int64_t(edge_probes.size()) < samples) {
    const std::uint32_t u = std::uint32_t(rng() % count);
    if (g.class_of(u) == PolarityGraph::kAbsolute) continue;
    const auto pts = row_of(u);
    const std::uint32_t v = pts[rng() % pts.size()];
    if (v == u || g.class_of(v) == PolarityGraph::kAbsolute) continue;
    edge_probes.emplace_back(u, v);
  }
  rep.edge_triangle = map_reduce(
      std::size_t(0), edge_probes.size(), workers, GraphPropertyCheck{},
      [&](std::size_t b, std::size_t e) {
        GraphPropertyCheck part;
        for (std::size_t i = b; i < e; ++i) {
          const auto [u, v] = edge_probes[i];
          ++part.probes;
          const auto [c, first] = merge_common(row_of(u), row_of(v));
          if (c != 1 || first == std::int64_t(u) || first == std::int64_t(v)) {
            std::ostringstream os;
            os << "edge u=" << u << " v=" << v << " common=" << c;
            part.ok = false;
            part.witness = os.str();
            break;
          }
        }
        return part;
      },
      [](GraphPropertyCheck acc, const GraphPropertyCheck& p) {
        return merge_checks(std::move(acc), p);
      });

  return rep;
}

}  // namespace

GraphPropertyReport check_graph_properties(const PolarityGraph& g, CheckMode mode,
                                           std::uint64_t seed, std::int64_t samples,
                                           unsigned workers) {
  if (mode == CheckMode::exhaustive) {
    if (g.order() > 64) {
      throw InputError("exhaustive graph checks are limited to order 64; use sampled mode");
    }
    return check_graph_properties_rows(g.adjacency_rows(), g.absolutes(), workers);
  }
  return check_sampled(g, seed, samples, workers);
}

void export_graph(const PolarityGraph& g, std::ostream& out) {
  out << "# polarity-graph n=" << g.order() << " absolutes=" << g.absolutes().size()
      << " pole=" << g.pole() << "\n";
  const std::uint32_t count = g.vertex_count();
  for (std::uint32_t u = 0; u < count; ++u) {
    if (g.loop_at(u)) out << u << " " << u << "\n";
    for (const std::uint32_t v : g.neighbors(u)) {
      if (v > u) out << u << " " << v << "\n";
    }
  }
}

}  // namespace fanoforge::polarity
