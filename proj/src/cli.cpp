#include "fanoforge/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fanoforge/errors.hpp"
#include "fanoforge/fano.hpp"
#include "fanoforge/plane.hpp"
#include "fanoforge/polarity.hpp"
#include "fanoforge/presemifield.hpp"

namespace fanoforge::cli {

namespace {

struct Pipeline {
  std::shared_ptr<const geometry::Plane> plane;
  std::unique_ptr<polarity::PolarityGraph> graph;
};

std::uint64_t parse_u64(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos, 0);
    if (pos != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("cannot parse ") + what + " '" + s + "'");
  }
}

Source parse_source(const std::string& s, std::string& table_path) {
  if (s == "field") return Source::field;
  if (s == "knuth") return Source::knuth;
  if (s.rfind("table:", 0) == 0) {
    table_path = s.substr(6);
    if (table_path.empty()) throw InputError("--source table: needs a file path");
    return Source::table;
  }
  throw InputError("--source must be field, knuth, or table:<path>");
}

algebra::Presemifield build_presemifield(const RunConfig& cfg) {
  switch (cfg.source) {
    case Source::field:
      if (cfg.k == 0) throw InputError("--k is required for the field source");
      return algebra::field_presemifield(cfg.k, cfg.modulus);
    case Source::knuth:
      if (cfg.k == 0) throw InputError("--k is required for the knuth source");
      return algebra::knuth_binary_presemifield(cfg.k, cfg.modulus);
    case Source::table:
      return algebra::presemifield_from_table_file(cfg.table_path);
  }
  throw InternalError("build_presemifield: unreachable source");
}

Pipeline build_pipeline(const RunConfig& cfg, bool need_graph) {
  Pipeline p;
  p.plane = std::make_shared<const geometry::Plane>(build_presemifield(cfg));
  if (need_graph) p.graph = std::make_unique<polarity::PolarityGraph>(p.plane);
  return p;
}

bool resolve_exhaustive(Mode mode, std::uint32_t n) {
  if (mode == Mode::exhaustive) return true;
  if (mode == Mode::sampled) return false;
  return n <= 32;
}

std::string modulus_hex(std::uint32_t modulus) {
  std::ostringstream os;
  os << "0x" << std::hex << modulus;
  return os.str();
}

std::string config_line(const char* cmd, const RunConfig& cfg, const geometry::Plane& plane) {
  std::ostringstream os;
  const auto& psf = plane.presemifield();
  os << cmd << " n=" << plane.order() << " source=" << psf.source << " k=" << psf.k
     << " modulus=" << modulus_hex(psf.modulus);
  return os.str();
}

// writes to the --out file when given, stdout otherwise
void deliver(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw InputError("cannot open output file '" + cfg.out_path + "'");
  f << text;
}

std::ostream& open_sink(std::optional<std::ofstream>& file, const RunConfig& cfg,
                        std::ostream& out, bool binary) {
  if (cfg.out_path.empty()) return out;
  file.emplace(cfg.out_path, binary ? std::ios::binary : std::ios::out);
  if (!*file) throw InputError("cannot open output file '" + cfg.out_path + "'");
  return *file;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg, true);
  const auto& psf = p.plane->presemifield();
  std::ostringstream os;
  os << config_line("build", cfg, *p.plane) << "\n";
  os << "presemifield distributive=" << (psf.verified_distributive ? "true" : "false")
     << " no-zero-divisors=" << (psf.verified_no_zero_divisors ? "true" : "false")
     << " commutative=" << (psf.verified_commutative ? "true" : "false") << "\n";
  os << "plane points=" << p.plane->point_count() << " lines=" << p.plane->point_count() << "\n";
  os << "polarity absolutes=" << p.graph->absolutes().size() << " pole=" << p.graph->pole()
     << " baer-line=\"" << p.graph->baer_line().text() << "\"\n";
  out << os.str();
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) throw InputError("cannot open output file '" + cfg.out_path + "'");
    algebra::write_table(psf, f);
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg, true);
  const geometry::Plane& plane = *p.plane;
  const polarity::PolarityGraph& g = *p.graph;
  const std::uint32_t n = plane.order();
  const std::uint32_t count = plane.point_count();
  const bool exhaustive = resolve_exhaustive(cfg.mode, n);

  std::ostringstream os;
  os << config_line("verify", cfg, plane) << " mode=" << (exhaustive ? "exhaustive" : "sampled")
     << " seed=" << cfg.seed << "\n";
  int checks = 0, failures = 0;
  const auto emit = [&](const char* name, bool ok, const std::string& detail) {
    ++checks;
    if (!ok) ++failures;
    os << "check " << name << " " << (ok ? "pass" : "fail");
    if (!detail.empty()) os << " " << detail;
    os << "\n";
  };

  {
    bool ok = true;
    std::int64_t bad_line = -1, bad_point = -1;
    for (std::uint32_t i = 0; i < count; ++i) {
      if (plane.points_on_line(plane.line_at(i)).size() != n + 1) {
        ok = false;
        bad_line = i;
        break;
      }
      if (plane.lines_through_point(plane.point_at(i)).size() != n + 1) {
        ok = false;
        bad_point = i;
        break;
      }
    }
    std::ostringstream d;
    d << "points=" << count << " lines=" << count << " degree=" << n + 1;
    if (bad_line >= 0) d << " witness=\"line " << bad_line << "\"";
    if (bad_point >= 0) d << " witness=\"point " << bad_point << "\"";
    emit("plane-counts", ok, d.str());
  }

  {
    geometry::PlaneAxiomReport rep;
    if (exhaustive) {
      rep = geometry::verify_plane_axioms(geometry::IncidenceStructure::from_plane(plane));
    } else {
      rep = geometry::verify_plane_axioms_sampled(plane, cfg.seed, cfg.samples);
    }
    const auto axiom = [&](const char* name, const geometry::PlaneAxiomCheck& chk) {
      std::ostringstream d;
      d << "probes=" << chk.probes;
      if (!chk.ok || name == std::string("quadrilateral")) d << " witness=\"" << chk.witness << "\"";
      emit(name, chk.ok, d.str());
    };
    axiom("points-joined-once", rep.points_joined_once);
    axiom("lines-meet-once", rep.lines_meet_once);
    axiom("quadrilateral", rep.quadrilateral);
  }

  {
    bool ok = true;
    std::string witness;
    for (std::uint32_t i = 0; i < count && ok; ++i) {
      const geometry::PlanePoint pt = plane.point_at(i);
      const geometry::PlaneLine ln = plane.line_at(i);
      if (polarity::polar(polarity::polar(pt)) != pt || polarity::polar(polarity::polar(ln)) != ln) {
        ok = false;
        witness = " witness=\"index " + std::to_string(i) + "\"";
      }
    }
    emit("polarity-involution", ok, "probes=" + std::to_string(2 * count) + witness);
  }

  {
    const polarity::PreservationCheck chk =
        polarity::check_incidence_preservation(plane, exhaustive, cfg.seed, cfg.samples);
    std::ostringstream d;
    d << "probes=" << chk.probes;
    if (!chk.ok) d << " witness=\"" << chk.witness << "\"";
    emit("incidence-preservation", chk.ok, d.str());
  }

  {
    std::ostringstream d;
    d << "expected=" << n + 1 << " actual=" << g.absolutes().size();
    emit("absolute-count", g.absolutes().size() == n + 1, d.str());
  }

  {
    bool ok = true;
    for (const std::uint32_t a : g.absolutes()) {
      if (!plane.incident(plane.point_at(a), g.baer_line())) {
        ok = false;
        break;
      }
    }
    emit("absolutes-collinear", ok, "line=\"" + g.baer_line().text() + "\"");
  }

  {
    const bool ok = plane.points_on_line(plane.line_at(g.pole())) == g.absolutes();
    emit("pole-neighborhood", ok, "pole=" + std::to_string(g.pole()));
  }

  {
    bool ok = true;
    std::size_t covered = 1 + g.absolutes().size();
    for (const auto& cls : g.classes()) {
      if (cls.size() != std::size_t(n) - 1) ok = false;
      covered += cls.size();
    }
    if (covered != count) ok = false;
    std::ostringstream d;
    d << "classes=" << g.classes().size() << " class-size=" << n - 1 << " covered=" << covered;
    emit("partition", ok, d.str());
  }

  {
    const polarity::GraphPropertyReport rep = polarity::check_graph_properties(
        g, exhaustive ? polarity::CheckMode::exhaustive : polarity::CheckMode::sampled, cfg.seed,
        cfg.samples, cfg.workers);
    const auto part = [&](const char* name, const polarity::GraphPropertyCheck& chk) {
      std::ostringstream d;
      d << "probes=" << chk.probes;
      if (!chk.ok) d << " witness=\"" << chk.witness << "\"";
      emit(name, chk.ok, d.str());
    };
    part("common-neighbor", rep.unique_common_neighbor);
    part("c4-free", rep.c4_free);
    part("absolute-independence", rep.absolute_independence);
    part("neighborhood-degree", rep.neighborhood_degree);
    part("edge-triangle", rep.edge_triangle);
  }

  os << "result " << (failures == 0 ? "pass" : "fail") << " checks=" << checks
     << " failures=" << failures << "\n";
  deliver(os.str(), cfg, out);
  return failures == 0 ? 0 : 1;
}

int cmd_fano(const RunConfig& cfg, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg, true);
  const fano::FanoCertificate cert = fano::find_fano(*p.graph, cfg.workers);
  const fano::TriangleCensus census = fano::count_fanos_through_pole(*p.graph, cfg.workers);
  deliver(cert.text() + census.text() + "\n", cfg, out);
  return 0;
}

int cmd_census(const RunConfig& cfg, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg, true);
  const fano::TriangleCensus census = fano::count_fanos_through_pole(*p.graph, cfg.workers);
  deliver(census.text() + "\n", cfg, out);
  return 0;
}

int cmd_export_graph(const RunConfig& cfg, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg, true);
  std::optional<std::ofstream> file;
  std::ostream& sink = open_sink(file, cfg, out, false);
  polarity::export_graph(*p.graph, sink);
  return 0;
}

int cmd_export_incidence(const RunConfig& cfg, bool packed, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg, false);
  if (packed && cfg.out_path.empty()) {
    throw InputError("export-incidence --format packed requires --out");
  }
  std::optional<std::ofstream> file;
  std::ostream& sink = open_sink(file, cfg, out, packed);
  if (packed) {
    geometry::export_incidence_packed(*p.plane, sink);
  } else {
    geometry::export_incidence_text(*p.plane, sink);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("FANOFORGE_SEED")) {
    try {
      cfg.seed = parse_u64(env, "FANOFORGE_SEED");
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return int(e.code());
    }
  }

  CLI::App app{"projective planes from commutative presemifields, their polarity graphs, "
               "and seven-point subplane certificates"};
  app.require_subcommand(1);

  std::string source_text = "field";
  std::string modulus_text;
  std::string mode_text = "auto";
  std::int64_t bound_n = 0;
  std::string format_text = "text";

  const auto add_common = [&](CLI::App* sub, bool with_sampling) {
    sub->add_option("--source", source_text, "field, knuth, or table:<path>");
    sub->add_option("--k", cfg.k, "field dimension, order n = 2^k");
    sub->add_option("--modulus", modulus_text, "reduction polynomial bitmask (0x.. accepted)");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    if (with_sampling) {
      sub->add_option("--seed", cfg.seed, "probe seed (FANOFORGE_SEED when absent)");
      sub->add_option("--mode", mode_text, "auto, exhaustive, or sampled");
      sub->add_option("--samples", cfg.samples, "probe count in sampled mode")
          ->check(CLI::PositiveNumber);
    }
  };

  CLI::App* build = app.add_subcommand("build", "construct the plane and report its shape");
  add_common(build, false);
  CLI::App* verify = app.add_subcommand("verify", "run every structural check and report each");
  add_common(verify, true);
  CLI::App* fano_cmd = app.add_subcommand("fano", "emit a verified seven-point subplane certificate");
  add_common(fano_cmd, false);
  CLI::App* census = app.add_subcommand("census", "count triangles and certificates exactly");
  add_common(census, false);
  CLI::App* bound = app.add_subcommand("bound", "print the certificate lower bound");
  bound->add_option("--n", bound_n, "plane order (even)");
  bound->add_option("--k", cfg.k, "field dimension, order n = 2^k");
  CLI::App* egraph = app.add_subcommand("export-graph", "write the polarity graph edge list");
  add_common(egraph, false);
  CLI::App* eincidence = app.add_subcommand("export-incidence", "write the line/point incidences");
  add_common(eincidence, false);
  eincidence->add_option("--format", format_text, "text or packed");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fanoforge");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  const char* cmd_name = "?";
  try {
    cfg.source = parse_source(source_text, cfg.table_path);
    if (!modulus_text.empty()) {
      cfg.modulus = std::uint32_t(parse_u64(modulus_text, "--modulus"));
    }
    if (mode_text == "auto") {
      cfg.mode = Mode::automatic;
    } else if (mode_text == "exhaustive") {
      cfg.mode = Mode::exhaustive;
    } else if (mode_text == "sampled") {
      cfg.mode = Mode::sampled;
    } else {
      throw InputError("--mode must be auto, exhaustive, or sampled");
    }

    int rc = 0;
    if (*build) {
      cmd_name = "build";
      rc = cmd_build(cfg, out);
    } else if (*verify) {
      cmd_name = "verify";
      rc = cmd_verify(cfg, out);
    } else if (*fano_cmd) {
      cmd_name = "fano";
      rc = cmd_fano(cfg, out);
    } else if (*census) {
      cmd_name = "census";
      rc = cmd_census(cfg, out);
    } else if (*bound) {
      cmd_name = "bound";
      if (bound_n == 0) {
        if (cfg.k == 0) throw InputError("bound: give --n or --k");
        bound_n = std::int64_t(1) << cfg.k;
      }
      out << fano::fano_lower_bound(bound_n) << "\n";
    } else if (*egraph) {
      cmd_name = "export-graph";
      rc = cmd_export_graph(cfg, out);
    } else if (*eincidence) {
      cmd_name = "export-incidence";
      if (format_text != "text" && format_text != "packed") {
        throw InputError("--format must be text or packed");
      }
      rc = cmd_export_incidence(cfg, format_text == "packed", out);
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    err << "time " << cmd_name << "=" << elapsed.count() << "ms\n";
    return rc;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return int(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return int(ExitCode::internal);
  }
}

}  // namespace fanoforge::cli
