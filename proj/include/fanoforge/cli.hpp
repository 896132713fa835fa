#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fanoforge::cli {

inline constexpr std::uint64_t kDefaultSeed = 123456789;
inline constexpr std::int64_t kDefaultSamples = 100000;

enum class Source { field, knuth, table };
enum class Mode { automatic, exhaustive, sampled };

struct RunConfig {
  Source source = Source::field;
  std::string table_path;     // when source is a table
  unsigned k = 0;             // required for field and knuth sources
  std::uint32_t modulus = 0;  // 0 picks the per-k default
  std::uint64_t seed = kDefaultSeed;
  Mode mode = Mode::automatic;  // exhaustive for n <= 32, sampled above
  unsigned workers = 1;
  std::int64_t samples = kDefaultSamples;
  std::string out_path;  // empty writes to stdout
};

// Parses argv-style arguments (no program name), runs one subcommand, and
// writes its output to out and diagnostics plus timings to err. Returns the
// exit code: 0 success, 1 verification failure, 2 input error, 3 internal
// invariant breach. FANOFORGE_SEED supplies the seed when --seed is absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fanoforge::cli
