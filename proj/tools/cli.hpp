#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitIo = 4;

inline constexpr int kSchemaVersion = 1;

// Bad flag combination or malformed flag value.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The command ran but produced nothing usable (e.g. every certify row failed).
class PreconditionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// start:end:{log|lin}[:count]
struct GridSpec {
  double start = 0.0;
  double end = 0.0;
  bool log = false;
  int count = 0;
};

// Throws UsageError. Without a count, log grids get one point per decade and
// lin grids 5 points.
GridSpec parse_grid_spec(const std::string& text);
std::vector<double> expand(const GridSpec& spec);

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::optional<double> alpha;
  std::optional<double> c;
  std::optional<double> x;
  std::optional<double> y;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> k;
  std::optional<double> mu;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  int points = 1000;
  int grid_points = 4096;
  double margin = 1e-10;
  std::string alpha_grid;
  std::string c_mode = "lemma4";
  std::string algo = "karp-sipser";
  bool brute = false;
  std::uint64_t mc_trials = 0;
  unsigned threads = 1;
  bool force = false;
  bool timing = false;
  std::string import_path;
  std::string export_path;
  std::optional<Format> format;
  std::string out_path;
};

// %.17g
std::string format_number(double v);

// Parses argv (argv[0] is the program name), runs one subcommand and returns
// the exit code. Results go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wsm::cli
