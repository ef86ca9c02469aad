#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace rwc::cli {

enum class Command { moment_scan, mainterm, voronoi_verify, spectral_sum, bessel, zeta, selftest };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::selftest;
  std::vector<double> T;  // empty: per-command default
  double Y = 12;
  int k = 2;
  double refine = 1;
  double tolerance = 1e-6;      // moment quadrature relative tolerance
  double gap_tolerance = 1e-6;  // Voronoi gap, kind tau
  double shifted_gap_tolerance = 1e-4;
  double sigma = 0.5;  // Voronoi dual contour
  double step = 1.0 / 16;
  std::vector<double> x{1, 5, 20};
  std::vector<double> re{0.5};
  std::vector<double> im{14.134725141734693};
  std::string data;
  double eps = 0;  // spectral bulk window; 0 keeps every record
  std::string out;  // empty: stdout
  Format format = Format::csv;
  bool format_set = false;
  unsigned parallelism = 1;
  std::string inject_fault;  // selftest only: "a2"
};

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Outcome {
  Report report;
  bool verified = true;
  std::vector<std::string> failures;
};

Command parse_command(const std::string& name);
std::string command_name(Command c);

// Throws UsageError.
void validate(const RunConfig& cfg);
// Applies a JSON config object; unknown keys and ill-typed values throw UsageError.
void apply_config_json(RunConfig& cfg, const std::string& text);

Outcome execute(const RunConfig& cfg);

std::string format_report(const Report& report, Format format);
// Writes the formatted report to `path`; throws IoError naming the path.
void emit_report(const Report& report, Format format, const std::string& path);

// 0 success, 1 usage error, 2 verification failure.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rwc::cli
