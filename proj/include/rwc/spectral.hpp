#pragma once

#include <string>
#include <vector>

#include "rwc/types.hpp"

namespace rwc::spectral {

enum class Parity { even, odd };

struct MaassFormRecord {
  double t = 0;
  Parity parity = Parity::even;
  double L_half = 0;       // L(1/2, u_j)
  double L_shift_abs = 0;  // |L(1/2 + 2iT, u_j)|
  double L_sym2 = 1;       // L(1, sym^2 u_j)
  double T_dataset = 0;

  bool operator==(const MaassFormRecord&) const = default;
};

struct SpectralDataset {
  double T = 0;
  std::string provenance;
  std::vector<MaassFormRecord> records;  // sorted by t

  bool operator==(const SpectralDataset&) const = default;
};

// Checks the record invariants and sorts; throws InvariantError.
void validate(SpectralDataset& ds);

SpectralDataset parse_dataset(const std::string& text);
SpectralDataset load_dataset(const std::string& path);
std::string dump_dataset(const SpectralDataset& ds);
void save_dataset(const SpectralDataset& ds, const std::string& path);

// Modulus of Gamma_R(s + it)Gamma_R(s - it) (even) or Gamma_R(1 + s + it)Gamma_R(1 + s - it) (odd).
double completed_lambda_factors(const MaassFormRecord& rec, ComplexValue s);
double log_completed_lambda_factors(const MaassFormRecord& rec, ComplexValue s);

// One term of the spectral sum; zero when any L-value vanishes.
double spectral_term(const MaassFormRecord& rec, double T);
double spectral_sum(const SpectralDataset& ds, unsigned threads = 1);
double spectral_law(double T);  // (48/pi) log^2 T

struct BulkPartition {
  SpectralDataset low;   // |t| <= T^{1-eps}
  SpectralDataset bulk;  // T^{1-eps} < |t| < 2T - T^{1-eps}
  SpectralDataset high;  // |t| >= 2T - T^{1-eps}
};

BulkPartition partition_bulk(const SpectralDataset& ds, double eps_param);
SpectralDataset bulk_filter(const SpectralDataset& ds, double eps_param);

}  // namespace rwc::spectral
