#include "rwc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rwc/errors.hpp"
#include "rwc/parallel.hpp"
#include "rwc/specfun.hpp"

namespace rwc::spectral {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kTopFields{"T", "provenance", "forms"};
const std::vector<std::string> kFormFields{"t", "parity", "L_half", "L_shift_abs", "L_sym2"};

long line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<long>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

void check_fields(const json& obj, const std::vector<std::string>& fields, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + " must be an object");
  std::string missing, unknown;
  for (const auto& f : fields)
    if (!obj.contains(f)) missing += (missing.empty() ? "" : ", ") + f;
  for (const auto& item : obj.items())
    if (std::find(fields.begin(), fields.end(), item.key()) == fields.end())
      unknown += (unknown.empty() ? "" : ", ") + item.key();
  if (!missing.empty()) throw SchemaError(where + ": missing fields: " + missing);
  if (!unknown.empty()) throw SchemaError(where + ": unknown fields: " + unknown);
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(where + ": field " + key + " must be a number");
  return v.get<double>();
}

}  // namespace

void validate(SpectralDataset& ds) {
  if (!(ds.T > 0) || !std::isfinite(ds.T)) throw InvariantError("dataset T must be finite and > 0");
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const MaassFormRecord& r = ds.records[i];
    std::string where = "form " + std::to_string(i);
    if (!(r.t > 0) || !std::isfinite(r.t)) throw InvariantError(where + ": t must be finite and > 0");
    if (!(r.L_sym2 > 0) || !std::isfinite(r.L_sym2)) throw InvariantError(where + ": L_sym2 must be > 0");
    if (!(r.L_shift_abs >= 0) || !std::isfinite(r.L_shift_abs))
      throw InvariantError(where + ": L_shift_abs must be >= 0");
    if (!std::isfinite(r.L_half)) throw InvariantError(where + ": L_half must be finite");
    if (r.parity == Parity::odd && std::abs(r.L_half) > 1e-12)
      throw InvariantError(where + ": odd form with nonzero L_half");
    if (r.T_dataset != ds.T) throw InvariantError(where + ": T_dataset differs from the dataset T");
  }
  std::stable_sort(ds.records.begin(), ds.records.end(),
                   [](const MaassFormRecord& a, const MaassFormRecord& b) { return a.t < b.t; });
}

SpectralDataset parse_dataset(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  check_fields(doc, kTopFields, "dataset");
  SpectralDataset ds;
  ds.T = number(doc, "T", "dataset");
  if (!doc.at("provenance").is_string()) throw SchemaError("dataset: field provenance must be a string");
  ds.provenance = doc.at("provenance").get<std::string>();
  if (!doc.at("forms").is_array()) throw SchemaError("dataset: field forms must be an array");
  std::size_t i = 0;
  for (const json& f : doc.at("forms")) {
    std::string where = "form " + std::to_string(i++);
    check_fields(f, kFormFields, where);
    MaassFormRecord r;
    r.t = number(f, "t", where);
    const json& p = f.at("parity");
    if (p == "even") r.parity = Parity::even;
    else if (p == "odd") r.parity = Parity::odd;
    else throw SchemaError(where + ": parity must be \"even\" or \"odd\"");
    r.L_half = number(f, "L_half", where);
    r.L_shift_abs = number(f, "L_shift_abs", where);
    r.L_sym2 = number(f, "L_sym2", where);
    r.T_dataset = ds.T;
    ds.records.push_back(r);
  }
  validate(ds);
  return ds;
}

SpectralDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

std::string dump_dataset(const SpectralDataset& ds) {
  ordered_json doc;
  doc["T"] = ds.T;
  doc["provenance"] = ds.provenance;
  doc["forms"] = ordered_json::array();
  for (const auto& r : ds.records) {
    ordered_json f;
    f["t"] = r.t;
    f["parity"] = r.parity == Parity::even ? "even" : "odd";
    f["L_half"] = r.L_half;
    f["L_shift_abs"] = r.L_shift_abs;
    f["L_sym2"] = r.L_sym2;
    doc["forms"].push_back(f);
  }
  return doc.dump(2) + "\n";
}

void save_dataset(const SpectralDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << dump_dataset(ds);
  if (!out) throw IoError("write failed for " + path);
}

double log_completed_lambda_factors(const MaassFormRecord& rec, ComplexValue s) {
  ComplexValue a = rec.parity == Parity::even ? s : s + 1.0;
  ComplexValue it(0, rec.t);
  return (specfun::log_gamma_r(a + it) + specfun::log_gamma_r(a - it)).real();
}

double completed_lambda_factors(const MaassFormRecord& rec, ComplexValue s) {
  return std::exp(log_completed_lambda_factors(rec, s));
}

double spectral_term(const MaassFormRecord& rec, double T) {
  if (rec.L_half == 0 || rec.L_shift_abs == 0) return 0;
  const double log_cosh = kPi * rec.t - std::log(2.0) + std::log1p(std::exp(-2 * kPi * rec.t));
  double l = log_cosh - std::log(2.0);
  l += 2 * std::log(rec.L_shift_abs) + 2 * log_completed_lambda_factors(rec, ComplexValue(0.5, 2 * T));
  l += 2 * std::log(std::abs(rec.L_half)) + 2 * log_completed_lambda_factors(rec, 0.5);
  l -= std::log(rec.L_sym2);
  l -= 4 * specfun::log_xi_complete(ComplexValue(1, 2 * T)).real();
  if (l > 709) throw OverflowRisk("spectral term exceeds the double range (corrupt data?)");
  return std::exp(l);
}

double spectral_sum(const SpectralDataset& ds, unsigned threads) {
  if (ds.records.empty()) return 0;
  if (!(ds.T > 0)) throw DomainError("spectral_sum: T must be > 0");
  std::vector<double> terms(ds.records.size());
  parallel_for(terms.size(), threads, [&](std::size_t i) { terms[i] = spectral_term(ds.records[i], ds.T); });
  double sum = 0;
  for (double v : terms) sum += v;
  return sum;
}

double spectral_law(double T) {
  double l = std::log(T);
  return 48 / kPi * l * l;
}

BulkPartition partition_bulk(const SpectralDataset& ds, double eps) {
  if (!(eps > 0 && eps < 0.5)) throw DomainError("bulk_filter: eps_param must lie in (0, 0.5)");
  BulkPartition p;
  for (SpectralDataset* d : {&p.low, &p.bulk, &p.high}) {
    d->T = ds.T;
    d->provenance = ds.provenance;
  }
  const double edge = std::pow(ds.T, 1 - eps);
  for (const auto& r : ds.records) {
    double a = std::abs(r.t);
    if (a <= edge) p.low.records.push_back(r);
    else if (a < 2 * ds.T - edge) p.bulk.records.push_back(r);
    else p.high.records.push_back(r);
  }
  return p;
}

SpectralDataset bulk_filter(const SpectralDataset& ds, double eps) { return partition_bulk(ds, eps).bulk; }

}  // namespace rwc::spectral
