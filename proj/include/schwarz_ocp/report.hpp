#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schwarz_ocp/analytic1d.hpp"
#include "schwarz_ocp/metrics.hpp"

namespace schwarz_ocp::report {

/// Scientific notation with 5 significant digits and a bare exponent,
/// e.g. 9.2738e-1, 8.6604e1, 1.0084e-16.
std::string format_sci5(double v);

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_full(double v);

struct TableOutput {
  std::string text;      // aligned plain text
  std::string markdown;
  std::string csv;       // records_to_csv of the records shown
};

/// Rows grouped by delta, then k; an elliptic column pair followed by one
/// (error, rate) pair per OCP alpha in decreasing order. Missing cells are
/// left blank.
TableOutput emit_table1(std::span<const ConvergenceRecord> records);

/// Rows k; one (error, rate) column pair per delta of the alpha-elliptic records.
TableOutput emit_table2(std::span<const ConvergenceRecord> records);

/// Long-format CSV, one row per (record, k), full precision:
/// kind,dim,n,alpha,shift_c,delta,convention,init,seed,norm,converged,k,error,rate
std::string records_to_csv(std::span<const ConvergenceRecord> records);
std::vector<ConvergenceRecord> records_from_csv(std::string_view csv);

/// Short label used for plot series, e.g. "ocp_a1e-02_d1".
std::string series_label(const ConvergenceRecord& rec);

/// Columnar text: "# k <label>..." header, then k and log10(error) per series.
std::string emit_convergence_series(std::span<const ConvergenceRecord> records);

/// Columnar text: "# gamma rho_c" header, one row per sample.
std::string emit_gamma_scan(std::span<const analytic1d::ScanPoint> scan);

/// One published table cell.
struct ReferenceCell {
  ProblemKind kind = ProblemKind::OCP;
  std::optional<double> alpha;  // absent for the plain elliptic column
  int delta = 0;
  int k = 0;
  bool is_rate = false;
  double value = 0.0;
};

/// Parses kind,alpha,delta,k,quantity,value rows.
std::vector<ReferenceCell> parse_reference(std::string_view csv);
std::vector<ReferenceCell> load_reference(const std::string& path);

struct Mismatch {
  ReferenceCell cell;
  std::optional<double> measured;  // absent when the run did not produce the cell
  double relative_error = 0.0;
};

/// Reference cells whose matching record differs by more than rel_tol
/// (relative). Cells for which no record exists are reported only when
/// require_all is set.
std::vector<Mismatch> compare_to_reference(std::span<const ConvergenceRecord> records,
                                           std::span<const ReferenceCell> reference,
                                           double rel_tol = 1e-3, bool require_all = false);

/// Value a record holds for a reference cell, if any.
std::optional<double> lookup(std::span<const ConvergenceRecord> records, const ReferenceCell& cell);

struct ExperimentSuiteResult {
  std::map<std::string, std::string> metadata;
  std::vector<ConvergenceRecord> records;
  std::vector<std::vector<analytic1d::ScanPoint>> scans;
};

/// Metadata plus a full parameter echo of each record, as JSON.
std::string suite_metadata_json(const ExperimentSuiteResult& result);

/// Writes `contents` to dir/name (creating dir), LF line endings as given.
void write_file(const std::string& dir, const std::string& name, const std::string& contents);

}  // namespace schwarz_ocp::report
