#include "schwarz_ocp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace schwarz_ocp::report {

namespace {

using Grid2 = std::vector<std::vector<std::string>>;

bool same_alpha(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto l : split(text, '\n')) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

double to_double(std::string_view s) {
  // strtod accepts the forms written by format_full and the published tables.
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size())
    throw std::invalid_argument("not a number: '" + tmp + "'");
  return v;
}

template <typename Int>
Int to_int(std::string_view s) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return v;
}

std::string render_text(const Grid2& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) line += "  ";
      line += std::string(width[c] - r[c].size(), ' ') + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

std::string render_markdown(const Grid2& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += '|';
    for (const auto& c : rows[i]) out += ' ' + c + " |";
    out += '\n';
    if (i == 0) {
      out += '|';
      for (std::size_t c = 0; c < rows[i].size(); ++c) out += " --- |";
      out += '\n';
    }
  }
  return out;
}

std::string alpha_label(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0e", alpha);
  return buf;
}

void append_cell_pair(std::vector<std::string>& row, const ConvergenceRecord* rec, int k) {
  const RateEntry* e = rec ? rec->entry(k) : nullptr;
  if (!e) {
    row.emplace_back();
    row.emplace_back();
    return;
  }
  row.push_back(format_sci5(e->error));
  row.push_back(e->rate ? format_sci5(*e->rate) : "-");
}

int max_k(std::span<const ConvergenceRecord> records) {
  int k = 0;
  for (const auto& r : records)
    for (const auto& e : r.entries) k = std::max(k, e.k);
  return k;
}

}  // namespace

std::string format_sci5(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  std::string s(buf);
  const auto epos = s.find('e');
  const int exponent = std::stoi(s.substr(epos + 1));
  return s.substr(0, epos) + "e" + std::to_string(exponent);
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Tables

TableOutput emit_table1(std::span<const ConvergenceRecord> records) {
  std::set<int> deltas;
  std::set<double, std::greater<>> alphas;
  std::vector<ConvergenceRecord> shown;
  for (const auto& r : records) {
    if (r.kind == ProblemKind::AlphaElliptic) continue;
    deltas.insert(r.delta);
    if (r.kind == ProblemKind::OCP) alphas.insert(r.alpha);
    shown.push_back(r);
  }
  auto find = [&](ProblemKind kind, std::optional<double> alpha, int delta) -> const ConvergenceRecord* {
    for (const auto& r : shown)
      if (r.kind == kind && r.delta == delta && (!alpha || same_alpha(r.alpha, *alpha))) return &r;
    return nullptr;
  };

  Grid2 rows;
  std::vector<std::string> header{"delta", "k", "elliptic |E|", "rho_e,d"};
  for (double a : alphas) {
    header.push_back("a=" + alpha_label(a) + " |E|");
    header.push_back("rho_c,d");
  }
  rows.push_back(header);
  const int kmax = max_k(shown);
  for (int d : deltas) {
    for (int k = 1; k <= kmax; ++k) {
      std::vector<std::string> row{std::to_string(d), std::to_string(k)};
      append_cell_pair(row, find(ProblemKind::Elliptic, std::nullopt, d), k);
      for (double a : alphas) append_cell_pair(row, find(ProblemKind::OCP, a, d), k);
      rows.push_back(std::move(row));
    }
  }
  return {render_text(rows), render_markdown(rows), records_to_csv(shown)};
}

TableOutput emit_table2(std::span<const ConvergenceRecord> records) {
  std::vector<ConvergenceRecord> shown;
  std::set<int> deltas;
  for (const auto& r : records) {
    if (r.kind != ProblemKind::AlphaElliptic) continue;
    shown.push_back(r);
    deltas.insert(r.delta);
  }
  Grid2 rows;
  std::vector<std::string> header{"k"};
  for (int d : deltas) {
    header.push_back("delta=" + std::to_string(d) + " |E|");
    header.push_back("rho_e,d");
  }
  rows.push_back(header);
  const int kmax = max_k(shown);
  for (int k = 1; k <= kmax; ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (int d : deltas) {
      const ConvergenceRecord* rec = nullptr;
      for (const auto& r : shown)
        if (r.delta == d) rec = &r;
      append_cell_pair(row, rec, k);
    }
    rows.push_back(std::move(row));
  }
  return {render_text(rows), render_markdown(rows), records_to_csv(shown)};
}

// ---------------------------------------------------------------------------
// Record CSV

namespace {
constexpr std::string_view kRecordHeader =
    "kind,dim,n,alpha,shift_c,delta,convention,init,seed,norm,converged,k,error,rate";
}

std::string records_to_csv(std::span<const ConvergenceRecord> records) {
  std::string out(kRecordHeader);
  out += '\n';
  for (const auto& r : records) {
    const std::string prefix = std::string(to_string(r.kind)) + ',' + std::to_string(r.dim) + ',' +
                               std::to_string(r.n) + ',' + format_full(r.alpha) + ',' +
                               format_full(r.shift_c) + ',' + std::to_string(r.delta) + ',' +
                               std::string(to_string(r.convention)) + ',' +
                               std::string(to_string(r.init)) + ',' + std::to_string(r.seed) + ',' +
                               std::string(to_string(r.norm)) + ',' + (r.converged ? "1" : "0");
    for (const auto& e : r.entries) {
      out += prefix + ',' + std::to_string(e.k) + ',' + format_full(e.error) + ',' +
             (e.rate ? format_full(*e.rate) : std::string()) + '\n';
    }
  }
  return out;
}

std::vector<ConvergenceRecord> records_from_csv(std::string_view csv) {
  const auto lines = lines_of(csv);
  if (lines.empty() || lines.front() != kRecordHeader)
    throw std::invalid_argument("record CSV: missing or unexpected header");
  std::vector<ConvergenceRecord> out;
  std::string last_key;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 14) throw std::invalid_argument("record CSV: expected 14 fields on line " + std::to_string(i + 1));
    std::string key;
    for (std::size_t c = 0; c < 11; ++c) key += std::string(f[c]) + ',';
    if (out.empty() || key != last_key) {
      ConvergenceRecord r;
      r.kind = parse_problem_kind(f[0]);
      r.dim = to_int<int>(f[1]);
      r.n = to_int<int>(f[2]);
      r.alpha = to_double(f[3]);
      r.shift_c = to_double(f[4]);
      r.delta = to_int<int>(f[5]);
      r.convention = parse_overlap_convention(f[6]);
      r.init = parse_init_policy(f[7]);
      r.seed = to_int<std::uint64_t>(f[8]);
      r.norm = parse_merit_norm(f[9]);
      r.converged = f[10] == "1";
      out.push_back(std::move(r));
      last_key = key;
    }
    RateEntry e;
    e.k = to_int<int>(f[11]);
    e.error = to_double(f[12]);
    if (!f[13].empty()) e.rate = to_double(f[13]);
    out.back().entries.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plot data

std::string series_label(const ConvergenceRecord& rec) {
  std::string label(to_string(rec.kind));
  if (rec.kind != ProblemKind::Elliptic) label += "_a" + alpha_label(rec.alpha);
  return label + "_d" + std::to_string(rec.delta);
}

std::string emit_convergence_series(std::span<const ConvergenceRecord> records) {
  std::string out = "# k";
  for (const auto& r : records) out += ' ' + series_label(r);
  out += "   (columns: sweep k, log10 of the error per series)\n";
  const int kmax = max_k(records);
  for (int k = 1; k <= kmax; ++k) {
    out += std::to_string(k);
    for (const auto& r : records) {
      const RateEntry* e = r.entry(k);
      out += ' ';
      if (!e) {
        out += "nan";
      } else if (e->error <= 0.0) {
        out += "-inf";
      } else {
        out += format_full(std::log10(e->error));
      }
    }
    out += '\n';
  }
  return out;
}

std::string emit_gamma_scan(std::span<const analytic1d::ScanPoint> scan) {
  std::string out = "# gamma rho_c\n";
  for (const auto& p : scan) out += format_full(p.gamma) + ' ' + format_full(p.rho_c) + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Reference fixtures

std::vector<ReferenceCell> parse_reference(std::string_view csv) {
  const auto lines = lines_of(csv);
  if (lines.empty() || lines.front() != "kind,alpha,delta,k,quantity,value")
    throw std::invalid_argument("reference CSV: unexpected header");
  std::vector<ReferenceCell> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 6) throw std::invalid_argument("reference CSV: expected 6 fields");
    ReferenceCell c;
    c.kind = parse_problem_kind(f[0]);
    if (!f[1].empty()) c.alpha = to_double(f[1]);
    c.delta = to_int<int>(f[2]);
    c.k = to_int<int>(f[3]);
    if (f[4] != "error" && f[4] != "rate") throw std::invalid_argument("reference CSV: bad quantity");
    c.is_rate = f[4] == "rate";
    c.value = to_double(f[5]);
    out.push_back(c);
  }
  return out;
}

std::vector<ReferenceCell> load_reference(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open reference file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_reference(ss.str());
}

std::optional<double> lookup(std::span<const ConvergenceRecord> records, const ReferenceCell& cell) {
  for (const auto& r : records) {
    if (r.kind != cell.kind || r.delta != cell.delta) continue;
    if (cell.alpha && !same_alpha(r.alpha, *cell.alpha)) continue;
    const RateEntry* e = r.entry(cell.k);
    if (!e) return std::nullopt;
    if (cell.is_rate) return e->rate;
    return e->error;
  }
  return std::nullopt;
}

std::vector<Mismatch> compare_to_reference(std::span<const ConvergenceRecord> records,
                                           std::span<const ReferenceCell> reference, double rel_tol,
                                           bool require_all) {
  std::vector<Mismatch> out;
  for (const auto& cell : reference) {
    const auto measured = lookup(records, cell);
    if (!measured) {
      if (require_all) out.push_back({cell, std::nullopt, std::numeric_limits<double>::infinity()});
      continue;
    }
    const double rel = std::abs(*measured - cell.value) / std::abs(cell.value);
    if (!(rel <= rel_tol)) out.push_back({cell, measured, rel});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string suite_metadata_json(const ExperimentSuiteResult& result) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : result.metadata) j["metadata"][k] = v;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : result.records) {
    nlohmann::ordered_json e;
    e["kind"] = to_string(r.kind);
    e["dim"] = r.dim;
    e["n"] = r.n;
    e["alpha"] = r.alpha;
    e["shift_c"] = r.shift_c;
    e["delta"] = r.delta;
    e["convention"] = to_string(r.convention);
    e["init"] = to_string(r.init);
    e["seed"] = r.seed;
    e["norm"] = to_string(r.norm);
    e["sweeps"] = r.entries.size();
    e["converged"] = r.converged;
    j["records"].push_back(std::move(e));
  }
  j["scans"] = result.scans.size();
  return j.dump(2) + '\n';
}

void write_file(const std::string& dir, const std::string& name, const std::string& contents) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

}  // namespace schwarz_ocp::report
