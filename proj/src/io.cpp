#include "skeptic/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skeptic/corr_estimators.hpp"

namespace skeptic {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write '" + path + "'");
  out << content;
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write '" + path + "'");
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidInputError("ragged matrix csv: " + path);
    }
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Index>(rows.size()),
           rows.empty() ? 0 : static_cast<Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return m;
}

void write_edge_list(const std::string& path, const Graph& g,
                     const Matrix* omega) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write '" + path + "'");
  for (const auto& [j, k] : g.edges) {
    out << (j + 1) << '\t' << (k + 1);
    if (omega) out << '\t' << format_double((*omega)(j, k));
    out << '\n';
  }
}

Graph read_edge_list(const std::string& path, Index d) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open '" + path + "'");
  Graph g;
  g.d = d;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    long j = 0, k = 0;
    if (!(ss >> j >> k)) {
      throw InvalidInputError("edge list: malformed line " +
                              std::to_string(line_no) + " in " + path);
    }
    if (j < 1 || k < 1 || j > d || k > d || j == k) {
      throw InvalidInputError("edge list: vertex out of range at line " +
                              std::to_string(line_no));
    }
    g.add_edge(static_cast<Index>(j - 1), static_cast<Index>(k - 1));
  }
  g.normalize();
  return g;
}

void write_dataset_csv(const std::string& path, const Dataset& ds,
                       bool header) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write '" + path + "'");
  if (header) {
    for (size_t j = 0; j < ds.column_labels.size(); ++j) {
      if (j) out << ',';
      out << ds.column_labels[j];
    }
    out << '\n';
  }
  for (Index i = 0; i < ds.matrix.rows(); ++i) {
    for (Index j = 0; j < ds.matrix.cols(); ++j) {
      if (j) out << ',';
      out << format_double(ds.matrix(i, j));
    }
    out << '\n';
  }
}

std::string correlation_summary_json(const CorrelationMatrix& s) {
  json j;
  j["d"] = s.dim();
  j["estimator_kind"] = to_string(s.kind);
  j["min_eigenvalue"] = min_eigenvalue(s.entries);
  j["psd_repaired"] = s.psd_repaired;
  return j.dump(2) + "\n";
}

std::string precision_diagnostics_json(const PrecisionEstimate& est) {
  json j;
  j["d"] = est.omega.rows();
  j["solver"] = to_string(est.solver);
  j["lambda"] = est.lambda;
  j["edge_count"] = est.edge_set.edge_count();
  j["iterations"] = est.diagnostics.iterations;
  j["final_residual"] = est.diagnostics.final_residual;
  j["converged"] = est.diagnostics.converged;
  return j.dump(2) + "\n";
}

std::string concentration_report_json(const ConcentrationReport& report) {
  json j;
  j["d"] = report.d;
  j["trials"] = report.trials;
  auto cell_to_json = [](const ConcentrationCell& c) {
    json out;
    out["n"] = c.n;
    out["bound"] = c.bound;
    out["sup_deviations"] = c.sup_devs;
    out["rate_stats"] = c.rate_stats;
    out["violations"] = c.violations;
    out["median_rate"] = c.median_rate;
    return out;
  };
  j["spearman"] = json::array();
  for (const auto& c : report.rho_cells) j["spearman"].push_back(cell_to_json(c));
  j["kendall"] = json::array();
  for (const auto& c : report.tau_cells) j["kendall"].push_back(cell_to_json(c));
  return j.dump(2) + "\n";
}

void write_model(const std::string& dir, const ModelSpec& model, double s,
                 std::uint64_t seed, int max_degree) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  write_matrix_csv(dir + "/omega0.csv", model.omega0);
  write_matrix_csv(dir + "/sigma0.csv", model.sigma0);
  write_edge_list(dir + "/edges.tsv", model.graph, &model.omega0);
  json j;
  j["d"] = model.graph.d;
  j["s"] = s;
  j["seed"] = seed;
  j["transform"] = to_string(model.transform);
  j["edge_weight"] = kEdgeWeight;
  j["max_degree"] = max_degree;
  j["edge_count"] = model.graph.edge_count();
  j["min_eigenvalue_omega0"] = min_eigenvalue(model.omega0);
  write_text_file(dir + "/model.json", j.dump(2) + "\n");
}

void write_benchmark_csv(const std::string& path, const BenchmarkResult& r) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write '" + path + "'");
  out << "transform,n,solver,estimator,fpr_mean_pct,fpr_sd_pct,fnr_mean_pct,"
         "fnr_sd_pct,score_mean_pct,score_sd_pct,trials_used,failures\n";
  for (const auto& cell : r.cells) {
    out << to_string(cell.transform) << ',' << cell.n << ','
        << to_string(cell.solver) << ',' << to_string(cell.estimator) << ','
        << format_double(mean_of(cell.fpr_pct)) << ','
        << format_double(sd_of(cell.fpr_pct)) << ','
        << format_double(mean_of(cell.fnr_pct)) << ','
        << format_double(sd_of(cell.fnr_pct)) << ','
        << format_double(mean_of(cell.score_pct)) << ','
        << format_double(sd_of(cell.score_pct)) << ','
        << cell.fpr_pct.size() << ',' << cell.failures << '\n';
  }
}

namespace {

// "6(2.2)": integer mean, one-decimal spread in parentheses.
std::string table_entry(const std::vector<double>& values) {
  if (values.empty()) return "-";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%ld(%.1f)", std::lround(mean_of(values)),
                sd_of(values));
  return buf;
}

}  // namespace

void write_benchmark_table(const std::string& path, const BenchmarkResult& r) {
  std::ostringstream out;
  for (auto solver : r.config.solvers) {
    out << "solver: " << to_string(solver) << "\n";
    out << "tf      n     ";
    for (auto est : r.config.estimators) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%-12s %-12s",
                    (to_string(est) + " FPR").c_str(), "FNR");
      out << buf;
    }
    out << "\n";
    for (auto transform : r.config.transforms) {
      for (auto n : r.config.n_values) {
        char head[32];
        std::snprintf(head, sizeof(head), "%-7s %-5ld ",
                      to_string(transform).c_str(), static_cast<long>(n));
        out << head;
        for (auto est : r.config.estimators) {
          const BenchmarkCell* cell = r.find(transform, n, solver, est);
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%-12s %-12s",
                        cell ? table_entry(cell->fpr_pct).c_str() : "-",
                        cell ? table_entry(cell->fnr_pct).c_str() : "-");
          out << buf;
        }
        out << "\n";
      }
    }
    out << "\n";
  }
  write_text_file(path, out.str());
}

void write_roc_csv(const std::string& path,
                   const std::vector<std::vector<RocPoint>>& curves) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write '" + path + "'");
  out << "lambda,fpr,tpr\n";
  for (const auto& curve : curves) {
    for (const auto& p : curve) {
      out << format_double(p.lambda) << ',' << format_double(p.fpr) << ','
          << format_double(p.tpr) << '\n';
    }
  }
}

}  // namespace skeptic
