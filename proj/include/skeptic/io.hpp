#pragma once

#include <string>
#include <vector>

#include "skeptic/evaluation.hpp"
#include "skeptic/pipeline.hpp"
#include "skeptic/synthetic_gen.hpp"
#include "skeptic/types.hpp"

namespace skeptic {

// 17 significant digits; round-trips doubles exactly.
std::string format_double(double v);

void write_matrix_csv(const std::string& path, const Matrix& m);
Matrix read_matrix_csv(const std::string& path);

// Tab-separated "j k omega_jk", 1-indexed, j < k.
void write_edge_list(const std::string& path, const Graph& g,
                     const Matrix* omega = nullptr);
Graph read_edge_list(const std::string& path, Index d);

void write_dataset_csv(const std::string& path, const Dataset& ds,
                       bool header = true);

std::string correlation_summary_json(const CorrelationMatrix& s);
std::string precision_diagnostics_json(const PrecisionEstimate& est);
std::string concentration_report_json(const ConcentrationReport& report);

// model.json plus omega0/sigma0 CSVs and the edge list, under `dir`.
void write_model(const std::string& dir, const ModelSpec& model, double s,
                 std::uint64_t seed, int max_degree);

void write_benchmark_csv(const std::string& path, const BenchmarkResult& r);
void write_benchmark_table(const std::string& path, const BenchmarkResult& r);
void write_roc_csv(const std::string& path,
                   const std::vector<std::vector<RocPoint>>& curves);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace skeptic
