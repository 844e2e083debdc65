#pragma once

#include <string>
#include <vector>

#include "skeptic/types.hpp"

namespace skeptic {

struct CsvOptions {
  bool header = false;
  char delimiter = ',';
};

// Observation matrix plus column labels and the ordered log of every
// preprocessing step applied since ingestion.
struct Dataset {
  Matrix matrix;
  std::vector<std::string> column_labels;
  std::string source;
  std::vector<std::string> transform_log;

  Index n() const { return matrix.rows(); }
  Index d() const { return matrix.cols(); }
};

// Rectangular numeric CSV (RFC-4180-style quoting, UTF-8). Parse errors
// carry the 1-based line number. Headerless files get labels V1..Vd.
Dataset ingest_csv(const std::string& path, const CsvOptions& options = {});

Dataset dataset_from_matrix(Matrix m, std::vector<std::string> labels = {},
                            std::string source = "<memory>");

// Row t becomes log(S_t / S_{t-1}); output has n-1 rows. All prices must be
// strictly positive.
Dataset log_returns(const Dataset& prices);

// Clips each column to [mean - k*MAD, mean + k*MAD] where MAD is the mean
// absolute deviation about the column mean.
Dataset winsorize_mad(const Dataset& data, double k = 6.0);

}  // namespace skeptic
