#include "skeptic/pipeline.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace skeptic {

namespace {

// One CSV record honoring quoted fields; returns false on malformed quoting.
bool split_record(const std::string& line, char delimiter,
                  std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool in_quotes = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == delimiter) {
      fields.push_back(cur);
      cur.clear();
    } else if (c == '\r' && i + 1 == line.size()) {
      // trailing CR from CRLF
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return !in_quotes;
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, size_t line_no, size_t col) {
  const std::string s = trimmed(raw);
  if (s.empty()) {
    throw InvalidInputError("csv: empty cell at line " + std::to_string(line_no) +
                            ", field " + std::to_string(col + 1));
  }
  double value = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
    throw InvalidInputError("csv: non-numeric or non-finite cell '" + s +
                            "' at line " + std::to_string(line_no) + ", field " +
                            std::to_string(col + 1));
  }
  return value;
}

}  // namespace

Dataset ingest_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInputError("csv: cannot open '" + path + "'");
  }
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> fields;
  std::string line;
  size_t line_no = 0;
  size_t width = 0;
  bool expect_header = options.header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    if (!split_record(line, options.delimiter, fields)) {
      throw InvalidInputError("csv: unterminated quote at line " +
                              std::to_string(line_no));
    }
    if (expect_header) {
      for (const auto& f : fields) labels.push_back(trimmed(f));
      width = fields.size();
      expect_header = false;
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw InvalidInputError("csv: ragged row at line " + std::to_string(line_no) +
                              " (expected " + std::to_string(width) + " fields, got " +
                              std::to_string(fields.size()) + ")");
    }
    std::vector<double> row(width);
    for (size_t c = 0; c < width; ++c) row[c] = parse_cell(fields[c], line_no, c);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw InvalidInputError("csv: no data rows in '" + path + "'");
  }

  Dataset ds;
  ds.source = path;
  ds.matrix.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < width; ++j) {
      ds.matrix(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  if (labels.empty()) {
    for (size_t j = 0; j < width; ++j) labels.push_back("V" + std::to_string(j + 1));
  }
  if (labels.size() != width) {
    throw InvalidInputError("csv: header width differs from data width");
  }
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) {
    throw InvalidInputError("csv: duplicate column labels");
  }
  ds.column_labels = std::move(labels);
  ds.transform_log.push_back("ingest:" + path);
  return ds;
}

Dataset dataset_from_matrix(Matrix m, std::vector<std::string> labels,
                            std::string source) {
  Dataset ds;
  if (labels.empty()) {
    for (Index j = 0; j < m.cols(); ++j) {
      labels.push_back("V" + std::to_string(j + 1));
    }
  }
  if (static_cast<Index>(labels.size()) != m.cols()) {
    throw InvalidInputError("dataset: label count differs from column count");
  }
  ds.matrix = std::move(m);
  ds.column_labels = std::move(labels);
  ds.source = std::move(source);
  ds.transform_log.push_back("ingest:" + ds.source);
  return ds;
}

Dataset log_returns(const Dataset& prices) {
  const Index n = prices.n();
  const Index d = prices.d();
  if (n < 2) {
    throw InvalidInputError("log_returns: need at least two rows of prices");
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (!(prices.matrix(i, j) > 0.0)) {
        throw InvalidInputError("log_returns: non-positive price at row " +
                                std::to_string(i) + ", column " +
                                std::to_string(j) + " ('" +
                                prices.column_labels[static_cast<size_t>(j)] +
                                "')");
      }
    }
  }
  Dataset out = prices;
  out.matrix.resize(n - 1, d);
  for (Index i = 1; i < n; ++i) {
    for (Index j = 0; j < d; ++j) {
      out.matrix(i - 1, j) =
          std::log(prices.matrix(i, j)) - std::log(prices.matrix(i - 1, j));
    }
  }
  out.transform_log.push_back("log_returns");
  return out;
}

Dataset winsorize_mad(const Dataset& data, double k) {
  if (!(k > 0.0)) {
    throw InvalidInputError("winsorize_mad: k must be > 0");
  }
  Dataset out = data;
  const Index n = data.n();
  const Index d = data.d();
  for (Index j = 0; j < d; ++j) {
    const double mean = data.matrix.col(j).mean();
    double mad = 0.0;
    for (Index i = 0; i < n; ++i) mad += std::abs(data.matrix(i, j) - mean);
    mad /= static_cast<double>(n);
    const double lo = mean - k * mad;
    const double hi = mean + k * mad;
    for (Index i = 0; i < n; ++i) {
      out.matrix(i, j) = std::clamp(data.matrix(i, j), lo, hi);
    }
  }
  std::ostringstream label;
  label << "winsorize_mad:k=" << k;
  out.transform_log.push_back(label.str());
  return out;
}

}  // namespace skeptic
