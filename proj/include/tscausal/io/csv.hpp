#pragma once

// CSV serialisation of time series and of labeled square matrices (scores,
// adjacency). Dialect: comma separator, '.' decimal point, LF line endings,
// UTF-8; one optional header row, detected by a non-numeric first row.
// Numbers are written in the shortest representation that round-trips.

#include <Eigen/Dense>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tscausal/common.hpp"

namespace tscausal {

inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace detail {

inline bool try_parse_double(std::string_view s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline std::vector<std::string> default_names(Index d) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) names.push_back("X" + std::to_string(j + 1));
  return names;
}

}  // namespace detail

struct CsvMatrix {
  Matrix values;
  std::vector<std::string> names;  // column names; defaults X1..Xd
};

// Time series: rows are time steps, columns are variables, optional single
// header row. Malformed cells raise ParseError with their 1-based position.
inline CsvMatrix read_time_series_csv(const std::string& text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("empty input", 1, 1);

  CsvMatrix out;
  std::size_t first_data = 0;
  const auto head = detail::split_fields(lines[0]);
  bool header = false;
  for (const auto& cell : head) {
    double ignored;
    if (!detail::try_parse_double(cell, ignored)) header = true;
  }
  const auto d = static_cast<Index>(head.size());
  if (header) {
    out.names = head;
    first_data = 1;
    if (lines.size() == 1) throw ParseError("no data rows after header", 2, 1);
  } else {
    out.names = detail::default_names(d);
  }

  const auto rows = static_cast<Index>(lines.size() - first_data);
  out.values.resize(rows, d);
  for (Index r = 0; r < rows; ++r) {
    const long line_no = static_cast<long>(first_data) + r + 1;
    const auto fields =
        detail::split_fields(lines[static_cast<std::size_t>(r) + first_data]);
    if (static_cast<Index>(fields.size()) != d)
      throw ParseError("expected " + std::to_string(d) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no, 1);
    for (Index c = 0; c < d; ++c) {
      double v;
      if (!detail::try_parse_double(fields[static_cast<std::size_t>(c)], v))
        throw ParseError("cannot parse '" +
                             fields[static_cast<std::size_t>(c)] +
                             "' as a number",
                         line_no, c + 1);
      out.values(r, c) = v;
    }
  }
  return out;
}

inline std::string write_time_series_csv(const Matrix& values,
                                         const std::vector<std::string>& names) {
  require(static_cast<Index>(names.size()) == values.cols(),
          "one name per column required");
  std::string out;
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) out += ',';
    out += names[j];
  }
  out += '\n';
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      if (c) out += ',';
      out += format_double(values(r, c));
    }
    out += '\n';
  }
  return out;
}

// Labeled square matrix (scores / adjacency): header row starts with an
// empty cell, data rows carry the row label in the first field. A plain
// numeric matrix without labels is accepted too.
inline std::string write_labeled_matrix_csv(
    const Matrix& values, const std::vector<std::string>& names) {
  require(values.rows() == values.cols(), "matrix must be square");
  require(static_cast<Index>(names.size()) == values.cols(),
          "one name per column required");
  std::string out;
  for (const auto& name : names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (Index r = 0; r < values.rows(); ++r) {
    out += names[static_cast<std::size_t>(r)];
    for (Index c = 0; c < values.cols(); ++c) {
      out += ',';
      out += format_double(values(r, c));
    }
    out += '\n';
  }
  return out;
}

inline CsvMatrix read_labeled_matrix_csv(const std::string& text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("empty input", 1, 1);
  const auto head = detail::split_fields(lines[0]);
  const bool labeled = !head.empty() && head[0].empty();
  if (!labeled) {
    CsvMatrix out = read_time_series_csv(text);
    require_input(out.values.rows() == out.values.cols(),
                  "matrix input must be square");
    return out;
  }

  CsvMatrix out;
  out.names.assign(head.begin() + 1, head.end());
  const auto d = static_cast<Index>(out.names.size());
  if (static_cast<Index>(lines.size()) - 1 != d)
    throw ParseError("expected " + std::to_string(d) + " data rows",
                     static_cast<long>(lines.size()), 1);
  out.values.resize(d, d);
  for (Index r = 0; r < d; ++r) {
    const long line_no = r + 2;
    const auto fields = detail::split_fields(lines[static_cast<std::size_t>(r) + 1]);
    if (static_cast<Index>(fields.size()) != d + 1)
      throw ParseError("expected " + std::to_string(d + 1) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no, 1);
    for (Index c = 0; c < d; ++c) {
      double v;
      if (!detail::try_parse_double(fields[static_cast<std::size_t>(c) + 1], v))
        throw ParseError("cannot parse '" +
                             fields[static_cast<std::size_t>(c) + 1] +
                             "' as a number",
                         line_no, c + 2);
      out.values(r, c) = v;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// File helpers. Writes go to a temporary file in the target directory which
// is renamed into place, so failures never leave partial output behind.

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading " + path.string());
  return content;
}

inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : ".";
  std::error_code ec;
  if (!fs::exists(dir)) {
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string());
  }
  const fs::path tmp =
      dir / (path.filename().string() + ".tmp" +
             std::to_string(std::random_device{}()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename temporary file onto " + path.string());
  }
}

}  // namespace tscausal
