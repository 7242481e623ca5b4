#include "phishrev/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "phishrev/text.hpp"

namespace phishrev {

std::string_view label_name(Label l) {
  return l == Label::phishing ? "phishing" : "legitimate";
}

namespace {

std::optional<Label> parse_label(std::string_view raw) {
  const auto v = text::to_lower(text::trim(raw));
  if (v == "legitimate" || v == "0") return Label::legitimate;
  if (v == "phishing" || v == "1") return Label::phishing;
  return std::nullopt;
}

[[noreturn]] void fail_row(std::size_t row, const std::string& what) {
  throw DatasetError("row " + std::to_string(row) + ": " + what);
}

std::vector<std::string_view> split_lines(std::string_view csv) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < csv.size()) {
    auto end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    auto line = csv.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace

std::vector<FeatureRecord> parse_dataset(std::string_view csv, const CsvSchema& schema) {
  const auto lines = split_lines(csv);
  if (lines.empty()) throw DatasetError("missing header row");

  auto header = text::split_csv_line(lines.front());
  for (auto& h : header) h = std::string(text::trim(h));

  std::optional<std::size_t> label_col;
  std::optional<std::size_t> meta_col;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& name = header[c];
    if (name == schema.label_column) {
      label_col = c;
    } else if (!schema.meta_column.empty() && name == schema.meta_column) {
      meta_col = c;
    } else if (std::find(schema.ignored_columns.begin(), schema.ignored_columns.end(), name) ==
               schema.ignored_columns.end()) {
      feature_cols.push_back(c);
    }
  }
  if (!label_col) throw DatasetError("header has no label column '" + schema.label_column + "'");
  if (schema.require_meta && !meta_col)
    throw DatasetError("header has no meta column '" + schema.meta_column + "'");
  if (feature_cols.size() != schema.feature_count)
    throw DatasetError("header has " + std::to_string(feature_cols.size()) +
                       " feature columns, expected " + std::to_string(schema.feature_count));

  std::vector<FeatureRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li;  // 1-based data row
    const auto cells = text::split_csv_line(lines[li]);
    if (cells.size() != header.size())
      fail_row(row, "expected " + std::to_string(header.size()) + " columns, found " +
                        std::to_string(cells.size()));

    FeatureRecord rec;
    rec.id = records.size();
    rec.features.reserve(feature_cols.size());
    for (auto c : feature_cols) {
      auto v = text::parse_double(cells[c]);
      if (!v || !std::isfinite(*v))
        fail_row(row, "non-numeric value '" + cells[c] + "' in column '" + header[c] + "'");
      rec.features.push_back(*v);
    }
    auto label = parse_label(cells[*label_col]);
    if (!label) fail_row(row, "unknown label value '" + cells[*label_col] + "'");
    rec.label = *label;
    if (meta_col) {
      const auto m = text::trim(cells[*meta_col]);
      if (m == "1") {
        rec.meta_present = true;
      } else if (m == "0") {
        rec.meta_present = false;
      } else if (!m.empty()) {
        fail_row(row, "meta value must be 0 or 1, found '" + std::string(m) + "'");
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<FeatureRecord> load_dataset(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open dataset: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str(), schema);
}

const FeatureRecord& record_at(std::span<const FeatureRecord> records, InstanceId id) {
  if (id >= records.size() || records[id].id != id)
    throw DatasetError("instance id " + std::to_string(id) + " is not present");
  return records[id];
}

std::map<InstanceId, bool> meta_from_snapshot_dir(const std::string& dir,
                                                  std::span<const FeatureRecord> records) {
  std::map<InstanceId, bool> out;
  for (const auto& r : records) {
    std::ifstream in(dir + "/" + std::to_string(r.id) + ".html", std::ios::binary);
    if (!in) {
      out[r.id] = false;
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out[r.id] = extract_meta_presence(ss.str());
  }
  return out;
}

}  // namespace phishrev
