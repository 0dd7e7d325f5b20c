#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "enkcf/features.hpp"

namespace enkcf {

ColorNamingTable::ColorNamingTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.size() != static_cast<std::size_t>(kRows)) {
    throw FormatError("color naming table needs " + std::to_string(kRows) + " rows, got " +
                      std::to_string(rows_.size()));
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    double sum = 0.0;
    for (double p : rows_[r]) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw FormatError("color naming table row " + std::to_string(r) +
                          " has an entry outside [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-3) {
      throw FormatError("color naming table row " + std::to_string(r) + " sums to " +
                        std::to_string(sum));
    }
  }
}

ColorNamingTable ColorNamingTable::parse(std::string_view text) {
  std::vector<Row> rows;
  rows.reserve(kRows);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    Row row{};
    int count = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r' || *p == ',')) ++p;
      if (p == end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{} || count >= kColorNames) {
        throw FormatError("color naming table line " + std::to_string(line_no) +
                          ": expected 11 numbers");
      }
      row[count++] = v;
      p = next;
    }
    if (count == 0) continue;  // blank line
    if (count != kColorNames) {
      throw FormatError("color naming table line " + std::to_string(line_no) + ": expected 11 numbers, got " +
                        std::to_string(count));
    }
    rows.push_back(row);
  }
  return ColorNamingTable(std::move(rows));
}

ColorNamingTable ColorNamingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open color naming table " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

FeatureMap extract_color_naming(const Image& patch, const ColorNamingTable& table, int cell,
                                Execution exec) {
  if (patch.empty()) throw DimensionError("extract_color_naming: empty patch");
  if (!patch.is_color()) {
    throw DimensionError("extract_color_naming: color names need an RGB patch");
  }
  if (cell < 1 || patch.width() < cell || patch.height() < cell) {
    throw DimensionError("extract_color_naming: patch smaller than one cell");
  }
  const int wb = patch.width() / cell;
  const int hb = patch.height() / cell;
  const double inv_area = 1.0 / (cell * cell);
  FeatureMap out(wb, hb, kColorNames);

  for_each_index(exec, hb, [&](int cy) {
    for (int cx = 0; cx < wb; ++cx) {
      ColorNamingTable::Row acc{};
      for (int y = cy * cell; y < (cy + 1) * cell; ++y) {
        for (int x = cx * cell; x < (cx + 1) * cell; ++x) {
          const auto& row = table.lookup(patch.at(x, y, 0), patch.at(x, y, 1), patch.at(x, y, 2));
          for (int k = 0; k < kColorNames; ++k) acc[k] += row[k];
        }
      }
      const std::size_t i = static_cast<std::size_t>(cy) * wb + cx;
      for (int k = 0; k < kColorNames; ++k) out.channel(k)[i] = acc[k] * inv_area;
    }
  });
  return out;
}

}  // namespace enkcf
