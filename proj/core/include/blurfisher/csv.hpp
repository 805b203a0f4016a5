#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace blurfisher::csv {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
  /// Column index by name, or -1.
  long column(const std::string& name) const;
};

/// RFC 4180 parsing: quoted fields, doubled quotes, CRLF or LF line ends.
Table parse(const std::string& text);
Table read(const std::filesystem::path& path);

std::string escape(const std::string& field);
std::string format_row(const Row& row);

}  // namespace blurfisher::csv
