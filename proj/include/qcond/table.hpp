#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qcond::cli {

using Cell = std::variant<std::string, double, std::int64_t>;

/// Column-named rectangular result table, the CLI's universal output shape.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Metadata accompanying a table (seed, mode, version, generator, ...).
using Meta = std::map<std::string, Cell>;

enum class Format { csv, json };

/// CSV: '#'-prefixed metadata lines, header row, one row per line, '.'
/// decimal separator, 17 significant digits, '\n' endings, RFC-4180 quoting.
/// JSON: {"meta": {...}, "rows": [...]} with stable key order; numbers
/// round-trip exactly.
std::string emit_table(const Table& table, const Meta& meta, Format format);

/// 17-significant-digit decimal rendering used for CSV cells.
std::string format_double(double v);

}  // namespace qcond::cli
