#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace knotineq {

// Reads comma-separated rows with double-quote escaping (quoted fields may
// contain commas, doubled quotes, and newlines). Returns one vector of
// fields per row; blank lines are skipped.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

// Quotes a field if it needs quoting.
std::string csv_escape(const std::string& field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Helpers for the tab-separated config files: strips full-line # comments
// and surrounding whitespace; returns false for lines to skip.
bool config_line(const std::string& raw, std::string& out);

std::vector<std::string> split_tab(const std::string& line);

std::string trim(const std::string& s);

}  // namespace knotineq
