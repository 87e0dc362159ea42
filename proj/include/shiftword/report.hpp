#ifndef SHIFTWORD_REPORT_HPP
#define SHIFTWORD_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shiftword {

// Machine-readable run report: ordered key=value lines plus an optional
// residual table. Every numeric field is an exact rational rendered "p/q"
// (integers as "p"), so identical inputs give byte-identical output.
struct ResidualTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> fields;
  std::optional<ResidualTable> table;
  int exit_code = 0;

  void add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }

  void render(std::ostream& os) const;
  void render_csv(std::ostream& os) const;  // the residual table alone
};

// Empty patterns print as "-" in reports and tables.
std::string sigma_label(const std::string& sigma);

}  // namespace shiftword

#endif
