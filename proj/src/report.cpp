#include "shiftword/report.hpp"

#include <ostream>

namespace shiftword {

void RunReport::render(std::ostream& os) const {
  os << "command=" << command << "\n";
  for (const auto& [key, value] : fields) os << key << "=" << value << "\n";
  if (table) {
    os << "table:\n";
    for (size_t i = 0; i < table->header.size(); ++i)
      os << (i ? " " : "") << table->header[i];
    os << "\n";
    for (const auto& row : table->rows) {
      for (size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
      os << "\n";
    }
  }
  os << "exit=" << exit_code << "\n";
}

void RunReport::render_csv(std::ostream& os) const {
  if (!table) return;
  for (size_t i = 0; i < table->header.size(); ++i) os << (i ? "," : "") << table->header[i];
  os << "\n";
  for (const auto& row : table->rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

std::string sigma_label(const std::string& sigma) { return sigma.empty() ? "-" : sigma; }

}  // namespace shiftword
