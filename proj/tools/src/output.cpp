#include "sofic_cli/output.hpp"

#include "sofic/subset.hpp"

#include <fstream>

namespace sofic::cli {

std::string cell(double x) { return format_double(x); }
std::string cell(std::size_t x) { return std::to_string(x); }
std::string cell(bool x) { return x ? "1" : "0"; }

std::string Table::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
  return out;
}

void RunContext::write(const std::string& name, const std::string& content) {
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / name;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << content;
  written.push_back(name);
}

}  // namespace sofic::cli
