#include "reductions_common.hpp"

#include <filesystem>
#include <fstream>

#include "quadchase/error.hpp"
#include "quadchase/reductions.hpp"

namespace quadchase {

namespace detail {

bool is_symbol_name(std::string_view name) {
  if (name.empty()) return false;
  for (char ch : name) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_';
    if (!ok) return false;
  }
  return true;
}

std::vector<std::string> tokens(std::string_view line) {
  line = line.substr(0, line.find('#'));
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

void write_encoding(const Encoding& e, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create directory " + dir + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& content) {
    fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  };
  write("system.nq", serialize_nquads(e.system.quads));
  write("rules.qrules", serialize_rules(e.system.rules));
  write("query.ccq", serialize_query(e.query));
}

}  // namespace quadchase
