#include "zdim/zset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace zdim {

namespace {

constexpr std::string_view kMagic = "#zset v1";
constexpr std::string_view kProvenance = "#provenance ";

bool valid_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  if (s[i] == '0' && s.size() > i + 1) return false;
  if (s == "-0") return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

void write_zset(std::ostream& out, const IntegerSet& set) {
  out << kMagic << '\n';
  if (!set.provenance().empty()) {
    std::istringstream lines(set.provenance());
    for (std::string line; std::getline(lines, line);) out << kProvenance << line << '\n';
  }
  set.visit([&](auto xs) {
    for (const auto& x : xs) out << x << '\n';
  });
}

IntegerSet read_zset(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty file, expected '#zset v1'", 1);
  ++lineno;
  if (line != kMagic) throw ParseError("bad header, expected '#zset v1'", lineno);

  std::string provenance;
  std::vector<Integer> values;
  bool saw_value = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.starts_with(kProvenance) && !saw_value) {
      if (!provenance.empty()) provenance += '\n';
      provenance += line.substr(kProvenance.size());
      continue;
    }
    if (!valid_integer_literal(line)) throw ParseError("not a decimal integer: '" + line + "'", lineno);
    Integer v(line, 10);
    if (!values.empty()) {
      if (v == values.back()) throw ParseError("duplicate element " + line, lineno);
      if (v < values.back()) throw ParseError("element " + line + " out of order", lineno);
    }
    values.push_back(std::move(v));
    saw_value = true;
  }
  if (!in.eof()) throw ParseError("read failure", lineno);
  return IntegerSet::from_sorted(std::move(values), std::move(provenance));
}

void save_zset(const std::filesystem::path& path, const IntegerSet& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_zset(out, set);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

IntegerSet load_zset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_zset(in);
}

}  // namespace zdim
