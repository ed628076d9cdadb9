#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "zdim/integer_set.hpp"

namespace zdim {

/// Malformed input data; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// .zset v1:
//   #zset v1
//   #provenance <text>     (zero or more)
//   <decimal integer>\n    (strictly increasing, no whitespace)
void write_zset(std::ostream& out, const IntegerSet& set);
IntegerSet read_zset(std::istream& in);

void save_zset(const std::filesystem::path& path, const IntegerSet& set);
IntegerSet load_zset(const std::filesystem::path& path);

}  // namespace zdim
