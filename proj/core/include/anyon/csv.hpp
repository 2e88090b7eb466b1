#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anyon {

// Minimal RFC 4180 writer: CRLF record separators, fields quoted only when
// they contain a comma, quote or newline. Numeric fields are rendered with
// %.17g so equal doubles always produce equal bytes.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);

  static std::string num(double v);
  static std::string num(int v);
  static std::string num(long long v);

 private:
  std::ostream& out_;
};

}  // namespace anyon
