#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tenkit/tensor.hpp"

namespace tenkit {

// Malformed input (bad header, bad number, duplicate entry, missing file).
// Distinct from domain errors so the CLI can map it to its own exit code.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal that round-trips the double (via to_chars).
std::string fmt(double v);
std::string fmt(const Vector& v);  // comma-separated

// Text format: `tensor <m> <n>` header, then one `<i1> ... <im> <value>` line
// per nonzero (1-based), `#` comments anywhere. Reads one block; stops cleanly
// at EOF or at the next `tensor`/`scaling` header.
Tensor parse_tensor(std::istream& in, const std::string& source = "<stream>",
                    std::size_t element_cap = kDefaultElementCap);
Tensor parse_tensor_file(const std::string& path, std::size_t element_cap = kDefaultElementCap);
std::vector<Tensor> parse_tensor_blocks(std::istream& in, const std::string& source = "<stream>",
                                        std::size_t element_cap = kDefaultElementCap);

void write_tensor(std::ostream& out, const Tensor& t,
                  const std::vector<std::string>& comments = {});
void write_tensor_file(const std::string& path, const Tensor& t,
                       const std::vector<std::string>& comments = {});

// `scaling <n>` header plus one line of n values.
void write_scaling(std::ostream& out, const Vector& w);
Vector parse_scaling(std::istream& in, const std::string& source = "<stream>");

// One line of whitespace- or comma-separated reals.
Vector parse_vector_text(const std::string& text, const std::string& source = "<arg>");
Vector read_vector_file(const std::string& path);

// Flat key=value report block, one pair per line, printed in insertion order.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value);
  void add(const std::string& key, double value);
  void add(const std::string& key, int value);
  void add(const std::string& key, bool value);
  void add(const std::string& key, const Vector& value);
  void print(std::ostream& out) const;
  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace tenkit
