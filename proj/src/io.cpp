#include "tenkit/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

namespace tenkit {

std::string fmt(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string fmt(const Vector& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (const char ch : line) {
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r') {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

double parse_real(const std::string& tok, const std::string& source, std::size_t line) {
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  if (begin != end && *begin == '+') ++begin;
  double v = 0.0;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) fail(source, line, "bad real '" + tok + "'");
  return v;
}

long parse_int(const std::string& tok, const std::string& source, std::size_t line) {
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  if (begin != end && *begin == '+') ++begin;
  long v = 0;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) fail(source, line, "bad integer '" + tok + "'");
  return v;
}

struct LineReader {
  LineReader(std::istream& i, std::string s) : in(i), source(std::move(s)) {}
  std::istream& in;
  std::string source;
  std::size_t lineno = 0;
  std::string pending;
  bool has_pending = false;

  bool next(std::string& line) {
    if (has_pending) {
      line = pending;
      has_pending = false;
      return true;
    }
    if (std::getline(in, line)) {
      ++lineno;
      return true;
    }
    return false;
  }
  void push_back(std::string line) {
    pending = std::move(line);
    has_pending = true;
  }
};

// Reads one block whose header tokens are already split; leaves the next
// block's header line pushed back.
Tensor read_block(LineReader& rd, const std::vector<std::string>& header, std::size_t header_line,
                  std::size_t element_cap) {
  if (header.size() != 3) fail(rd.source, header_line, "expected 'tensor <order> <dim>'");
  const long m = parse_int(header[1], rd.source, header_line);
  const long n = parse_int(header[2], rd.source, header_line);
  if (m < 2) fail(rd.source, header_line, "tensor order must be at least 2");
  if (n < 1) fail(rd.source, header_line, "tensor dimension must be at least 1");

  Tensor t(static_cast<int>(m), static_cast<int>(n), element_cap);
  std::unordered_set<std::size_t> seen;
  std::string line;
  while (rd.next(line)) {
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] == "tensor" || toks[0] == "scaling") {
      rd.push_back(line);
      break;
    }
    if (toks.size() != static_cast<std::size_t>(m) + 1) {
      fail(rd.source, rd.lineno,
           "expected " + std::to_string(m) + " indices and a value, got " +
               std::to_string(toks.size()) + " tokens");
    }
    MultiIndex idx(static_cast<std::size_t>(m));
    for (long k = 0; k < m; ++k) {
      const long c = parse_int(toks[static_cast<std::size_t>(k)], rd.source, rd.lineno);
      if (c < 1 || c > n) {
        fail(rd.source, rd.lineno,
             "index component " + std::to_string(k + 1) + " is " + std::to_string(c) +
                 ", outside [1, " + std::to_string(n) + "]");
      }
      idx[static_cast<std::size_t>(k)] = static_cast<int>(c - 1);
    }
    const double v = parse_real(toks.back(), rd.source, rd.lineno);
    if (!std::isfinite(v)) fail(rd.source, rd.lineno, "entry value must be finite");
    if (!seen.insert(t.offset(idx)).second) fail(rd.source, rd.lineno, "duplicate index tuple");
    t.set(idx, v);
  }
  return t;
}

}  // namespace

Tensor parse_tensor(std::istream& in, const std::string& source, std::size_t element_cap) {
  LineReader rd{in, source};
  std::string line;
  while (rd.next(line)) {
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] != "tensor") fail(source, rd.lineno, "expected 'tensor <order> <dim>' header");
    return read_block(rd, toks, rd.lineno, element_cap);
  }
  throw ParseError(source + ": no tensor block found");
}

Tensor parse_tensor_file(const std::string& path, std::size_t element_cap) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  return parse_tensor(in, path, element_cap);
}

std::vector<Tensor> parse_tensor_blocks(std::istream& in, const std::string& source,
                                        std::size_t element_cap) {
  LineReader rd{in, source};
  std::vector<Tensor> blocks;
  std::string line;
  while (rd.next(line)) {
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] != "tensor") fail(source, rd.lineno, "expected 'tensor <order> <dim>' header");
    blocks.push_back(read_block(rd, toks, rd.lineno, element_cap));
  }
  if (blocks.empty()) throw ParseError(source + ": no tensor block found");
  return blocks;
}

void write_tensor(std::ostream& out, const Tensor& t, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "tensor " << t.order() << ' ' << t.dim() << '\n';
  MultiIndex idx(static_cast<std::size_t>(t.order()), 0);
  const auto vals = t.values();
  std::size_t off = 0;
  do {
    if (vals[off] != 0.0) {
      for (const int c : idx) out << c + 1 << ' ';
      out << fmt(vals[off]) << '\n';
    }
    ++off;
  } while (detail::advance_index(idx, t.dim()));
}

void write_tensor_file(const std::string& path, const Tensor& t,
                       const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  write_tensor(out, t, comments);
  if (!out.flush()) throw ParseError(path + ": write failed");
}

void write_scaling(std::ostream& out, const Vector& w) {
  out << "scaling " << w.size() << '\n';
  for (int i = 0; i < w.size(); ++i) out << (i ? " " : "") << fmt(w[i]);
  out << '\n';
}

Vector parse_scaling(std::istream& in, const std::string& source) {
  LineReader rd{in, source};
  std::string line;
  while (rd.next(line)) {
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] != "scaling" || toks.size() != 2) {
      fail(source, rd.lineno, "expected 'scaling <dim>' header");
    }
    const long n = parse_int(toks[1], source, rd.lineno);
    if (n < 1) fail(source, rd.lineno, "scaling dimension must be at least 1");
    while (rd.next(line)) {
      const auto vals = tokens_of(line);
      if (vals.empty()) continue;
      if (vals.size() != static_cast<std::size_t>(n)) {
        fail(source, rd.lineno, "expected " + std::to_string(n) + " values");
      }
      Vector w(n);
      for (long i = 0; i < n; ++i)
        w[i] = parse_real(vals[static_cast<std::size_t>(i)], source, rd.lineno);
      return w;
    }
    fail(source, rd.lineno, "missing scaling values line");
  }
  throw ParseError(source + ": no scaling block found");
}

Vector parse_vector_text(const std::string& text, const std::string& source) {
  const auto toks = tokens_of(text);
  if (toks.empty()) throw ParseError(source + ": empty vector");
  Vector v(static_cast<int>(toks.size()));
  for (std::size_t i = 0; i < toks.size(); ++i) {
    v[static_cast<int>(i)] = parse_real(toks[i], source, 1);
  }
  return v;
}

Vector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (tokens_of(line).empty()) continue;
    return parse_vector_text(line, path);
  }
  throw ParseError(path + ": no vector line found");
}

void Report::add(const std::string& key, const std::string& value) { items_.emplace_back(key, value); }
void Report::add(const std::string& key, const char* value) { items_.emplace_back(key, value); }
void Report::add(const std::string& key, double value) { items_.emplace_back(key, fmt(value)); }
void Report::add(const std::string& key, int value) { items_.emplace_back(key, std::to_string(value)); }
void Report::add(const std::string& key, bool value) { items_.emplace_back(key, value ? "true" : "false"); }
void Report::add(const std::string& key, const Vector& value) { items_.emplace_back(key, fmt(value)); }

void Report::print(std::ostream& out) const {
  for (const auto& [k, v] : items_) out << k << '=' << v << '\n';
}

}  // namespace tenkit
