#include "grouptest/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace grouptest {

namespace {

[[noreturn]] void fail_at(const std::string& name, int line, const std::string& what) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

bool next_data_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
  }
  return false;
}

std::vector<double> parse_doubles(const std::string& name, int lineno, const std::string& line,
                                  std::size_t expect) {
  std::istringstream ss(line);
  std::vector<double> out;
  double v;
  while (ss >> v) out.push_back(v);
  if (!ss.eof()) fail_at(name, lineno, "malformed number");
  if (out.size() != expect)
    fail_at(name, lineno,
            "expected " + std::to_string(expect) + " numbers, got " + std::to_string(out.size()));
  return out;
}

}  // namespace

GroupPtr read_group(std::istream& in, const std::string& name) {
  int lineno = 0;
  std::string line;
  if (!next_data_line(in, line, lineno)) fail_at(name, 1, "empty group file");
  int n = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> n) || n <= 0) fail_at(name, lineno, "first line must be the group order");
    std::string rest;
    if (ss >> rest) fail_at(name, lineno, "unexpected token '" + rest + "' after the order");
  }
  std::vector<std::vector<int>> table(n);
  for (int r = 0; r < n; ++r) {
    if (!next_data_line(in, line, lineno))
      fail_at(name, lineno + 1, "missing row " + std::to_string(r) + " of the Cayley table");
    std::istringstream ss(line);
    int v;
    while (ss >> v) table[r].push_back(v);
    if (!ss.eof()) fail_at(name, lineno, "malformed index");
    if (int(table[r].size()) != n)
      fail_at(name, lineno,
              "expected " + std::to_string(n) + " entries, got " + std::to_string(table[r].size()));
    for (int v2 : table[r])
      if (v2 < 0 || v2 >= n) fail_at(name, lineno, "index " + std::to_string(v2) + " out of range");
  }
  try {
    return FiniteGroup::from_cayley_table(table);
  } catch (const NotAGroup& e) {
    throw NotAGroup(name + ": " + e.what());
  }
}

void write_group(std::ostream& out, const FiniteGroup& g) {
  out << g.order() << "\n";
  for (int x = 0; x < g.order(); ++x) {
    for (int y = 0; y < g.order(); ++y) {
      if (y) out << ' ';
      out << g.mul(x, y);
    }
    out << "\n";
  }
}

GroupPtr load_group(const std::string& spec_or_path, int order_cap) {
  if (spec_or_path.rfind("builtin:", 0) == 0)
    return FiniteGroup::from_spec(spec_or_path, order_cap);
  std::ifstream in(spec_or_path);
  if (!in) throw ParseError("cannot open group file '" + spec_or_path + "'");
  return read_group(in, spec_or_path);
}

LoadedFunction read_function(std::istream& in, GroupPtr group, const std::string& name) {
  int lineno = 0;
  std::string line;
  if (!next_data_line(in, line, lineno)) fail_at(name, 1, "empty function file");
  std::istringstream head(line);
  std::string kind;
  head >> kind;
  LoadedFunction out;
  if (kind == "scalar") {
    int n = 0;
    if (!(head >> n)) fail_at(name, lineno, "header must be 'scalar n'");
    if (n != group->order())
      fail_at(name, lineno,
              "function order " + std::to_string(n) + " does not match group order " +
                  std::to_string(group->order()));
    std::vector<Complex> values(n);
    for (int i = 0; i < n; ++i) {
      if (!next_data_line(in, line, lineno)) fail_at(name, lineno + 1, "missing value line");
      const auto v = parse_doubles(name, lineno, line, 2);
      values[i] = Complex(v[0], v[1]);
    }
    out.scalar = ScalarFunction::from_values(std::move(group), std::move(values));
    return out;
  }
  if (kind == "matrix") {
    int n = 0, d = 0;
    if (!(head >> n >> d)) fail_at(name, lineno, "header must be 'matrix n d'");
    if (n != group->order())
      fail_at(name, lineno,
              "function order " + std::to_string(n) + " does not match group order " +
                  std::to_string(group->order()));
    if (d < 1) fail_at(name, lineno, "matrix dimension must be >= 1");
    std::vector<Matrix> values;
    values.reserve(n);
    for (int i = 0; i < n; ++i) {
      Matrix m(d, d);
      for (int r = 0; r < d; ++r) {
        if (!next_data_line(in, line, lineno)) fail_at(name, lineno + 1, "missing matrix row");
        const auto v = parse_doubles(name, lineno, line, std::size_t(2) * d);
        for (int c = 0; c < d; ++c) m(r, c) = Complex(v[2 * c], v[2 * c + 1]);
      }
      values.push_back(std::move(m));
    }
    out.matrix = MatrixFunction::from_values(std::move(group), d, std::move(values));
    return out;
  }
  fail_at(name, lineno, "unknown function kind '" + kind + "' (want scalar or matrix)");
}

LoadedFunction load_function(const std::string& path, GroupPtr group) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open function file '" + path + "'");
  return read_function(in, std::move(group), path);
}

ScalarFunction load_scalar_function(const std::string& path, GroupPtr group) {
  LoadedFunction f = load_function(path, std::move(group));
  if (!f.scalar) throw ParseError(path + ": expected a scalar function");
  return *std::move(f.scalar);
}

MatrixFunction load_matrix_function(const std::string& path, GroupPtr group) {
  LoadedFunction f = load_function(path, std::move(group));
  if (!f.matrix) throw ParseError(path + ": expected a matrix function");
  return *std::move(f.matrix);
}

namespace {

void write_double_pair(std::ostream& out, Complex v) {
  out << std::setprecision(17) << v.real() << ' ' << v.imag();
}

}  // namespace

void write_function(std::ostream& out, const ScalarFunction& f) {
  out << "scalar " << f.group->order() << "\n";
  for (const Complex& v : f.values) {
    write_double_pair(out, v);
    out << "\n";
  }
}

void write_function(std::ostream& out, const MatrixFunction& f) {
  out << "matrix " << f.group->order() << ' ' << f.dim << "\n";
  for (const Matrix& m : f.values) {
    for (int r = 0; r < f.dim; ++r) {
      for (int c = 0; c < f.dim; ++c) {
        if (c) out << ' ';
        write_double_pair(out, m(r, c));
      }
      out << "\n";
    }
  }
}

namespace {

template <typename T>
void save_to(const std::string& path, const T& value, void (*writer)(std::ostream&, const T&)) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  writer(out, value);
}

}  // namespace

void save_function(const std::string& path, const ScalarFunction& f) {
  save_to<ScalarFunction>(path, f, [](std::ostream& o, const ScalarFunction& v) { write_function(o, v); });
}

void save_function(const std::string& path, const MatrixFunction& f) {
  save_to<MatrixFunction>(path, f, [](std::ostream& o, const MatrixFunction& v) { write_function(o, v); });
}

void save_group(const std::string& path, const FiniteGroup& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_group(out, g);
}

}  // namespace grouptest
