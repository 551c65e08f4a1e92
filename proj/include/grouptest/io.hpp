#ifndef GROUPTEST_IO_HPP
#define GROUPTEST_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "grouptest/functions.hpp"
#include "grouptest/group.hpp"

namespace grouptest {

// .grp: line 1 is the order n, lines 2..n+1 hold one Cayley-table row each
// (n whitespace-separated 0-based indices).  Parse errors carry line numbers.
GroupPtr read_group(std::istream& in, const std::string& name = "file");
void write_group(std::ostream& out, const FiniteGroup& g);

// Accepts either a builtin spec string ("builtin:...") or a .grp path.
GroupPtr load_group(const std::string& spec_or_path, int order_cap = FiniteGroup::kDefaultOrderCap);

// .fn: header "scalar n" followed by n lines "re im", or "matrix n d"
// followed by n*d lines of 2d floats (row-major, element blocks in group
// index order).
struct LoadedFunction {
  std::optional<ScalarFunction> scalar;
  std::optional<MatrixFunction> matrix;

  bool is_scalar() const { return scalar.has_value(); }
};

LoadedFunction read_function(std::istream& in, GroupPtr group, const std::string& name = "file");
LoadedFunction load_function(const std::string& path, GroupPtr group);
ScalarFunction load_scalar_function(const std::string& path, GroupPtr group);
MatrixFunction load_matrix_function(const std::string& path, GroupPtr group);

void write_function(std::ostream& out, const ScalarFunction& f);
void write_function(std::ostream& out, const MatrixFunction& f);
void save_function(const std::string& path, const ScalarFunction& f);
void save_function(const std::string& path, const MatrixFunction& f);

void save_group(const std::string& path, const FiniteGroup& g);

}  // namespace grouptest

#endif
