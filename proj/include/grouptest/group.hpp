#ifndef GROUPTEST_GROUP_HPP
#define GROUPTEST_GROUP_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "grouptest/rng.hpp"
#include "grouptest/types.hpp"

namespace grouptest {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Finite group given by its Cayley table.  Immutable after construction and
// safe to share across threads.  Element 0 is always the identity;
// constructors relabel if needed.  Conjugacy classes are computed eagerly and
// ordered by (size, smallest element), so the identity class is class 0.
class FiniteGroup {
 public:
  static GroupPtr from_cayley_table(const std::vector<std::vector<int>>& table);

  // Builtin families.  Element orderings are frozen so function files stay
  // portable: cyclic/boolean_cube count upward (bit i of the index is
  // coordinate i), symmetric(n) lists permutations lexicographically in
  // one-line notation, dihedral(n) lists the n rotations then the n
  // reflections, quaternion is [1,-1,i,-i,j,-j,k,-k].
  static GroupPtr cyclic(int n, int order_cap = kDefaultOrderCap);
  static GroupPtr boolean_cube(int n, int order_cap = kDefaultOrderCap);
  static GroupPtr dihedral(int n, int order_cap = kDefaultOrderCap);
  static GroupPtr symmetric(int n, int order_cap = kDefaultOrderCap);
  static GroupPtr quaternion(int order_cap = kDefaultOrderCap);
  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b,
                                 int order_cap = kDefaultOrderCap);

  // Parses spec strings like "builtin:symmetric:4" or
  // "builtin:product:builtin:cyclic:2,builtin:dihedral:3".
  static GroupPtr from_spec(const std::string& spec, int order_cap = kDefaultOrderCap);

  int order() const { return n_; }
  int mul(int x, int y) const { return mul_[std::size_t(x) * n_ + y]; }
  int inv(int x) const { return inv_[x]; }
  // z x z^{-1}
  int conjugate(int z, int x) const { return mul(mul(z, x), inv(z)); }

  int class_count() const { return int(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int x) const { return class_of_[x]; }
  const std::vector<int>& class_members(int c) const { return classes_[c]; }

  // |{z : z x z^{-1} = y}| by exhaustive scan.
  std::int64_t conjugation_fiber_size(int x, int y) const;

  int uniform_element(Rng& rng) const { return int(rng.below(std::uint64_t(n_))); }

  bool same_table(const FiniteGroup& other) const;

  const std::string& name() const { return name_; }

  static constexpr int kDefaultOrderCap = 2048;

 private:
  FiniteGroup() = default;
  static GroupPtr build(std::vector<int> mul, int n, std::string name);
  void validate() const;
  void compute_classes();

  int n_ = 0;
  std::vector<int> mul_;  // row-major n*n
  std::vector<int> inv_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::string name_;
};

}  // namespace grouptest

#endif
