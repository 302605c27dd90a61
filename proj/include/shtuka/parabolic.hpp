#pragma once

#include "shtuka/affine_weyl.hpp"

#include <string>
#include <vector>

namespace shtuka {

enum class RootPart { M, N, Nbar };

// P = P_w^{-1} P_std P_w where P_std is block upper triangular with the given block sizes.
class ParabolicSpec {
 public:
  ParabolicSpec() = default;
  ParabolicSpec(std::vector<int> blocks, Perm w);

  static ParabolicSpec standard(std::vector<int> blocks);
  static ParabolicSpec borel(int n) { return standard(std::vector<int>(n, 1)); }
  static ParabolicSpec whole(int n) { return standard({n}); }

  int n() const { return static_cast<int>(w_.size()); }
  const std::vector<int>& blocks() const { return blocks_; }
  const Perm& conjugator() const { return w_; }
  bool is_standard() const { return w_ == identity_perm(n()); }

  int block_of(int i) const { return std_block_[w_[i]]; }
  RootPart part(int i, int j) const;
  std::vector<std::vector<bool>> mask(RootPart p) const;

  // The same parabolic written with the unordered Levi blocks as index sets.
  std::vector<std::vector<int>> block_indices() const;

  bool operator==(const ParabolicSpec& o) const { return blocks_ == o.blocks_ && w_ == o.w_; }
  std::string to_string() const;  // "blocks=2,3 w=(2 3)"

 private:
  std::vector<int> blocks_;
  Perm w_;
  std::vector<int> std_block_;
};

}  // namespace shtuka
