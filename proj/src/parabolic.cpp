#include "shtuka/parabolic.hpp"

#include "shtuka/errors.hpp"

namespace shtuka {

ParabolicSpec::ParabolicSpec(std::vector<int> blocks, Perm w) : blocks_(std::move(blocks)), w_(std::move(w)) {
  int total = 0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k] <= 0) throw PreconditionError("Levi block sizes must be positive");
    std_block_.insert(std_block_.end(), blocks_[k], static_cast<int>(k));
    total += blocks_[k];
  }
  if (total != static_cast<int>(w_.size())) throw DimensionMismatch("block sizes do not sum to the rank");
  AffineWeyl::finite(w_);  // validates the permutation
}

ParabolicSpec ParabolicSpec::standard(std::vector<int> blocks) {
  int n = 0;
  for (int b : blocks) n += b;
  return ParabolicSpec(std::move(blocks), identity_perm(n));
}

RootPart ParabolicSpec::part(int i, int j) const {
  int a = block_of(i), b = block_of(j);
  if (a == b) return RootPart::M;
  return a < b ? RootPart::N : RootPart::Nbar;
}

std::vector<std::vector<bool>> ParabolicSpec::mask(RootPart p) const {
  std::vector<std::vector<bool>> m(n(), std::vector<bool>(n(), false));
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) m[i][j] = i != j && part(i, j) == p;
  return m;
}

std::vector<std::vector<int>> ParabolicSpec::block_indices() const {
  std::vector<std::vector<int>> out(blocks_.size());
  for (int i = 0; i < n(); ++i) out[block_of(i)].push_back(i);
  return out;
}

std::string ParabolicSpec::to_string() const {
  std::string s = "blocks=";
  for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "," : "") + std::to_string(blocks_[i]);
  return s + " w=" + perm_cycles_string(w_);
}

}  // namespace shtuka
