#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "freemeixner/rational.hpp"
#include "freemeixner/space.hpp"

namespace freemeixner {

/// Largest n accepted by the non-crossing enumerators.
inline constexpr int kMaxPartitionSize = 14;

/// Set partition of {1,...,n}, stored as a restricted growth string.
///
/// labels()[i] is the block of element i+1; blocks are numbered in order of their
/// smallest element, so blocks() is sorted and each block is sorted.
class SetPartition {
public:
  SetPartition() = default;
  explicit SetPartition(std::vector<int> labels);
  static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);

  int size() const { return static_cast<int>(labels_.size()); }
  int block_count() const { return block_count_; }
  const std::vector<int>& labels() const { return labels_; }
  std::vector<std::vector<int>> blocks() const;  // 1-based elements
  std::vector<int> block_sizes() const;

  bool is_non_crossing() const;
  int min_block_size() const;

  bool operator==(const SetPartition& other) const { return labels_ == other.labels_; }
  auto operator<=>(const SetPartition& other) const { return labels_ <=> other.labels_; }

private:
  std::vector<int> labels_;
  int block_count_ = 0;
};

/// Calls visit on every non-crossing partition of {1..n} in lexicographic
/// restricted-growth order. Throws CapacityError for n outside [1, kMaxPartitionSize].
void for_each_nc(int n, const std::function<void(const SetPartition&)>& visit);

std::vector<SetPartition> enumerate_nc(int n);

/// Non-crossing partitions with every block of size at least two.
std::vector<SetPartition> enumerate_nc_min2(int n);

/// A non-crossing partition with one cell attached to each block.
struct BlockCellAssignment {
  SetPartition partition;
  std::vector<CellIndex> cell_of;  // indexed by block number
};

/// prod over blocks B of lambda_c^{|B|-2} * sigma_c, c the cell of B.
///
/// This is the sigma-integral of the kernel W^-(zeta) with all variables of each
/// block confined to its cell: an l-fold delta collapses l integrals to one.
Rational kernel_weight(const DiscreteSpace& space, const BlockCellAssignment& assignment);

/// Free moment-cumulant sum m_n = sum_{pi in NC(n)} prod_B kappa_{|B|}.
/// cumulants[0] is kappa_1; missing higher cumulants count as zero.
Rational moment_from_cumulants(std::span<const Rational> cumulants, int n);

}  // namespace freemeixner
