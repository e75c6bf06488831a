#include "freemeixner/partitions.hpp"

#include <algorithm>
#include <string>

namespace freemeixner {

SetPartition::SetPartition(std::vector<int> labels) : labels_(std::move(labels)) {
  int next = 0;
  for (int l : labels_) {
    if (l < 0 || l > next) throw StructuralError("labels are not a restricted growth string");
    if (l == next) ++next;
  }
  block_count_ = next;
}

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> owner(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw StructuralError("empty block");
    for (int e : blocks[b]) {
      if (e < 1 || e > n) throw StructuralError("block element out of range");
      if (owner[e - 1] != -1) throw StructuralError("blocks are not disjoint");
      owner[e - 1] = static_cast<int>(b);
    }
  }
  // Relabel blocks by smallest element.
  std::vector<int> relabel(blocks.size(), -1);
  std::vector<int> labels(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (owner[i] == -1) throw StructuralError("blocks do not cover {1..n}");
    if (relabel[owner[i]] == -1) relabel[owner[i]] = next++;
    labels[i] = relabel[owner[i]];
  }
  return SetPartition(std::move(labels));
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(block_count_);
  for (int i = 0; i < size(); ++i) out[labels_[i]].push_back(i + 1);
  return out;
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> sizes(block_count_, 0);
  for (int l : labels_) ++sizes[l];
  return sizes;
}

bool SetPartition::is_non_crossing() const {
  const int n = size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (labels_[b] == labels_[a]) continue;
      for (int c = b + 1; c < n; ++c) {
        if (labels_[c] != labels_[a]) continue;
        for (int d = c + 1; d < n; ++d)
          if (labels_[d] == labels_[b]) return false;
      }
    }
  return true;
}

int SetPartition::min_block_size() const {
  auto sizes = block_sizes();
  return sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
}

namespace {

// Depth-first generation. Open blocks form a stack ordered by label; placing an
// element into an open block closes every open block above it, which is exactly
// the condition for the partition to stay non-crossing.
void nc_recurse(int i, int n, std::vector<int>& labels, std::vector<int>& open, int blocks,
                const std::function<void(const SetPartition&)>& visit) {
  if (i == n) {
    visit(SetPartition(labels));
    return;
  }
  for (std::size_t s = 0; s < open.size(); ++s) {
    std::vector<int> saved(open.begin() + static_cast<long>(s) + 1, open.end());
    labels[i] = open[s];
    open.resize(s + 1);
    nc_recurse(i + 1, n, labels, open, blocks, visit);
    open.insert(open.end(), saved.begin(), saved.end());
  }
  labels[i] = blocks;
  open.push_back(blocks);
  nc_recurse(i + 1, n, labels, open, blocks + 1, visit);
  open.pop_back();
}

}  // namespace

void for_each_nc(int n, const std::function<void(const SetPartition&)>& visit) {
  if (n < 1 || n > kMaxPartitionSize)
    throw CapacityError("non-crossing enumeration supports 1 <= n <= " +
                        std::to_string(kMaxPartitionSize) + ", got " + std::to_string(n));
  std::vector<int> labels(n, 0);
  std::vector<int> open;
  nc_recurse(0, n, labels, open, 0, visit);
}

std::vector<SetPartition> enumerate_nc(int n) {
  std::vector<SetPartition> out;
  for_each_nc(n, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

std::vector<SetPartition> enumerate_nc_min2(int n) {
  if (n < 2) throw PreconditionError("NC_{>=2}(n) requires n >= 2");
  std::vector<SetPartition> out;
  for_each_nc(n, [&](const SetPartition& p) {
    if (p.min_block_size() >= 2) out.push_back(p);
  });
  return out;
}

Rational kernel_weight(const DiscreteSpace& space, const BlockCellAssignment& a) {
  const auto sizes = a.partition.block_sizes();
  if (a.cell_of.size() != sizes.size())
    throw StructuralError("assignment needs exactly one cell per block");
  Rational w = 1;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (sizes[b] < 2) throw PreconditionError("kernel weight is defined only for blocks of size >= 2");
    const CellIndex c = a.cell_of[b];
    w *= pow(space.lambda(c), static_cast<unsigned>(sizes[b] - 2)) * space.sigma(c);
  }
  return w;
}

Rational moment_from_cumulants(std::span<const Rational> cumulants, int n) {
  if (n < 1) throw PreconditionError("moment order must be >= 1");
  auto kappa = [&](int size) -> Rational {
    return static_cast<std::size_t>(size) <= cumulants.size() ? cumulants[size - 1] : Rational(0);
  };
  Rational m = 0;
  for_each_nc(n, [&](const SetPartition& p) {
    Rational term = 1;
    for (int s : p.block_sizes()) {
      term *= kappa(s);
      if (term == 0) return;
    }
    m += term;
  });
  return m;
}

}  // namespace freemeixner
