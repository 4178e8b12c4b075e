#ifndef GAUDIN_PARTITION_HPP
#define GAUDIN_PARTITION_HPP

#include <string>
#include <vector>

namespace gaudin {

// Weakly decreasing positive parts; trailing zeros are stripped on
// construction and non-monotone input is rejected (not sorted).
struct Partition {
  std::vector<long> parts;

  Partition() = default;
  explicit Partition(std::vector<long> p);

  long part(size_t i) const { return i < parts.size() ? parts[i] : 0; }
  size_t length() const { return parts.size(); }
  long size() const;  // |p|, number of boxes
  bool empty() const { return parts.empty(); }

  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  bool operator<(const Partition& o) const { return parts < o.parts; }

  std::string str() const;  // "(3,1,1)" or "()" for the empty partition
};

Partition conjugate(const Partition& p);

// Marker for n = infinity in hook tests and weight maps.
constexpr int N_INF = -1;

// (m|n)-hook condition: p_{m+1} <= n (vacuously true for n = N_INF).
bool is_hook(const Partition& p, int m, int n);

// All partitions of exactly k boxes, lexicographically decreasing.
std::vector<Partition> partitions_of(long k);

// All partitions with at most `max_size` boxes (including the empty one).
std::vector<Partition> partitions_up_to(long max_size);

}  // namespace gaudin

#endif
