#include "gaudin/partition.hpp"

#include <numeric>
#include <stdexcept>

#include "gaudin/indices.hpp"

namespace gaudin {

Partition::Partition(std::vector<long> p) : parts(std::move(p)) {
  for (size_t i = 0; i + 1 < parts.size(); ++i)
    if (parts[i] < parts[i + 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  for (long v : parts)
    if (v < 0) throw std::invalid_argument("partition parts must be nonnegative");
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
}

long Partition::size() const {
  return std::accumulate(parts.begin(), parts.end(), 0L);
}

std::string Partition::str() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

Partition conjugate(const Partition& p) {
  std::vector<long> out;
  long cols = p.part(0);
  out.reserve(cols);
  for (long j = 1; j <= cols; ++j) {
    long cnt = 0;
    for (long v : p.parts)
      if (v >= j) ++cnt;
    out.push_back(cnt);
  }
  return Partition(out);
}

bool is_hook(const Partition& p, int m, int n) {
  if (m < 0) throw std::invalid_argument("is_hook: m must be nonnegative");
  if (n == N_INF) return true;
  return p.part(m) <= n;
}

static void enum_parts(long remaining, long max_part, std::vector<long>& cur,
                       std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (long v = std::min(remaining, max_part); v >= 1; --v) {
    cur.push_back(v);
    enum_parts(remaining - v, v, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of(long k) {
  std::vector<Partition> out;
  std::vector<long> cur;
  enum_parts(k, k, cur, out);
  return out;
}

std::vector<Partition> partitions_up_to(long max_size) {
  std::vector<Partition> out;
  for (long k = 0; k <= max_size; ++k) {
    auto pk = partitions_of(k);
    out.insert(out.end(), pk.begin(), pk.end());
  }
  return out;
}

std::vector<Half> positive_indices(Fam f, int m, int n) {
  std::vector<Half> out;
  switch (f) {
    case Fam::unbar:
      for (int i = 0; i < m; ++i) out.push_back(2 * i + 1);  // 1/2 .. m-1/2
      for (int i = 1; i <= n; ++i) out.push_back(2 * i);     // 1 .. n
      break;
    case Fam::bar:
      for (int i = 1; i <= m; ++i) out.push_back(2 * i);     // 1 .. m
      for (int i = 0; i < n; ++i) out.push_back(2 * i + 1);  // 1/2 .. n-1/2
      break;
    case Fam::tilde:
      for (int h = 1; h <= 2 * n; ++h) out.push_back(h);  // 1/2, 1, ..., n
      break;
  }
  return out;
}

std::vector<Half> signed_window(Fam f, int m, int n) {
  std::vector<Half> pos = positive_indices(f, m, n);
  std::vector<Half> out;
  // Negatives come first in every family order; -pos reversed is ascending.
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

}  // namespace gaudin
