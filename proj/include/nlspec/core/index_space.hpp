#pragma once

#include <cstdlib>
#include <vector>

#include "nlspec/core/types.hpp"

namespace nlspec {

enum class IndexKind { naturals, integers };

/// Index set of an orthonormal basis: {1,2,3,...} or Z.
///
/// Z is enumerated 0, 1, -1, 2, -2, ... -> 1, 2, 3, 4, 5, ...; truncation
/// windows over Z are the symmetric sets W(n) = {-n, ..., n}, listed in
/// increasing index order.
class IndexSpace {
 public:
  static IndexSpace naturals() { return IndexSpace(IndexKind::naturals); }
  static IndexSpace integers() { return IndexSpace(IndexKind::integers); }

  IndexKind kind() const { return kind_; }

  bool contains(int index) const { return kind_ == IndexKind::integers || index >= 1; }

  int ord(int index) const {
    if (kind_ == IndexKind::naturals) {
      if (index < 1) throw Error(ErrorCode::invalid_argument, "natural index must be >= 1");
      return index;
    }
    return index > 0 ? 2 * index : 1 - 2 * index;
  }

  int from_ord(int k) const {
    if (k < 1) throw Error(ErrorCode::invalid_argument, "ord value must be >= 1");
    if (kind_ == IndexKind::naturals) return k;
    return k % 2 == 0 ? k / 2 : -(k - 1) / 2;
  }

  /// Distance from the start of the enumeration in window units: the window
  /// of size n contains exactly the indices with level <= n.
  int level(int index) const { return kind_ == IndexKind::naturals ? index : std::abs(index); }

  std::vector<int> window(int n) const {
    if (n < (kind_ == IndexKind::naturals ? 1 : 0))
      throw Error(ErrorCode::invalid_argument, "window size must be positive");
    std::vector<int> out;
    if (kind_ == IndexKind::naturals) {
      out.reserve(static_cast<std::size_t>(n));
      for (int i = 1; i <= n; ++i) out.push_back(i);
    } else {
      out.reserve(static_cast<std::size_t>(2 * n + 1));
      for (int i = -n; i <= n; ++i) out.push_back(i);
    }
    return out;
  }

  int window_size(int n) const { return kind_ == IndexKind::naturals ? n : 2 * n + 1; }

  /// Position of an index inside window(n), or -1.
  int position(int index, int n) const {
    if (level(index) > n || !contains(index)) return -1;
    return kind_ == IndexKind::naturals ? index - 1 : index + n;
  }

  bool operator==(const IndexSpace&) const = default;

 private:
  explicit IndexSpace(IndexKind kind) : kind_(kind) {}
  IndexKind kind_;
};

/// Rectangular truncation sizes: n1 rows (range side), n2 columns (domain side).
struct TruncationWindow {
  int n1 = 1;
  int n2 = 1;
};

}  // namespace nlspec
