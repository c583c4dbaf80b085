#include "minorforge/common.hpp"

#include <algorithm>
#include <numeric>

namespace minorforge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParity: return "parity";
    case ErrorCode::kTimeout: return "timeout";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kSize: return "size";
    case ErrorCode::kNonRegular: return "non-regular";
    case ErrorCode::kBudget: return "budget";
    case ErrorCode::kNoCenter: return "no-center";
    case ErrorCode::kChain: return "chain";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kMismatch: return "mismatch";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvariant: return "invariant";
  }
  return "unknown";
}

VertexSet& normalize(VertexSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

VertexSet normalized(VertexSet set) {
  normalize(set);
  return set;
}

bool contains(std::span<const int> sorted_set, int v) {
  return std::binary_search(sorted_set.begin(), sorted_set.end(), v);
}

VertexSet set_union(std::span<const int> a, std::span<const int> b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(std::span<const int> a, std::span<const int> b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(std::span<const int> a, std::span<const int> b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(std::span<const int> a, std::span<const int> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

std::vector<char> make_mask(int n, std::span<const int> set) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (int v : set) {
    if (v < 0 || v >= n) {
      throw Error(ErrorCode::kRange, "vertex id " + std::to_string(v) + " out of range");
    }
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

VertexSet all_vertices(int n) {
  VertexSet out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace minorforge
