#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minorforge {

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<int>;

inline constexpr int kInf = std::numeric_limits<int>::max();

enum class ErrorCode {
  kParity,
  kTimeout,
  kRange,
  kSize,
  kNonRegular,
  kBudget,
  kNoCenter,
  kChain,
  kFormat,
  kMismatch,
  kInvalidArgument,
  kInvariant,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Sorts and removes duplicates in place; returns the argument for chaining.
VertexSet& normalize(VertexSet& set);
VertexSet normalized(VertexSet set);

bool contains(std::span<const int> sorted_set, int v);

VertexSet set_union(std::span<const int> a, std::span<const int> b);
VertexSet set_difference(std::span<const int> a, std::span<const int> b);
VertexSet set_intersection(std::span<const int> a, std::span<const int> b);
bool disjoint(std::span<const int> a, std::span<const int> b);

/// Boolean membership mask of size n.
std::vector<char> make_mask(int n, std::span<const int> set);

/// All vertices 0..n-1.
VertexSet all_vertices(int n);

}  // namespace minorforge
