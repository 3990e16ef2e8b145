#pragma once

#include <array>
#include <vector>

namespace slinky::golden {

/// Upper-triangle entry of a listed Bloch matrix: |amplitude|^2 and the power
/// p of exp(i p k) it carries (0 or -1).
struct Entry {
  int row;
  int col;
  int squared;
  int phase;
};

struct Listing {
  int n;
  int mu;
  std::vector<Entry> upper;
};

inline const std::vector<Listing>& listings() {
  static const std::vector<Listing> all = {
      {3, 1, {{0, 1, 3, 0}, {0, 2, 3, -1}, {1, 2, 4, 0}}},
      {3, 2, {{0, 1, 4, 0}, {0, 2, 3, -1}, {1, 2, 3, 0}}},
      {3, 3, {{0, 1, 3, 0}, {0, 2, 4, -1}, {1, 2, 3, 0}}},

      {4, 1, {{0, 1, 4, 0}, {0, 3, 4, -1}, {1, 2, 6, 0}, {2, 3, 6, 0}}},
      {4, 2, {{0, 1, 6, 0}, {0, 3, 4, -1}, {1, 2, 6, 0}, {2, 3, 4, 0}}},
      {4, 3, {{0, 1, 6, 0}, {0, 3, 6, -1}, {1, 2, 4, 0}, {2, 3, 4, 0}}},
      {4, 4, {{0, 1, 4, 0}, {0, 3, 6, -1}, {1, 2, 4, 0}, {2, 3, 6, 0}}},

      {5, 1, {{0, 1, 5, 0}, {0, 4, 5, -1}, {1, 2, 8, 0}, {2, 3, 9, 0}, {3, 4, 8, 0}}},
      {5, 2, {{0, 1, 8, 0}, {0, 4, 5, -1}, {1, 2, 9, 0}, {2, 3, 8, 0}, {3, 4, 5, 0}}},
      {5, 3, {{0, 1, 9, 0}, {0, 4, 8, -1}, {1, 2, 8, 0}, {2, 3, 5, 0}, {3, 4, 5, 0}}},
      {5, 4, {{0, 1, 8, 0}, {0, 4, 9, -1}, {1, 2, 5, 0}, {2, 3, 5, 0}, {3, 4, 8, 0}}},
      {5, 5, {{0, 1, 5, 0}, {0, 4, 8, -1}, {1, 2, 5, 0}, {2, 3, 8, 0}, {3, 4, 9, 0}}},
  };
  return all;
}

}  // namespace slinky::golden
