#pragma once

#include <cstdint>
#include <vector>

namespace proxitop {

// Dense boolean matrix with word-packed rows, just large enough for the
// boundary-matrix ranks computed here.
class Gf2Matrix {
public:
  Gf2Matrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  void set(int r, int c);
  bool get(int r, int c) const;

  // Rank over GF(2) by Gaussian elimination (works on a copy).
  int rank() const;

private:
  int rows_, cols_, words_;
  std::vector<std::uint64_t> bits_;  // row-major
};

}  // namespace proxitop
