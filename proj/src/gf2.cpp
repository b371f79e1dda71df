#include "proxitop/gf2.hpp"

#include <stdexcept>

namespace proxitop {

Gf2Matrix::Gf2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      bits_(static_cast<std::size_t>(rows) * words_, 0) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

void Gf2Matrix::set(int r, int c) {
  bits_[static_cast<std::size_t>(r) * words_ + c / 64] |= (std::uint64_t{1} << (c % 64));
}

bool Gf2Matrix::get(int r, int c) const {
  return (bits_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1;
}

int Gf2Matrix::rank() const {
  std::vector<std::uint64_t> work = bits_;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    const int w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    int pivot = -1;
    for (int r = rank; r < rows_; ++r) {
      if (work[static_cast<std::size_t>(r) * words_ + w] & mask) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    for (int k = 0; k < words_; ++k)
      std::swap(work[static_cast<std::size_t>(rank) * words_ + k],
                work[static_cast<std::size_t>(pivot) * words_ + k]);
    for (int r = 0; r < rows_; ++r) {
      if (r == rank) continue;
      if (work[static_cast<std::size_t>(r) * words_ + w] & mask) {
        for (int k = 0; k < words_; ++k)
          work[static_cast<std::size_t>(r) * words_ + k] ^=
              work[static_cast<std::size_t>(rank) * words_ + k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace proxitop
