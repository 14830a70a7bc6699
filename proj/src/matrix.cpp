#include "rbma/matrix.hpp"

#include "rbma/error.hpp"

namespace rbma {

void require_binary(const BinaryMatrix& m) {
  for (auto x : m.flat()) {
    if (x > 1) throw Error(ErrorCode::kInvalidArgument, "binary matrix entry is not 0/1");
  }
}

}  // namespace rbma
