// With signs stripped, the even block of h2 at lambda = 1/2 is the Hilbert-type
// matrix 1/(m+n+1/2). Its largest eigenvalue creeps up to pi very slowly.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hankel/spectral.hpp"

int main() {
  using namespace hankel;
  const FamilySpec spec = h2(0.5, Block::even);
  const auto M = materialize(spec, 4, MaterializeOptions{true});
  double dev = 0.0;
  std::printf("leading 4x4 block:\n");
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 4; ++n) {
      std::printf("  %9.6f", M(m, n));
      dev = std::max(dev, std::fabs(M(m, n) - 1.0 / (static_cast<double>(m + n) + 0.5)));
    }
    std::printf("\n");
  }
  std::printf("max deviation from 1/(m+n+1/2): %.2e\n", dev);
  std::printf("\n%8s  %18s  %14s\n", "size", "largest eigenvalue", "pi - value");
  for (std::size_t size : {16u, 64u, 256u, 1024u}) {
    const double top = truncation_eigenvalues(spec, size, true).back();
    std::printf("%8zu  %18.12f  %14.6e\n", size, top, std::numbers::pi - top);
  }
  std::printf("multiplier supremum: %.12f\n", spectral_rep(h2(0.5)).h_sup);
}
