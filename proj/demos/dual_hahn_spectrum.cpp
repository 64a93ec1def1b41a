// The finite family h4 has eigenvalues binom(2N+1+gamma+delta, x), x = 0..N.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "hankel/identities.hpp"
#include "hankel/spectral.hpp"

int main() {
  using namespace hankel;
  const int N = 8;
  const double gamma = 0.3, delta = 1.7;
  const FamilySpec spec = h4(N, gamma, delta);
  const auto ev = truncation_eigenvalues(spec, N + 1);
  std::vector<double> expect;
  for (int x = 0; x <= N; ++x) {
    expect.push_back(binomial_general(2.0 * N + 1.0 + gamma + delta, static_cast<std::size_t>(x)));
  }
  std::sort(expect.begin(), expect.end());
  std::printf("%s\n%4s  %22s  %22s  %10s\n", describe(spec).c_str(), "x", "computed", "binomial", "rel err");
  for (std::size_t i = 0; i < ev.size(); ++i) {
    std::printf("%4zu  %22.15g  %22.15g  %10.2e\n", i, ev[i], expect[i], std::fabs(ev[i] - expect[i]) / expect[i]);
  }
  const IdentityReport det = determinant_identity(N, gamma, delta);
  std::printf("\ndet G: %.15g vs product formula %.15g (x 10^%d), rel err %.2e\n", det.lhs, det.rhs, det.exponent10,
              det.rel_err);
}
