// Smallest eigenvalue sigma = 1/Omega for a few intercepts, then the same
// operator seen from the half-line frame.
#include <cstdio>

#include "gribov/gribov.hpp"

int main() {
  using namespace gribov;
  for (const double mu : {0.5, 1.0, 2.0, 4.0}) {
    const auto p = derive_params(1.0, mu, 1.0);
    const auto r = smallest_eigenvalue(p, frame_rule(p, KernelFrame::NativeWeighted, 200));
    std::printf("mu=%-4g omega=%.12f sigma=%.12f gap=%.4f iterations=%d\n", mu, r.omega, r.sigma,
                r.gap, r.iterations);
  }
  const auto p = derive_params(1.0, 1.0, 1.0);
  const auto native = assemble(p, KernelFrame::NativeWeighted,
                               frame_rule(p, KernelFrame::NativeWeighted, 200));
  const auto limit = assemble(p, KernelFrame::LimitWeighted,
                              frame_rule(p, KernelFrame::LimitWeighted, 200));
  std::printf("native %.15f  limit %.15f\n", power_iteration(native).omega,
              power_iteration(limit).omega);
  std::printf("hs norm (native) %.12f\n",
              hs_norm(p, KernelFrame::NativeWeighted, frame_rule(p, KernelFrame::NativeWeighted, 200)));
}
