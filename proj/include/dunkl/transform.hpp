#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "dunkl/grid.hpp"

namespace dunkl {

// Thrown when data has not decayed at the edge of its axis, so the
// truncated integral cannot represent the transform faithfully.
struct TruncationError : std::runtime_error {
  double boundary_ratio;
  TruncationError(const std::string& what, double ratio)
      : std::runtime_error(what), boundary_ratio(ratio) {}
};

// Forward transform int f(x) K(-i xi, x) dmu(x) sampled on the spectral
// axis, and its inverse with kernel K(i x, xi).  Parity is preserved
// exactly: values are split into even/odd halves and hit with two real
// half-axis kernel matrices.
//
// The plan caches the matrices (memory ~ 16 * half * half bytes) and should
// be reused whenever many transforms share the same pair of axes; the
// streaming free functions below recompute kernel rows on the fly and use
// O(n) memory.
class TransformPlan {
 public:
  TransformPlan(double k, std::shared_ptr<const Axis> physical,
                std::shared_ptr<const Axis> spectral, int threads = 0);

  const std::shared_ptr<const Axis>& physical() const { return physical_; }
  const std::shared_ptr<const Axis>& spectral() const { return spectral_; }
  size_t memory_bytes() const { return 16 * even_.size(); }

  GridFunction forward(const GridFunction& f) const;
  GridFunction inverse(const GridFunction& g) const;

 private:
  double k_;
  int threads_;
  std::shared_ptr<const Axis> physical_;
  std::shared_ptr<const Axis> spectral_;
  // row s, column p: kernel factors at (xi_s, x_p)
  std::vector<double> even_, odd_;
};

// Largest |value| on the outer 5% of nodes relative to the overall largest;
// small iff the function has decayed by the boundary.
double boundary_ratio(const GridFunction& f);

// One-shot streaming transforms.  boundary_tol bounds boundary_ratio of the
// input; exceeding it throws TruncationError.
GridFunction dunkl_transform(const GridFunction& f,
                             std::shared_ptr<const Axis> spectral,
                             int threads = 0, double boundary_tol = 1e-10);
GridFunction dunkl_inverse_transform(const GridFunction& g,
                                     std::shared_ptr<const Axis> physical,
                                     int threads = 0,
                                     double boundary_tol = 1e-10);

}  // namespace dunkl
