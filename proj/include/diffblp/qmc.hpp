#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "diffblp/errors.hpp"

namespace diffblp {

struct DrawMatrix {
  enum class Kind { Uniform, Gaussian };
  Eigen::MatrixXd nu;  // R x K2
  Kind kind = Kind::Uniform;

  int draws() const { return static_cast<int>(nu.rows()); }
  int dims() const { return static_cast<int>(nu.cols()); }
};

// Unique real root > 1 of x^(d+1) = x + 1 (d=1: golden ratio, d=2: plastic
// number), solved to 1e-15.
double generalized_golden_ratio(int d);

// Additive-recurrence low-discrepancy sequence: point i, coordinate k is
// frac(seed_offset + (i+1) * phi_d^-(k+1)).
Eigen::MatrixXd rd_sequence(int d, int n, double seed_offset = 0.5);

// rd_sequence pushed through the inverse standard-normal CDF; one shared
// draw matrix for all markets (overlapping draws).
DrawMatrix gaussian_draws(int d, int n, double seed_offset = 0.5);

double inverse_normal_cdf(double p);

void write_draws_csv(std::ostream& os, const DrawMatrix& draws);

}  // namespace diffblp
