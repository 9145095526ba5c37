#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "diffblp/blockstruct.hpp"
#include "diffblp/errors.hpp"

namespace diffblp::ad {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

class Tape;

// Lightweight handle into a tape. Shape is fixed at creation.
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  bool valid() const { return tape != nullptr && id >= 0; }
  int rows() const;
  int cols() const;
  const Mat& value() const;
};

struct Node {
  Mat value;
  Mat adjoint;
  bool has_adjoint = false;
  bool requires_grad = false;
  // replay hook; leaves (constants, inputs) have none
  std::function<void(Tape&)> forward;
  // accumulates this node's adjoint into its parents' adjoints
  std::function<void(Tape&)> backward;
};

// Append-only record of a computation. Recording evaluates forward values
// eagerly; a reverse sweep visits nodes by descending id, which makes the
// accumulation order deterministic.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;
  Tape(Tape&&) = delete;
  Tape& operator=(Tape&&) = delete;

  Var constant(Mat v);
  Var constant_scalar(double v);
  Var input(Mat v);  // differentiable leaf

  const Mat& value(Var v) const { return node(v.id).value; }
  void set_value(Var v, const Mat& m);

  // recompute every non-leaf node in topological (= id) order
  void replay();

  void zero_adjoints();
  // seed the adjoint of `output` and run one reverse sweep
  void backward(Var output, const Mat& seed);
  Mat adjoint(Var v) const;

  // reverse-mode gradient of a scalar; one sweep, deterministic order
  std::vector<Mat> gradient(Var scalar_root, const std::vector<Var>& wrt);
  // vector-Jacobian product: seed an arbitrary adjoint on `output`
  std::vector<Mat> vjp(Var output, const Mat& seed, const std::vector<Var>& wrt);

  int size() const { return static_cast<int>(nodes_.size()); }
  Node& node(int id) { return nodes_[static_cast<size_t>(id)]; }
  const Node& node(int id) const { return nodes_[static_cast<size_t>(id)]; }

  void adj_add(int id, const Mat& contribution);

  int pinv_fallbacks = 0;  // least-squares fallbacks taken by block solves

  // internal: append a node, return handle
  Var emplace(Mat value, bool requires_grad, std::function<void(Tape&)> fwd,
              std::function<void(Tape&)> bwd);

 private:
  std::vector<Node> nodes_;
};

// ---- primitive operations -------------------------------------------------

Var matmul(Var a, Var b);
Var transpose(Var a);
Var exp(Var a);
// exp with the argument saturated at `cap`; gradient is zero past the cap
Var capped_exp(Var a, double cap);
Var log(Var a);
Var neg(Var a);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);  // Hadamard
Var div(Var a, Var b);  // element-wise
Var add_scalar(Var a, double c);
Var scale(Var a, double c);
// column-broadcast add (+^c): a (m x n) plus v (m x 1) added to every column
Var cbadd(Var a, Var v);
// column-broadcast multiply: row i of a scaled by v(i)
Var cbmul(Var a, Var v);
Var rowsum(Var a);
Var rowmean(Var a);
Var sum(Var a);            // 1x1
Var dot(Var a, Var b);     // 1x1, sum of Hadamard product
Var trace(Var a);          // 1x1
Var diag(Var v);           // (n x 1) -> (n x n)
Var element(Var a, int i, int j);          // 1x1 slice
Var broadcast_scalar(Var s, int r, int c); // 1x1 filled to (r x c)
Var smul(Var a, Var s);                    // a scaled by 1x1 var
Var vstack(Var a, Var b);
Var hstack(Var a, Var b);
// exact dense solve A^-1 B via full-pivot LU; min-norm least squares if singular
Var solve(Var a, Var b);
// iota_J * a and iota_{J/J} * a through the block kernels
Var block_sum(Var a, const BlockStructure& blocks);
Var block_mean(Var a, const BlockStructure& blocks);
// (s diag(w) s') ⊙ iota_J ; w may be invalid (unweighted)
Var masked_gram(Var s, Var w, const BlockStructure& blocks);
// Hadamard multiply by a constant mask
Var mask_mul(Var a, const Mat& mask);
// market-blockwise solve of A x = b with SVD condition check; blocks whose
// condition number exceeds `cond_threshold` fall back to min-norm least squares
Var block_solve(Var a, Var b, const BlockStructure& blocks,
                double cond_threshold = 1e12);

inline Var operator+(Var a, Var b) { return add(a, b); }
inline Var operator-(Var a, Var b) { return sub(a, b); }
inline Var operator-(Var a) { return neg(a); }
inline Var operator*(Var a, Var b) { return matmul(a, b); }

// ---- differentiable fixed point -------------------------------------------

struct FixedPointSpec {
  // records one application x -> f(theta, x) on the given tape
  std::function<Var(Tape&, Var theta, Var x)> map;
  Mat x0;
  double tol = 1e-14;       // sup-norm on successive iterates
  int max_iters = 10000;
};

struct FixedPointStats {
  int forward_iterations = 0;
  double forward_residual = 0.0;
  int adjoint_iterations = 0;
  double adjoint_residual = 0.0;   // sup-norm of w - v - A'w at exit
};

// Solves x = f(theta, x) by iteration on a private sub-tape; the reverse
// pass solves the adjoint fixed point w = v + A'w by the same iteration
// (never by dense inversion of I - A) and pushes B'w into theta.
Var fixed_point(const FixedPointSpec& spec, Var theta,
                FixedPointStats* stats = nullptr);

}  // namespace diffblp::ad
