#pragma once

#include <Eigen/Dense>
#include <vector>

#include "diffblp/errors.hpp"

namespace diffblp {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Market layout: products are stored contiguously, ordered by market.
struct MarketIndex {
  std::vector<int> sizes;    // J_t, one entry per market
  std::vector<int> offsets;  // start row of each market block
  int total = 0;             // J = sum of sizes

  int markets() const { return static_cast<int>(sizes.size()); }

  static MarketIndex from_sizes(std::vector<int> sizes);
  // ids must be grouped (all rows of a market contiguous); the loader
  // enforces sortedness, this only rejects violations.
  static MarketIndex from_ids(const std::vector<int>& market_ids);
};

// The four block masks (iota_J, iota_{J/J}, iota_R, I_R) that replace
// per-market loops. Stored structurally; each product with a mask is
// provided as a structure-aware kernel that is numerically equivalent to
// the dense multiplication, plus dense materializations for verification.
class BlockStructure {
 public:
  BlockStructure(MarketIndex index, int draw_count);

  const MarketIndex& index() const { return index_; }
  int rows() const { return index_.total; }
  int draw_count() const { return R_; }

  // iota_J * a : within-market column sums, broadcast back to each row
  Mat sum_within(const Mat& a) const;
  // iota_{J/J} * a : within-market column means
  Mat mean_within(const Mat& a) const;
  // (s * diag(w) * s') ⊙ iota_J ; pass w = nullptr for unweighted s s'
  Mat masked_gram(const Mat& s, const Vec* w = nullptr) const;
  // M ⊙ iota_J
  Mat mask(const Mat& m) const;
  // s_D = (s I_R) ⊙ iota_R : block-diagonal replication of s (J x T*R)
  Mat replicate_blockdiag(const Mat& s) const;

  // dense views, built on demand (tests, cross-checks, export)
  Mat dense_iota_J() const;
  Mat dense_iota_JoverJ() const;
  Mat dense_iota_R() const;  // J x (T*R)
  Mat dense_I_R() const;     // R x (T*R)

 private:
  MarketIndex index_;
  int R_;
};

BlockStructure build_block_structure(const MarketIndex& index, int draw_count);

// boolean check for non-zero elements (1/0 encoding)
Mat boolean_mask_from_averaging(const Mat& averaging);

// H[i,j] = 1 iff firm_ids[i] == firm_ids[j], via the reciprocal-product
// boolean check. Labels must be positive.
Mat ownership_matrix(const std::vector<int>& firm_ids);

}  // namespace diffblp
