#include "diffblp/blockstruct.hpp"

#include <cmath>
#include <set>

namespace diffblp {

MarketIndex MarketIndex::from_sizes(std::vector<int> sizes) {
  if (sizes.empty()) throw StructureError("market list is empty");
  MarketIndex idx;
  idx.sizes = std::move(sizes);
  idx.offsets.reserve(idx.sizes.size());
  int off = 0;
  for (int s : idx.sizes) {
    if (s < 1) throw StructureError("market with " + std::to_string(s) + " products");
    idx.offsets.push_back(off);
    off += s;
  }
  idx.total = off;
  return idx;
}

MarketIndex MarketIndex::from_ids(const std::vector<int>& market_ids) {
  if (market_ids.empty()) throw StructureError("market id list is empty");
  std::vector<int> sizes;
  std::set<int> seen;
  int current = market_ids.front();
  seen.insert(current);
  int count = 0;
  for (int id : market_ids) {
    if (id == current) {
      ++count;
      continue;
    }
    sizes.push_back(count);
    if (!seen.insert(id).second) {
      throw StructureError("products are not grouped by market (id " +
                           std::to_string(id) + " reappears)");
    }
    current = id;
    count = 1;
  }
  sizes.push_back(count);
  return from_sizes(std::move(sizes));
}

BlockStructure::BlockStructure(MarketIndex index, int draw_count)
    : index_(std::move(index)), R_(draw_count) {
  if (R_ < 1) throw StructureError("draw count must be >= 1");
  if (index_.sizes.empty()) throw StructureError("market list is empty");
}

BlockStructure build_block_structure(const MarketIndex& index, int draw_count) {
  return BlockStructure(index, draw_count);
}

Mat BlockStructure::sum_within(const Mat& a) const {
  if (a.rows() != index_.total)
    throw ShapeError("sum_within: expected " + std::to_string(index_.total) +
                     " rows, got " + std::to_string(a.rows()));
  Mat out(a.rows(), a.cols());
  for (int t = 0; t < index_.markets(); ++t) {
    const int o = index_.offsets[t], n = index_.sizes[t];
    out.middleRows(o, n) = a.middleRows(o, n).colwise().sum().replicate(n, 1);
  }
  return out;
}

Mat BlockStructure::mean_within(const Mat& a) const {
  if (a.rows() != index_.total)
    throw ShapeError("mean_within: expected " + std::to_string(index_.total) +
                     " rows, got " + std::to_string(a.rows()));
  Mat out(a.rows(), a.cols());
  for (int t = 0; t < index_.markets(); ++t) {
    const int o = index_.offsets[t], n = index_.sizes[t];
    out.middleRows(o, n) =
        (a.middleRows(o, n).colwise().sum() / double(n)).replicate(n, 1);
  }
  return out;
}

Mat BlockStructure::masked_gram(const Mat& s, const Vec* w) const {
  if (s.rows() != index_.total) throw ShapeError("masked_gram: row mismatch");
  if (w && w->size() != s.cols()) throw ShapeError("masked_gram: weight length");
  Mat out = Mat::Zero(s.rows(), s.rows());
  for (int t = 0; t < index_.markets(); ++t) {
    const int o = index_.offsets[t], n = index_.sizes[t];
    auto st = s.middleRows(o, n);
    if (w) {
      out.block(o, o, n, n).noalias() = st * w->asDiagonal() * st.transpose();
    } else {
      out.block(o, o, n, n).noalias() = st * st.transpose();
    }
  }
  return out;
}

Mat BlockStructure::mask(const Mat& m) const {
  if (m.rows() != index_.total || m.cols() != index_.total)
    throw ShapeError("mask: expected square J x J input");
  Mat out = Mat::Zero(m.rows(), m.cols());
  for (int t = 0; t < index_.markets(); ++t) {
    const int o = index_.offsets[t], n = index_.sizes[t];
    out.block(o, o, n, n) = m.block(o, o, n, n);
  }
  return out;
}

Mat BlockStructure::replicate_blockdiag(const Mat& s) const {
  if (s.rows() != index_.total || s.cols() != R_)
    throw ShapeError("replicate_blockdiag: expected J x R input");
  Mat out = Mat::Zero(index_.total, static_cast<Eigen::Index>(index_.markets()) * R_);
  for (int t = 0; t < index_.markets(); ++t) {
    const int o = index_.offsets[t], n = index_.sizes[t];
    out.block(o, static_cast<Eigen::Index>(t) * R_, n, R_) = s.middleRows(o, n);
  }
  return out;
}

Mat BlockStructure::dense_iota_J() const {
  Mat out = Mat::Zero(index_.total, index_.total);
  for (int t = 0; t < index_.markets(); ++t) {
    const int o = index_.offsets[t], n = index_.sizes[t];
    out.block(o, o, n, n).setOnes();
  }
  return out;
}

Mat BlockStructure::dense_iota_JoverJ() const {
  Mat out = Mat::Zero(index_.total, index_.total);
  for (int t = 0; t < index_.markets(); ++t) {
    const int o = index_.offsets[t], n = index_.sizes[t];
    out.block(o, o, n, n).setConstant(1.0 / double(n));
  }
  return out;
}

Mat BlockStructure::dense_iota_R() const {
  Mat out = Mat::Zero(index_.total, static_cast<Eigen::Index>(index_.markets()) * R_);
  for (int t = 0; t < index_.markets(); ++t) {
    const int o = index_.offsets[t], n = index_.sizes[t];
    out.block(o, static_cast<Eigen::Index>(t) * R_, n, R_).setOnes();
  }
  return out;
}

Mat BlockStructure::dense_I_R() const {
  Mat out(R_, static_cast<Eigen::Index>(index_.markets()) * R_);
  for (int t = 0; t < index_.markets(); ++t) {
    out.middleCols(static_cast<Eigen::Index>(t) * R_, R_) = Mat::Identity(R_, R_);
  }
  return out;
}

Mat boolean_mask_from_averaging(const Mat& averaging) {
  return (averaging.array() != 0.0).cast<double>();
}

Mat ownership_matrix(const std::vector<int>& firm_ids) {
  const auto n = static_cast<Eigen::Index>(firm_ids.size());
  if (n == 0) throw StructureError("empty firm id list");
  Vec firm(n), recip(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (firm_ids[i] <= 0)
      throw StructureError("firm label must be positive, got " +
                           std::to_string(firm_ids[i]));
    firm[i] = double(firm_ids[i]);
    recip[i] = 1.0 / double(firm_ids[i]);
  }
  // firm * (1/firm)' == 1, with a tolerance so that labels like 49
  // (where 49 * (1/49.0) != 1 in doubles) compare correctly
  Mat ratio = firm * recip.transpose();
  return ((ratio.array() - 1.0).abs() < 1e-9).cast<double>();
}

}  // namespace diffblp
