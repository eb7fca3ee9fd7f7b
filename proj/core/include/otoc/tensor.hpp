// Copyright 2026 The otoc-tn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTOC_TENSOR_HPP
#define OTOC_TENSOR_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace otoc {

using Complex = std::complex<double>;
using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

/// One named tensor leg. Names are unique within a tensor; dim >= 1.
struct IndexLabel {
  std::string name;
  std::int64_t dim = 1;

  friend bool operator==(const IndexLabel&, const IndexLabel&) = default;
};

/// Dense complex tensor with named indices, entries stored row-major over
/// the index sequence. Tensors are immutable values for all algorithms in
/// this library; the mutable accessors exist for construction only.
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<IndexLabel> indices);
  DenseTensor(std::vector<IndexLabel> indices, std::vector<Complex> data);

  static DenseTensor scalar(Complex value);

  std::int64_t rank() const { return static_cast<std::int64_t>(indices_.size()); }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
  const std::vector<IndexLabel>& indices() const { return indices_; }
  const IndexLabel& index(std::int64_t i) const { return indices_[static_cast<std::size_t>(i)]; }

  bool has_index(const std::string& name) const;
  std::int64_t index_position(const std::string& name) const;  // throws if absent
  std::int64_t dim(const std::string& name) const;

  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& mutable_data() { return data_; }

  Complex at(std::span<const std::int64_t> multi_index) const;
  Complex& at(std::span<const std::int64_t> multi_index);
  Complex at(std::initializer_list<std::int64_t> multi_index) const {
    return at(std::span<const std::int64_t>(multi_index.begin(), multi_index.size()));
  }

  /// Strides in elements for each index (row-major).
  std::vector<std::int64_t> strides() const;

 private:
  std::vector<IndexLabel> indices_;
  std::vector<Complex> data_;
};

/// Result of a truncated singular value decomposition. `left` carries the
/// requested left indices plus the new bond; `right` carries the bond plus
/// the remaining indices. Singular values are descending; discarded_weight
/// is the sum of squares of the dropped values.
struct SvdResult {
  DenseTensor left;
  std::vector<double> singular_values;
  DenseTensor right;
  double discarded_weight = 0.0;
};

/// Contract `a` with `b` over the given (name-in-a, name-in-b) pairs.
/// The result carries the unpaired indices of `a` (original order) followed
/// by the unpaired indices of `b`. Paired dims must match; a name may appear
/// at most once among the pairs.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<std::string, std::string>>& pairs);

/// Contract over every index name the two tensors share.
DenseTensor contract_shared(const DenseTensor& a, const DenseTensor& b);

DenseTensor permute(const DenseTensor& t, std::span<const std::string> order);
DenseTensor permute(const DenseTensor& t, std::initializer_list<std::string> order);

/// Fuse the named indices (in the given order) into one index placed at the
/// position of the group member that appears first in `t`.
DenseTensor fuse(const DenseTensor& t, std::span<const std::string> group,
                 const std::string& fused_name);
DenseTensor fuse(const DenseTensor& t, std::initializer_list<std::string> group,
                 const std::string& fused_name);

/// Split one index into consecutive parts; the product of part dims must
/// equal the original dim. Metadata-only (row-major subdivision).
DenseTensor split_index(const DenseTensor& t, const std::string& name,
                        const std::vector<IndexLabel>& parts);

DenseTensor conjugate(const DenseTensor& t);
DenseTensor rename_index(const DenseTensor& t, const std::string& from, const std::string& to);
DenseTensor scaled(const DenseTensor& t, Complex factor);
/// Element-wise sum; `b` is permuted to match `a`'s index order by name.
DenseTensor add(const DenseTensor& a, const DenseTensor& b);

double frobenius_norm(const DenseTensor& t);

/// Contract index `name` of `t` with matrix `m` (old_dim x new_dim), keeping
/// the index name and position: t'[.., j, ..] = sum_i t[.., i, ..] m(i, j).
DenseTensor apply_matrix(const DenseTensor& t, const std::string& name, const MatrixXc& m);

/// Truncated SVD with `left_names` as the row group. Kept rank is
/// min(max_rank, number of singular values > cutoff * largest, full rank),
/// with a floor of one. `cutoff` is relative to the largest singular value.
/// The gauge is fixed deterministically: the largest-magnitude entry of each
/// left singular vector is made real-positive.
SvdResult svd_truncate(const DenseTensor& t, const std::vector<std::string>& left_names,
                       std::int64_t max_rank, double cutoff,
                       const std::string& bond_name = "svd");

/// QR split with `left_names` as the row group. Q is an isometry on the new
/// bond; R's diagonal is made real-positive so the factorization is unique.
std::pair<DenseTensor, DenseTensor> qr_split(const DenseTensor& t,
                                             const std::vector<std::string>& left_names,
                                             const std::string& bond_name = "qr");

/// Deterministic multiply-accumulate counters for contraction-dominated
/// routines. Thread local; used by the bMPS cost-model regression.
namespace tensor_ops {
void reset_flop_counter();
std::uint64_t flop_count();
void add_flops(std::uint64_t n);
}  // namespace tensor_ops

}  // namespace otoc

#endif
