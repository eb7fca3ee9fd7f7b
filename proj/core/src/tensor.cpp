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

#include "otoc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace otoc {

namespace tensor_ops {
namespace {
thread_local std::uint64_t g_flops = 0;
}
void reset_flop_counter() { g_flops = 0; }
std::uint64_t flop_count() { return g_flops; }
void add_flops(std::uint64_t n) { g_flops += n; }
}  // namespace tensor_ops

namespace {

std::int64_t product_of_dims(const std::vector<IndexLabel>& indices) {
  std::int64_t p = 1;
  for (const auto& ix : indices) p *= ix.dim;
  return p;
}

void validate_indices(const std::vector<IndexLabel>& indices) {
  std::unordered_set<std::string> seen;
  for (const auto& ix : indices) {
    if (ix.dim < 1) throw std::invalid_argument("tensor index '" + ix.name + "' has dim < 1");
    if (!seen.insert(ix.name).second)
      throw std::invalid_argument("duplicate tensor index name '" + ix.name + "'");
  }
}

using Eigen::Map;

}  // namespace

DenseTensor::DenseTensor(std::vector<IndexLabel> indices) : indices_(std::move(indices)) {
  validate_indices(indices_);
  data_.assign(static_cast<std::size_t>(product_of_dims(indices_)), Complex(0.0, 0.0));
}

DenseTensor::DenseTensor(std::vector<IndexLabel> indices, std::vector<Complex> data)
    : indices_(std::move(indices)), data_(std::move(data)) {
  validate_indices(indices_);
  if (static_cast<std::int64_t>(data_.size()) != product_of_dims(indices_))
    throw std::invalid_argument("tensor data length does not match index dims");
}

DenseTensor DenseTensor::scalar(Complex value) {
  return DenseTensor({}, std::vector<Complex>{value});
}

bool DenseTensor::has_index(const std::string& name) const {
  for (const auto& ix : indices_)
    if (ix.name == name) return true;
  return false;
}

std::int64_t DenseTensor::index_position(const std::string& name) const {
  for (std::size_t i = 0; i < indices_.size(); ++i)
    if (indices_[i].name == name) return static_cast<std::int64_t>(i);
  throw std::invalid_argument("tensor has no index named '" + name + "'");
}

std::int64_t DenseTensor::dim(const std::string& name) const {
  return indices_[static_cast<std::size_t>(index_position(name))].dim;
}

std::vector<std::int64_t> DenseTensor::strides() const {
  std::vector<std::int64_t> s(indices_.size(), 1);
  for (std::int64_t i = rank() - 2; i >= 0; --i)
    s[static_cast<std::size_t>(i)] =
        s[static_cast<std::size_t>(i + 1)] * indices_[static_cast<std::size_t>(i + 1)].dim;
  return s;
}

Complex DenseTensor::at(std::span<const std::int64_t> multi_index) const {
  return const_cast<DenseTensor*>(this)->at(multi_index);
}

Complex& DenseTensor::at(std::span<const std::int64_t> multi_index) {
  if (static_cast<std::int64_t>(multi_index.size()) != rank())
    throw std::invalid_argument("multi-index rank mismatch");
  auto s = strides();
  std::int64_t off = 0;
  for (std::size_t i = 0; i < multi_index.size(); ++i) {
    if (multi_index[i] < 0 || multi_index[i] >= indices_[i].dim)
      throw std::out_of_range("multi-index out of range");
    off += multi_index[i] * s[i];
  }
  return data_[static_cast<std::size_t>(off)];
}

namespace {

// Gathers t's data into the axis order given by `perm` (perm[k] = source axis
// of destination axis k). Plain odometer walk over the destination.
std::vector<Complex> permute_data(const DenseTensor& t, const std::vector<std::int64_t>& perm) {
  const auto src_strides = t.strides();
  const std::int64_t r = t.rank();
  std::vector<std::int64_t> dims(static_cast<std::size_t>(r));
  std::vector<std::int64_t> stride_for_dst(static_cast<std::size_t>(r));
  for (std::int64_t k = 0; k < r; ++k) {
    dims[static_cast<std::size_t>(k)] = t.index(perm[static_cast<std::size_t>(k)]).dim;
    stride_for_dst[static_cast<std::size_t>(k)] = src_strides[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
  }
  std::vector<Complex> out(static_cast<std::size_t>(t.size()));
  if (t.size() == 0) return out;
  std::vector<std::int64_t> counter(static_cast<std::size_t>(r), 0);
  std::int64_t src = 0;
  for (std::int64_t dst = 0; dst < t.size(); ++dst) {
    out[static_cast<std::size_t>(dst)] = t.data()[static_cast<std::size_t>(src)];
    for (std::int64_t k = r - 1; k >= 0; --k) {
      auto ku = static_cast<std::size_t>(k);
      if (++counter[ku] < dims[ku]) {
        src += stride_for_dst[ku];
        break;
      }
      counter[ku] = 0;
      src -= stride_for_dst[ku] * (dims[ku] - 1);
    }
  }
  return out;
}

bool is_identity_perm(const std::vector<std::int64_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<std::int64_t>(i)) return false;
  return true;
}

DenseTensor permute_by_positions(const DenseTensor& t, const std::vector<std::int64_t>& perm) {
  std::vector<IndexLabel> new_indices;
  new_indices.reserve(perm.size());
  for (auto p : perm) new_indices.push_back(t.index(p));
  if (is_identity_perm(perm)) return DenseTensor(new_indices, t.data());
  return DenseTensor(std::move(new_indices), permute_data(t, perm));
}

}  // namespace

DenseTensor permute(const DenseTensor& t, std::span<const std::string> order) {
  if (static_cast<std::int64_t>(order.size()) != t.rank())
    throw std::invalid_argument("permute: order must name every index exactly once");
  std::vector<std::int64_t> perm;
  perm.reserve(order.size());
  std::unordered_set<std::string> seen;
  for (const auto& name : order) {
    if (!seen.insert(name).second) throw std::invalid_argument("permute: repeated name " + name);
    perm.push_back(t.index_position(name));
  }
  return permute_by_positions(t, perm);
}

DenseTensor permute(const DenseTensor& t, std::initializer_list<std::string> order) {
  std::vector<std::string> v(order);
  return permute(t, std::span<const std::string>(v));
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::unordered_set<std::string> used_a, used_b;
  std::int64_t k_dim = 1;
  for (const auto& [na, nb] : pairs) {
    if (!used_a.insert(na).second)
      throw std::invalid_argument("contract: index of a repeated in pairs: " + na);
    if (!used_b.insert(nb).second)
      throw std::invalid_argument("contract: index of b repeated in pairs: " + nb);
    const std::int64_t da = a.dim(na), db = b.dim(nb);
    if (da != db)
      throw std::invalid_argument("contract: dimension mismatch on (" + na + "," + nb + ")");
    k_dim *= da;
  }

  // a -> (free_a..., contracted in pair order), b -> (contracted..., free_b...)
  std::vector<std::int64_t> perm_a, perm_b;
  std::vector<IndexLabel> out_indices;
  for (std::int64_t i = 0; i < a.rank(); ++i)
    if (!used_a.count(a.index(i).name)) {
      perm_a.push_back(i);
      out_indices.push_back(a.index(i));
    }
  for (const auto& pr : pairs) perm_a.push_back(a.index_position(pr.first));
  for (const auto& pr : pairs) perm_b.push_back(b.index_position(pr.second));
  for (std::int64_t i = 0; i < b.rank(); ++i)
    if (!used_b.count(b.index(i).name)) {
      perm_b.push_back(i);
      out_indices.push_back(b.index(i));
    }
  validate_indices(out_indices);

  DenseTensor pa = permute_by_positions(a, perm_a);
  DenseTensor pb = permute_by_positions(b, perm_b);
  const std::int64_t m = a.size() / std::max<std::int64_t>(k_dim, 1);
  const std::int64_t n = b.size() / std::max<std::int64_t>(k_dim, 1);

  std::vector<Complex> out(static_cast<std::size_t>(m * n));
  Map<const MatrixXc> ma(pa.data().data(), k_dim, m);  // column-major view of row-major (m x k)
  Map<const MatrixXc> mb(pb.data().data(), n, k_dim);  // column-major view of row-major (k x n)
  Map<MatrixXc> mo(out.data(), n, m);
  mo.noalias() = mb * ma;
  tensor_ops::add_flops(static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n) *
                        static_cast<std::uint64_t>(k_dim));
  return DenseTensor(std::move(out_indices), std::move(out));
}

DenseTensor contract_shared(const DenseTensor& a, const DenseTensor& b) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& ix : a.indices())
    if (b.has_index(ix.name)) pairs.emplace_back(ix.name, ix.name);
  return contract(a, b, pairs);
}

DenseTensor fuse(const DenseTensor& t, std::span<const std::string> group,
                 const std::string& fused_name) {
  if (group.empty()) throw std::invalid_argument("fuse: empty group");
  std::unordered_set<std::string> g(group.begin(), group.end());
  if (g.size() != group.size()) throw std::invalid_argument("fuse: repeated name in group");

  // New axis order: walk t's indices; at the first group member, emit the
  // whole group in the given order.
  std::vector<std::int64_t> perm;
  std::int64_t fused_dim = 1;
  bool emitted = false;
  std::int64_t fused_pos = -1;
  for (std::int64_t i = 0; i < t.rank(); ++i) {
    const auto& name = t.index(i).name;
    if (g.count(name)) {
      if (!emitted) {
        fused_pos = static_cast<std::int64_t>(perm.size());
        for (const auto& gn : group) {
          perm.push_back(t.index_position(gn));
          fused_dim *= t.dim(gn);
        }
        emitted = true;
      }
    } else {
      perm.push_back(i);
    }
  }
  if (!emitted || perm.size() != static_cast<std::size_t>(t.rank()))
    throw std::invalid_argument("fuse: group names must all be indices of the tensor");

  DenseTensor p = permute_by_positions(t, perm);
  std::vector<IndexLabel> new_indices;
  for (std::int64_t i = 0; i < p.rank();) {
    if (i == fused_pos) {
      new_indices.push_back({fused_name, fused_dim});
      i += static_cast<std::int64_t>(group.size());
    } else {
      new_indices.push_back(p.index(i));
      ++i;
    }
  }
  return DenseTensor(std::move(new_indices), p.data());
}

DenseTensor fuse(const DenseTensor& t, std::initializer_list<std::string> group,
                 const std::string& fused_name) {
  std::vector<std::string> v(group);
  return fuse(t, std::span<const std::string>(v), fused_name);
}

DenseTensor split_index(const DenseTensor& t, const std::string& name,
                        const std::vector<IndexLabel>& parts) {
  const std::int64_t pos = t.index_position(name);
  std::int64_t prod = 1;
  for (const auto& p : parts) prod *= p.dim;
  if (prod != t.dim(name))
    throw std::invalid_argument("split_index: part dims do not multiply to original dim");
  std::vector<IndexLabel> new_indices;
  for (std::int64_t i = 0; i < t.rank(); ++i) {
    if (i == pos)
      for (const auto& p : parts) new_indices.push_back(p);
    else
      new_indices.push_back(t.index(i));
  }
  return DenseTensor(std::move(new_indices), t.data());
}

DenseTensor conjugate(const DenseTensor& t) {
  std::vector<Complex> d(t.data().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::conj(t.data()[i]);
  return DenseTensor(t.indices(), std::move(d));
}

DenseTensor rename_index(const DenseTensor& t, const std::string& from, const std::string& to) {
  auto indices = t.indices();
  indices[static_cast<std::size_t>(t.index_position(from))].name = to;
  return DenseTensor(std::move(indices), t.data());
}

DenseTensor scaled(const DenseTensor& t, Complex factor) {
  std::vector<Complex> d(t.data().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = t.data()[i] * factor;
  return DenseTensor(t.indices(), std::move(d));
}

DenseTensor add(const DenseTensor& a, const DenseTensor& b) {
  std::vector<std::string> order;
  for (const auto& ix : a.indices()) order.push_back(ix.name);
  DenseTensor pb = permute(b, std::span<const std::string>(order));
  if (pb.indices() != a.indices())
    throw std::invalid_argument("add: tensors have different index sets or dims");
  std::vector<Complex> d(a.data());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += pb.data()[i];
  return DenseTensor(a.indices(), std::move(d));
}

double frobenius_norm(const DenseTensor& t) {
  double s = 0.0;
  for (const auto& v : t.data()) s += std::norm(v);
  return std::sqrt(s);
}

DenseTensor apply_matrix(const DenseTensor& t, const std::string& name, const MatrixXc& m) {
  if (t.dim(name) != m.rows())
    throw std::invalid_argument("apply_matrix: matrix rows must match index dim");
  DenseTensor mt({{"__row", m.rows()}, {"__col", m.cols()}},
                 std::vector<Complex>(static_cast<std::size_t>(m.rows() * m.cols())));
  for (std::int64_t r = 0; r < m.rows(); ++r)
    for (std::int64_t c = 0; c < m.cols(); ++c)
      mt.mutable_data()[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
  DenseTensor res = contract(t, mt, {{name, "__row"}});
  res = rename_index(res, "__col", name);
  // Restore the original index order.
  std::vector<std::string> order;
  for (const auto& ix : t.indices()) order.push_back(ix.name);
  return permute(res, std::span<const std::string>(order));
}

namespace {

struct MatrixView {
  DenseTensor permuted;
  std::vector<IndexLabel> left, right;
  std::int64_t rows = 1, cols = 1;
};

MatrixView as_matrix(const DenseTensor& t, const std::vector<std::string>& left_names) {
  if (left_names.empty()) throw std::invalid_argument("matrix split: empty left set");
  std::unordered_set<std::string> lset(left_names.begin(), left_names.end());
  if (lset.size() != left_names.size())
    throw std::invalid_argument("matrix split: repeated left name");
  MatrixView mv;
  std::vector<std::int64_t> perm;
  for (const auto& name : left_names) {
    perm.push_back(t.index_position(name));
    mv.left.push_back(t.index(perm.back()));
    mv.rows *= mv.left.back().dim;
  }
  for (std::int64_t i = 0; i < t.rank(); ++i) {
    if (!lset.count(t.index(i).name)) {
      perm.push_back(i);
      mv.right.push_back(t.index(i));
      mv.cols *= t.index(i).dim;
    }
  }
  if (mv.right.empty()) throw std::invalid_argument("matrix split: left set covers all indices");
  mv.permuted = permute_by_positions(t, perm);
  return mv;
}

}  // namespace

SvdResult svd_truncate(const DenseTensor& t, const std::vector<std::string>& left_names,
                       std::int64_t max_rank, double cutoff, const std::string& bond_name) {
  if (max_rank < 1) throw std::invalid_argument("svd_truncate: max_rank must be >= 1");
  if (cutoff < 0) throw std::invalid_argument("svd_truncate: cutoff must be >= 0");
  MatrixView mv = as_matrix(t, left_names);

  // Row-major (rows x cols) seen as column-major (cols x rows): decompose the
  // transpose and swap the roles of U and V afterwards.
  Map<const MatrixXc> mt(mv.permuted.data().data(), mv.cols, mv.rows);
  const std::int64_t full = std::min(mv.rows, mv.cols);

  MatrixXc ut, vt;  // mt = ut * sigma * vt^H, so M = conj(vt) * sigma * ut^T
  Eigen::VectorXd sv;
  if (full > 16) {
    Eigen::BDCSVD<MatrixXc> svd(mt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ut = svd.matrixU();
    vt = svd.matrixV();
    sv = svd.singularValues();
  } else {
    Eigen::JacobiSVD<MatrixXc> svd(mt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ut = svd.matrixU();
    vt = svd.matrixV();
    sv = svd.singularValues();
  }
  tensor_ops::add_flops(static_cast<std::uint64_t>(mv.rows) * static_cast<std::uint64_t>(mv.cols) *
                        static_cast<std::uint64_t>(full));

  // M = U sigma V^H with U = conj(vt) (rows x full), V = conj(ut) (cols x full).
  MatrixXc u = vt.conjugate();
  MatrixXc v = ut.conjugate();

  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::int64_t keep = 0;
  for (std::int64_t i = 0; i < full; ++i)
    if (sv(i) > cutoff * smax) ++keep;
  keep = std::min(keep, max_rank);
  if (keep < 1) keep = 1;

  double discarded = 0.0;
  for (std::int64_t i = keep; i < full; ++i) discarded += sv(i) * sv(i);

  // Deterministic gauge: largest-magnitude entry of each kept left singular
  // vector made real-positive.
  for (std::int64_t k = 0; k < keep; ++k) {
    std::int64_t arg = 0;
    double best = -1.0;
    for (std::int64_t r = 0; r < u.rows(); ++r) {
      const double a = std::abs(u(r, k));
      if (a > best + 1e-300) {
        best = a;
        arg = r;
      }
    }
    if (best > 0.0) {
      const Complex phase = u(arg, k) / best;
      u.col(k) *= std::conj(phase);
      v.col(k) *= std::conj(phase);
    }
  }

  std::vector<IndexLabel> left_ix = mv.left;
  left_ix.push_back({bond_name, keep});
  std::vector<Complex> left_data(static_cast<std::size_t>(mv.rows * keep));
  for (std::int64_t r = 0; r < mv.rows; ++r)
    for (std::int64_t k = 0; k < keep; ++k)
      left_data[static_cast<std::size_t>(r * keep + k)] = u(r, k);

  std::vector<IndexLabel> right_ix;
  right_ix.push_back({bond_name, keep});
  for (const auto& ix : mv.right) right_ix.push_back(ix);
  std::vector<Complex> right_data(static_cast<std::size_t>(keep * mv.cols));
  for (std::int64_t k = 0; k < keep; ++k)
    for (std::int64_t c = 0; c < mv.cols; ++c)
      right_data[static_cast<std::size_t>(k * mv.cols + c)] = std::conj(v(c, k));

  SvdResult out;
  out.left = DenseTensor(std::move(left_ix), std::move(left_data));
  out.right = DenseTensor(std::move(right_ix), std::move(right_data));
  out.singular_values.assign(sv.data(), sv.data() + keep);
  out.discarded_weight = discarded;
  return out;
}

std::pair<DenseTensor, DenseTensor> qr_split(const DenseTensor& t,
                                             const std::vector<std::string>& left_names,
                                             const std::string& bond_name) {
  MatrixView mv = as_matrix(t, left_names);
  MatrixXc m(mv.rows, mv.cols);
  for (std::int64_t r = 0; r < mv.rows; ++r)
    for (std::int64_t c = 0; c < mv.cols; ++c)
      m(r, c) = mv.permuted.data()[static_cast<std::size_t>(r * mv.cols + c)];

  const std::int64_t k = std::min(mv.rows, mv.cols);
  Eigen::HouseholderQR<MatrixXc> qr(m);
  MatrixXc q = qr.householderQ() * MatrixXc::Identity(mv.rows, k);
  MatrixXc r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  tensor_ops::add_flops(static_cast<std::uint64_t>(mv.rows) * static_cast<std::uint64_t>(mv.cols) *
                        static_cast<std::uint64_t>(k));

  // Make diag(R) real-positive so the split is unique.
  for (std::int64_t i = 0; i < k; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) {
      const Complex phase = d / a;
      r.row(i) *= std::conj(phase);
      q.col(i) *= phase;
    }
  }

  std::vector<IndexLabel> q_ix = mv.left;
  q_ix.push_back({bond_name, k});
  std::vector<Complex> q_data(static_cast<std::size_t>(mv.rows * k));
  for (std::int64_t i = 0; i < mv.rows; ++i)
    for (std::int64_t j = 0; j < k; ++j) q_data[static_cast<std::size_t>(i * k + j)] = q(i, j);

  std::vector<IndexLabel> r_ix;
  r_ix.push_back({bond_name, k});
  for (const auto& ix : mv.right) r_ix.push_back(ix);
  std::vector<Complex> r_data(static_cast<std::size_t>(k * mv.cols));
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = 0; j < mv.cols; ++j)
      r_data[static_cast<std::size_t>(i * mv.cols + j)] = r(i, j);

  return {DenseTensor(std::move(q_ix), std::move(q_data)),
          DenseTensor(std::move(r_ix), std::move(r_data))};
}

}  // namespace otoc
