#include "chebzero/frame.hpp"

#include <cmath>

#include "chebzero/error.hpp"

namespace chebzero {

AxisFrame::AxisFrame(const SetFactor& factor) {
  if (factor.kind == FactorKind::kInterval) {
    kind_ = Kind::kChebyshev;
    center_ = 0.5 * (factor.a + factor.b);
    scale_ = 0.5 * (factor.b - factor.a);
  } else {
    kind_ = Kind::kPower;
    center_ = 0.0;
    scale_ = factor.radius;
  }
}

void AxisFrame::values(cplx z, int n, cplx* vals, cplx* derivs) const {
  const cplx w = local(z);
  const double dw = 1.0 / scale_;
  vals[0] = 1.0;
  if (derivs) derivs[0] = 0.0;
  if (n == 0) return;
  if (kind_ == Kind::kPower) {
    for (int k = 1; k <= n; ++k) vals[k] = vals[k - 1] * w;
    if (derivs) {
      for (int k = 1; k <= n; ++k) derivs[k] = static_cast<double>(k) * vals[k - 1] * dw;
    }
    return;
  }
  vals[1] = w;
  for (int k = 1; k < n; ++k) vals[k + 1] = 2.0 * w * vals[k] - vals[k - 1];
  if (derivs) {
    // T'_{k+1} = 2 T_k + 2 w T'_k - T'_{k-1}, in w; chain rule at the end.
    derivs[1] = 1.0;
    for (int k = 1; k < n; ++k) derivs[k + 1] = 2.0 * vals[k] + 2.0 * w * derivs[k] - derivs[k - 1];
    for (int k = 1; k <= n; ++k) derivs[k] *= dw;
  }
}

double AxisFrame::log_leading(int k) const {
  if (k == 0) return 0.0;
  if (kind_ == Kind::kPower) return -k * std::log(scale_);
  return (k - 1) * std::log(2.0) - k * std::log(scale_);
}

SetFrame::SetFrame(const ModelSet& set) {
  for (const auto& f : set.factors()) axes_.emplace_back(f);
}

void SetFrame::values(const MultiIndexTable& table, std::size_t count, const Point& z,
                      std::vector<cplx>& out) const {
  require(count <= table.size(), "frame evaluation past the end of the table");
  require(table.dimension() == dimension(), "table dimension does not match the set");
  const int n = count == 0 ? 0 : table.degree_at(count - 1);
  out.resize(count);
  if (dimension() == 1) {
    std::vector<cplx> v(static_cast<std::size_t>(n) + 1);
    axes_[0].values(z[0], n, v.data());
    for (std::size_t l = 0; l < count; ++l) out[l] = v[static_cast<std::size_t>(table[l][0])];
    return;
  }
  std::vector<cplx> v1(static_cast<std::size_t>(n) + 1), v2(static_cast<std::size_t>(n) + 1);
  axes_[0].values(z[0], n, v1.data());
  axes_[1].values(z[1], n, v2.data());
  for (std::size_t l = 0; l < count; ++l) {
    out[l] = v1[static_cast<std::size_t>(table[l][0])] * v2[static_cast<std::size_t>(table[l][1])];
  }
}

void SetFrame::values_with_gradient(const MultiIndexTable& table, std::size_t count,
                                    const Point& z, std::vector<cplx>& out,
                                    std::vector<cplx>& d1, std::vector<cplx>& d2) const {
  require(count <= table.size(), "frame evaluation past the end of the table");
  const int n = count == 0 ? 0 : table.degree_at(count - 1);
  const auto sz = static_cast<std::size_t>(n) + 1;
  out.resize(count);
  d1.resize(count);
  d2.assign(count, cplx{});
  std::vector<cplx> v1(sz), g1(sz);
  axes_[0].values(z[0], n, v1.data(), g1.data());
  if (dimension() == 1) {
    for (std::size_t l = 0; l < count; ++l) {
      const auto k = static_cast<std::size_t>(table[l][0]);
      out[l] = v1[k];
      d1[l] = g1[k];
    }
    return;
  }
  std::vector<cplx> v2(sz), g2(sz);
  axes_[1].values(z[1], n, v2.data(), g2.data());
  for (std::size_t l = 0; l < count; ++l) {
    const auto k1 = static_cast<std::size_t>(table[l][0]);
    const auto k2 = static_cast<std::size_t>(table[l][1]);
    out[l] = v1[k1] * v2[k2];
    d1[l] = g1[k1] * v2[k2];
    d2[l] = v1[k1] * g2[k2];
  }
}

double SetFrame::log_leading(const MultiIndex& k) const {
  double s = 0.0;
  for (int i = 0; i < dimension(); ++i) s += axes_[static_cast<std::size_t>(i)].log_leading(k[i]);
  return s;
}

}  // namespace chebzero
