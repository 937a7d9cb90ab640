#include "chebzero/series.hpp"

#include <cmath>

#include "chebzero/error.hpp"

namespace chebzero {

SeriesEvaluator::SeriesEvaluator(const Basis& basis, std::span<const cplx> a)
    : basis_(&basis), a_(a.begin(), a.end()) {
  require(!a_.empty() && a_.size() <= basis.size(), "coefficient vector does not fit the basis");
  if (basis.uses_product_form()) {
    nested_.resize(a_.size());
    for (std::size_t j = 0; j < a_.size(); ++j) nested_[j] = a_[j] / basis.sup_norm(j);
    return;
  }
  b_.assign(a_.size(), cplx{});
  const auto& lognorm = basis.log_normalizers();
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if (a_[j] == cplx{}) continue;
    const cplx f = a_[j] * std::exp(lognorm[j]);
    const auto& c = basis.element(j).coefficients;
    for (std::size_t k = 0; k <= j; ++k) b_[k] += f * c[k];
  }
}

cplx SeriesEvaluator::value(const Point& z) const {
  if (!nested_.empty()) {
    const auto& roots = basis_->element(nested_.size() - 1).coefficients;
    cplx v = nested_.back();
    for (std::size_t j = nested_.size() - 1; j-- > 0;) v = nested_[j] + (z[0] - roots[j]) * v;
    return v;
  }
  std::vector<cplx> phi;
  basis_->frame().values(basis_->table(), b_.size(), z, phi);
  cplx s = 0.0;
  for (std::size_t k = 0; k < b_.size(); ++k) s += b_[k] * phi[k];
  return s;
}

cplx SeriesEvaluator::value(const Point& z, cplx& d1, cplx& d2) const {
  d2 = 0.0;
  if (!nested_.empty()) {
    const auto& roots = basis_->element(nested_.size() - 1).coefficients;
    cplx v = nested_.back();
    cplx dv = 0.0;
    for (std::size_t j = nested_.size() - 1; j-- > 0;) {
      dv = v + (z[0] - roots[j]) * dv;
      v = nested_[j] + (z[0] - roots[j]) * v;
    }
    d1 = dv;
    return v;
  }
  std::vector<cplx> phi, g1, g2;
  basis_->frame().values_with_gradient(basis_->table(), b_.size(), z, phi, g1, g2);
  cplx s = 0.0;
  d1 = 0.0;
  for (std::size_t k = 0; k < b_.size(); ++k) {
    s += b_[k] * phi[k];
    d1 += b_[k] * g1[k];
    d2 += b_[k] * g2[k];
  }
  return s;
}

double SeriesEvaluator::magnitude(const Point& z) const {
  std::vector<cplx> u;
  basis_->normalized_values(z, a_.size(), u);
  double s = 0.0;
  for (std::size_t j = 0; j < a_.size(); ++j) s += std::abs(a_[j] * u[j]);
  return s;
}

}  // namespace chebzero
