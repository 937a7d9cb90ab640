#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "chebzero/compactset.hpp"
#include "chebzero/frame.hpp"
#include "chebzero/multiindex.hpp"
#include "chebzero/types.hpp"

namespace chebzero {

enum class BasisFamily { kMinimax, kLeja, kL2 };

std::string to_string(BasisFamily family);
BasisFamily basis_family_from_string(const std::string& name);

/// Monic polynomial t in P(k(j)): z^{k(j)} plus lower terms in table order.
///
/// Frame representation: t = exp(log_scale) * sum_{l<=j} coefficients[l] Phi_l
/// with coefficients[j] == 1 exactly and log_scale = -log(lead Phi_j), so the
/// coefficient of z^{k(j)} is 1 by construction.
/// Product representation (m = 1): t = prod (z - coefficients[i]).
struct MonicPolynomial {
  enum class Representation { kFrame, kProduct };

  MultiIndex leading;
  Representation representation = Representation::kFrame;
  std::vector<cplx> coefficients;
  double log_scale = 0.0;

  /// Coefficient of z^{leading} in the monomial expansion.
  double leading_coefficient() const;
};

/// t(z) for a polynomial produced on `set` with table `table`.
cplx evaluate(const MonicPolynomial& p, const SetFrame& frame, const MultiIndexTable& table,
              const Point& z);

/// Sup norm over the Shilov boundary of `set`: grid maximum over `grid_size`
/// points per factor followed by golden-section refinement of the largest
/// local maxima. Returns {refined maximum, raw grid maximum}.
struct SupNorm {
  double value = 0.0;
  double grid_value = 0.0;
};
SupNorm sup_norm(const std::function<cplx(const Point&)>& f, const ModelSet& set, int grid_size);

/// Default boundary grid for sup norms of degree-s elements:
/// max(1024, 32 s) for m = 1 (rounded up so that N - 1 is a multiple of s on
/// intervals), 64 per factor for m = 2.
int default_grid_size(const ModelSet& set, int degree);

/// Ordered family {t_j} with sup norms M_j and normalized u_j = t_j / M_j.
class Basis {
 public:
  Basis(ModelSet set, BasisFamily family, int max_degree, std::vector<MonicPolynomial> elements,
        std::vector<double> sup_norms);

  const ModelSet& set() const noexcept { return set_; }
  BasisFamily family() const noexcept { return family_; }
  const MultiIndexTable& table() const noexcept { return table_; }
  const SetFrame& frame() const noexcept { return frame_; }
  int max_degree() const noexcept { return table_.max_degree(); }
  std::size_t size() const noexcept { return elements_.size(); }

  const MonicPolynomial& element(std::size_t j) const { return elements_[j]; }
  const std::vector<MonicPolynomial>& elements() const noexcept { return elements_; }
  double sup_norm(std::size_t j) const { return sup_norms_[j]; }
  const std::vector<double>& sup_norms() const noexcept { return sup_norms_; }

  /// Number of elements of total degree <= n, i.e. d_n.
  std::size_t count_for_degree(int n) const;

  bool uses_product_form() const noexcept;

  /// t_j(z).
  cplx monic_value(std::size_t j, const Point& z) const;

  /// u_1(z)..u_count(z).
  void normalized_values(const Point& z, std::size_t count, std::vector<cplx>& out) const;

  /// log|u_1(z)|..log|u_count(z)|. Stays finite where |u_j|^2 would overflow, as
  /// long as the frame values themselves fit in a double.
  void log_abs_normalized(const Point& z, std::size_t count, std::vector<double>& out) const;

  /// Per element: log of the factor mapping frame combinations to u_j,
  /// i.e. log_scale_j - log M_j (frame representation only).
  const std::vector<double>& log_normalizers() const noexcept { return log_normalizers_; }

 private:
  ModelSet set_;
  BasisFamily family_;
  MultiIndexTable table_;
  SetFrame frame_;
  std::vector<MonicPolynomial> elements_;
  std::vector<double> sup_norms_;
  std::vector<double> log_normalizers_;
};

struct MinimaxOptions {
  int grid_size = 0;  // 0: default_grid_size
  int max_iters = 500;
  double damping = 1.0;
  double tolerance = 1e-10;  // relative change of the grid maximum
  /// m = 2 only: also stop once (grid max - weighted L2 bound) / grid max
  /// falls below this. Classical Lawson closes that gap at rate O(1/k).
  double gap_tolerance = 2e-3;
};

struct MinimaxResult {
  MonicPolynomial polynomial;
  double sup_norm = 0.0;      // refined sup over the boundary
  double grid_max = 0.0;      // achieved maximum on the solve grid
  int iterations = 0;
  int grid_size = 0;
  /// sqrt of the weighted least-squares objective sum w_i |r_i|^2 per
  /// iteration. Lawson's weights make this a non-decreasing lower bound.
  std::vector<double> weighted_l2_history;
  std::vector<double> grid_max_history;
  /// Number of separate grid runs where |t| >= grid_max / 1.02 (m = 1).
  int alternation_count = 0;
};

/// Least uniform deviation monic polynomial in P(k(j)) over the boundary grid,
/// computed by Lawson iteration. `j` is the 0-based table position, s(j) >= 1.
/// m = 1 solves use orthogonal-polynomial recurrences (O(N s) per sweep);
/// m = 2 uses a dense weighted QR and is limited to total degree 12.
MinimaxResult minimax_monic(const ModelSet& set, const MultiIndexTable& table, std::size_t j,
                            const MinimaxOptions& options = {});

/// Full minimax family through degree n.
Basis minimax_basis(const ModelSet& set, int n, const MinimaxOptions& options = {});

/// Greedy Leja sequence on the boundary grid (m = 1). zeta_0 is the rightmost
/// boundary point; ties go to the smallest angle / leftmost point.
std::vector<cplx> leja_points(const ModelSet& set, int count, int grid_size = 0);

Basis leja_basis(const ModelSet& set, int n, int grid_size = 0);

/// Discrete reference measure: arcsine (Gauss-Chebyshev) on intervals,
/// uniform arclength on circles, tensor products for m = 2.
struct QuadratureGrid {
  std::vector<Point> nodes;
  std::vector<double> weights;
};
QuadratureGrid reference_measure(const ModelSet& set, int nodes_per_factor);

/// Monic minimizer of the discrete L^2(mu) norm over P(k(j)), by Gram-Schmidt
/// on the frame polynomials in table order.
MonicPolynomial l2_minimal(const ModelSet& set, const QuadratureGrid& measure,
                           const MultiIndexTable& table, std::size_t j);

Basis l2_basis(const ModelSet& set, int n, int nodes_per_factor = 0);

Basis build_basis(const ModelSet& set, BasisFamily family, int n,
                  const MinimaxOptions& minimax = {});

struct ChebyshevRecord {
  std::size_t j = 0;  // 1-based
  MultiIndex index;
  int degree = 0;
  double sup_norm = 0.0;
  double tau = 0.0;  // M^{1/s}, 0 for s = 0
};

struct ChebyshevReport {
  std::vector<ChebyshevRecord> records;
  /// m = 1: mean of tau over the last quartile of degrees; 0 otherwise.
  double limit_estimate = 0.0;

  void write_csv(std::ostream& out) const;
};

ChebyshevReport chebyshev_constants(const Basis& basis);

struct DirectionDiagnostic {
  SimplexDirection theta;
  std::vector<std::size_t> members;  // 0-based positions
  std::vector<double> taus;
  double last_quartile_spread = 0.0;
  double limit_estimate = 0.0;
  bool pass = false;
};

struct ZAsymptoticReport {
  std::vector<DirectionDiagnostic> directions;
  bool all_pass() const;
};

/// For each theta, follows the subsequence with |k/|k| - theta|_inf <= tolerance
/// and flags PASS when the spread of ||t_j||^{1/s(j)} over its last quartile
/// is below the same tolerance. Throws kInsufficientData for fewer than 4
/// members in a direction.
ZAsymptoticReport verify_z_asymptotic(const Basis& basis,
                                      const std::vector<SimplexDirection>& directions,
                                      double tolerance);

/// Coordinate directions plus the barycenter.
std::vector<SimplexDirection> default_directions(int m);

}  // namespace chebzero
