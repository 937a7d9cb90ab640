#include "chebzero/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "chebzero/error.hpp"

namespace chebzero {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  require(!entries_.empty(), "multi-index must have at least one entry");
  for (int e : entries_) require(e >= 0, "multi-index entries must be non-negative");
  degree_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

namespace {

// Appends all exponent vectors of total degree `degree` in descending lex order.
void append_degree(int m, int degree, std::vector<int>& prefix,
                   std::vector<MultiIndex>& out) {
  const int used = std::accumulate(prefix.begin(), prefix.end(), 0);
  const int remaining = degree - used;
  if (static_cast<int>(prefix.size()) == m - 1) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix.push_back(e);
    append_degree(m, degree, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MultiIndexTable::MultiIndexTable(int dimension, int max_degree)
    : dimension_(dimension), max_degree_(max_degree) {
  require(dimension >= 1, "dimension m must be >= 1");
  require(max_degree >= 0, "degree n must be >= 0");
  entries_.reserve(static_cast<std::size_t>(chebzero::dimension(dimension, max_degree)));
  std::vector<int> prefix;
  for (int s = 0; s <= max_degree; ++s) append_degree(dimension, s, prefix, entries_);
}

long MultiIndexTable::position(const MultiIndex& k) const {
  auto it = std::find(entries_.begin(), entries_.end(), k);
  return it == entries_.end() ? -1 : static_cast<long>(it - entries_.begin());
}

void MultiIndexTable::write_csv(std::ostream& out) const {
  out << "j";
  for (int i = 1; i <= dimension_; ++i) out << ",k_" << i;
  out << ",s\n";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    out << (j + 1);
    for (int e : entries_[j].entries()) out << ',' << e;
    out << ',' << entries_[j].degree() << '\n';
  }
}

double SimplexDirection::distance(const SimplexDirection& other) const {
  require(theta.size() == other.theta.size(), "simplex directions of different dimension");
  double d = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) d = std::max(d, std::abs(theta[i] - other.theta[i]));
  return d;
}

MultiIndexTable enumerate(int m, int n) { return MultiIndexTable(m, n); }

std::int64_t dimension(int m, int n) {
  require(m >= 1, "dimension m must be >= 1");
  require(n >= 0, "degree n must be >= 0");
  // C(m+n, m) built incrementally; each partial product is itself a binomial.
  const int k = std::min(m, n);
  const int top = m + n;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::int64_t factor = top - k + i;
    if (result > std::numeric_limits<std::int64_t>::max() / factor) {
      fail(ErrorKind::kOverflow, "binomial coefficient C(m+n, n) overflows int64");
    }
    result = result * factor / i;
  }
  return result;
}

SimplexDirection direction(const MultiIndex& k) {
  if (k.degree() == 0) {
    fail(ErrorKind::kDegenerateInput, "direction of the zero multi-index is undefined");
  }
  SimplexDirection d;
  d.theta.reserve(static_cast<std::size_t>(k.dimension()));
  for (int e : k.entries()) d.theta.push_back(static_cast<double>(e) / k.degree());
  return d;
}

}  // namespace chebzero
