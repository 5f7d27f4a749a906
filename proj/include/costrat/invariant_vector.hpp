#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>

#include "costrat/spin_basis.hpp"

namespace costrat {

/// Coefficients with magnitude below this are dropped after bilinear operations.
inline constexpr double kPruneThreshold = 1e-14;

/// Format tag embedded in every emitted file.
inline constexpr std::string_view kFormatVersion = "costrat-1";

/// Sparse real combination sum_I c_I chi_I of basis functions on SU(2)^N.
class InvariantVector {
 public:
  using Terms = std::map<MultiIndex, double>;

  InvariantVector() = default;
  explicit InvariantVector(int n);

  /// c * chi_I.
  static InvariantVector basis(const MultiIndex& index, double c = 1.0);
  /// The constant function c on SU(2)^N.
  static InvariantVector constant(int n, double c = 1.0);

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Zero when the index is absent.
  double coefficient(const MultiIndex& index) const;

  /// Accumulates c into the coefficient of chi_I without pruning.
  void add(const MultiIndex& index, double c);
  /// Removes entries with |c| < threshold.
  void prune(double threshold = kPruneThreshold);

  InvariantVector& operator+=(const InvariantVector& other);
  InvariantVector& operator-=(const InvariantVector& other);
  InvariantVector& operator*=(double s);

  /// sum_I c_I chi_I(a).
  std::complex<double> evaluate(const GroupTuple& a) const;
  std::complex<double> evaluate(BasisEvaluator& eval) const;

  bool operator==(const InvariantVector&) const = default;

 private:
  void check_same_n(const InvariantVector& other) const;

  int n_ = 0;
  Terms terms_;
};

InvariantVector operator+(InvariantVector a, const InvariantVector& b);
InvariantVector operator-(InvariantVector a, const InvariantVector& b);
InvariantVector operator*(double s, InvariantVector v);

/// JSON text `{"version", "n", "terms": [{"index", "c"}]}` with terms in
/// canonical index order.
std::string to_json(const InvariantVector& v);
/// Inverse of to_json; throws std::invalid_argument on malformed input.
InvariantVector invariant_vector_from_json(std::string_view text);

}  // namespace costrat
