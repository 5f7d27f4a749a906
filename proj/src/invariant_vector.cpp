#include "costrat/invariant_vector.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace costrat {

InvariantVector::InvariantVector(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("InvariantVector: N must be at least 1");
}

InvariantVector InvariantVector::basis(const MultiIndex& index, double c) {
  InvariantVector v(index.n());
  v.add(index, c);
  return v;
}

InvariantVector InvariantVector::constant(int n, double c) {
  return basis(constant_index(n), c);
}

double InvariantVector::coefficient(const MultiIndex& index) const {
  const auto it = terms_.find(index);
  return it == terms_.end() ? 0.0 : it->second;
}

void InvariantVector::add(const MultiIndex& index, double c) {
  if (index.n() != n_) throw std::invalid_argument("InvariantVector: index has the wrong N");
  if (c == 0.0) return;
  terms_[index] += c;
}

void InvariantVector::prune(double threshold) {
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) < threshold; });
}

void InvariantVector::check_same_n(const InvariantVector& other) const {
  if (n_ != other.n_) throw std::invalid_argument("InvariantVector: mismatched N");
}

InvariantVector& InvariantVector::operator+=(const InvariantVector& other) {
  check_same_n(other);
  for (const auto& [index, c] : other.terms_) terms_[index] += c;
  prune();
  return *this;
}

InvariantVector& InvariantVector::operator-=(const InvariantVector& other) {
  check_same_n(other);
  for (const auto& [index, c] : other.terms_) terms_[index] -= c;
  prune();
  return *this;
}

InvariantVector& InvariantVector::operator*=(double s) {
  for (auto& kv : terms_) kv.second *= s;
  prune();
  return *this;
}

std::complex<double> InvariantVector::evaluate(const GroupTuple& a) const {
  if (a.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("InvariantVector::evaluate: tuple length does not match N");
  BasisEvaluator eval(a);
  return evaluate(eval);
}

std::complex<double> InvariantVector::evaluate(BasisEvaluator& eval) const {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [index, c] : terms_) sum += c * eval(index);
  return sum;
}

InvariantVector operator+(InvariantVector a, const InvariantVector& b) { return a += b; }
InvariantVector operator-(InvariantVector a, const InvariantVector& b) { return a -= b; }
InvariantVector operator*(double s, InvariantVector v) { return v *= s; }

std::string to_json(const InvariantVector& v) {
  nlohmann::ordered_json doc;
  doc["version"] = kFormatVersion;
  doc["n"] = v.n();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [index, c] : v.terms()) {
    nlohmann::ordered_json t;
    t["index"] = to_string(index);
    t["c"] = c;
    terms.push_back(std::move(t));
  }
  doc["terms"] = std::move(terms);
  return doc.dump(2) + "\n";
}

InvariantVector invariant_vector_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("version").get<std::string>() != kFormatVersion)
      throw std::invalid_argument("unsupported format version");
    InvariantVector v(doc.at("n").get<int>());
    for (const auto& t : doc.at("terms")) {
      const auto index = parse_multi_index(t.at("index").get<std::string>());
      v.add(index, t.at("c").get<double>());
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid InvariantVector JSON: ") + e.what());
  }
}

}  // namespace costrat
