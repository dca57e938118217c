#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mahler/certificates.hpp"

namespace mahler {

// Accumulates named relations for a certificate.
class CheckList {
 public:
  explicit CheckList(double tol) : tol_(tol) {}

  void at_least(std::string name, double lhs, double rhs) {
    double r = lhs - rhs;
    items_.push_back({std::move(name), lhs, rhs, r, std::isfinite(r) && r >= -tol_,
                      Inequality::Relation::AtLeast});
  }

  // Equality, relative to the magnitude of the operands when they exceed 1.
  void equal(std::string name, double lhs, double rhs) {
    double r = lhs - rhs;
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    items_.push_back({std::move(name), lhs, rhs, r, std::isfinite(r) && std::abs(r) <= tol_ * scale,
                      Inequality::Relation::Equal});
  }

  std::vector<Inequality> take() { return std::move(items_); }

 private:
  double tol_;
  std::vector<Inequality> items_;
};

}  // namespace mahler
