#pragma once

#include <string>

#include "adann/types.hpp"

namespace adann {

enum class NonlinearityKind { reaction_diffusion, sine, sqrt_one_plus_sq, zero };

/// Scalar reaction term f applied componentwise to state vectors, together
/// with its analytic derivative (needed by reverse-mode passes).
struct Nonlinearity {
  NonlinearityKind kind = NonlinearityKind::zero;

  double operator()(double u) const;
  double deriv(double u) const;

  Matrix apply(const Matrix& u) const;
  Matrix apply_deriv(const Matrix& u) const;

  std::string name() const;

  static Nonlinearity reaction_diffusion() { return {NonlinearityKind::reaction_diffusion}; }
  static Nonlinearity sine() { return {NonlinearityKind::sine}; }
  static Nonlinearity sqrt_one_plus_sq() { return {NonlinearityKind::sqrt_one_plus_sq}; }
  static Nonlinearity zero() { return {NonlinearityKind::zero}; }
};

} // namespace adann
