#include "adann/nonlinearity.hpp"

#include <cmath>

namespace adann {

double Nonlinearity::operator()(double u) const {
  switch (kind) {
    case NonlinearityKind::reaction_diffusion:
      return (1.0 - u) / (1.0 + u * u);
    case NonlinearityKind::sine:
      return std::sin(u);
    case NonlinearityKind::sqrt_one_plus_sq:
      return std::sqrt(1.0 + u * u);
    case NonlinearityKind::zero:
      return 0.0;
  }
  return 0.0;
}

double Nonlinearity::deriv(double u) const {
  switch (kind) {
    case NonlinearityKind::reaction_diffusion: {
      double q = 1.0 + u * u;
      return (-q - 2.0 * u * (1.0 - u)) / (q * q);
    }
    case NonlinearityKind::sine:
      return std::cos(u);
    case NonlinearityKind::sqrt_one_plus_sq:
      return u / std::sqrt(1.0 + u * u);
    case NonlinearityKind::zero:
      return 0.0;
  }
  return 0.0;
}

Matrix Nonlinearity::apply(const Matrix& u) const {
  switch (kind) {
    case NonlinearityKind::reaction_diffusion:
      return ((1.0 - u.array()) / (1.0 + u.array().square())).matrix();
    case NonlinearityKind::sine:
      return u.array().sin().matrix();
    case NonlinearityKind::sqrt_one_plus_sq:
      return (1.0 + u.array().square()).sqrt().matrix();
    case NonlinearityKind::zero:
      return Matrix::Zero(u.rows(), u.cols());
  }
  return Matrix::Zero(u.rows(), u.cols());
}

Matrix Nonlinearity::apply_deriv(const Matrix& u) const {
  switch (kind) {
    case NonlinearityKind::reaction_diffusion: {
      auto q = 1.0 + u.array().square();
      return ((-q - 2.0 * u.array() * (1.0 - u.array())) / q.square()).matrix();
    }
    case NonlinearityKind::sine:
      return u.array().cos().matrix();
    case NonlinearityKind::sqrt_one_plus_sq:
      return (u.array() / (1.0 + u.array().square()).sqrt()).matrix();
    case NonlinearityKind::zero:
      return Matrix::Zero(u.rows(), u.cols());
  }
  return Matrix::Zero(u.rows(), u.cols());
}

std::string Nonlinearity::name() const {
  switch (kind) {
    case NonlinearityKind::reaction_diffusion:
      return "reaction_diffusion";
    case NonlinearityKind::sine:
      return "sine";
    case NonlinearityKind::sqrt_one_plus_sq:
      return "sqrt_one_plus_sq";
    case NonlinearityKind::zero:
      return "zero";
  }
  return "zero";
}

} // namespace adann
