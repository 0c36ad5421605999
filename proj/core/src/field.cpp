#include "vll/field.hpp"

#include <cmath>
#include <stdexcept>

namespace vll {

ScalarField::ScalarField(const TorusGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<long>(values.size()) != grid.size())
    throw std::invalid_argument("ScalarField: sample count does not match grid");
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

bool ScalarField::is_mean_zero(double tol) const {
  double m = max_abs();
  if (m == 0.0) return true;
  return std::fabs(mean()) <= tol * m;
}

void ScalarField::subtract_mean() {
  double m = mean();
  for (double& v : values) v -= m;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  for (size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  for (size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  for (double& v : values) v *= a;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
ScalarField operator*(double a, ScalarField f) { f *= a; return f; }

double VectorField::max_abs() const {
  double m = 0.0;
  for (size_t i = 0; i < u1.size(); ++i)
    m = std::max(m, std::sqrt(u1[i] * u1[i] + u2[i] * u2[i]));
  return m;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  for (size_t i = 0; i < u1.size(); ++i) {
    u1[i] -= other.u1[i];
    u2[i] -= other.u2[i];
  }
  return *this;
}

VectorField& VectorField::operator*=(double a) {
  for (size_t i = 0; i < u1.size(); ++i) {
    u1[i] *= a;
    u2[i] *= a;
  }
  return *this;
}

ScalarField VectorField::speed_squared() const {
  ScalarField out(grid);
  for (size_t i = 0; i < u1.size(); ++i)
    out.values[i] = u1[i] * u1[i] + u2[i] * u2[i];
  return out;
}

}  // namespace vll
