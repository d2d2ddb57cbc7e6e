#include "hardynls/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardynls/errors.hpp"
#include "hardynls/params.hpp"

namespace hardynls {

const char* grading_name(Grading g) {
  switch (g) {
    case Grading::Log: return "log";
    case Grading::Uniform: return "uniform";
    case Grading::Reciprocal: return "reciprocal";
  }
  return "log";
}

Grading parse_grading(const std::string& name) {
  if (name == "log") return Grading::Log;
  if (name == "uniform") return Grading::Uniform;
  if (name == "reciprocal") return Grading::Reciprocal;
  throw ParameterError("unknown grading '" + name + "'");
}

namespace {

double xi_of_r(Grading g, double r) {
  switch (g) {
    case Grading::Log: return std::log(r);
    case Grading::Uniform: return r;
    case Grading::Reciprocal: return -1.0 / r;
  }
  return r;
}

}  // namespace

RadialGrid::RadialGrid(std::size_t n, double r_min, double r_max, Grading grading)
    : grading_(grading) {
  if (n < 16) {
    throw ParameterError("grid needs n >= 16 nodes, got " + std::to_string(n));
  }
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw ParameterError("grid needs 0 < r_min < r_max");
  }
  const double a = xi_of_r(grading, r_min);
  const double b = xi_of_r(grading, r_max);
  h_ = (b - a) / static_cast<double>(n - 1);
  xi_.resize(n);
  r_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    xi_[i] = a + h_ * static_cast<double>(i);
    r_[i] = r_of_xi(xi_[i]);
  }
  xi_.back() = b;
  r_.front() = r_min;
  r_.back() = r_max;
  for (std::size_t i = 1; i < n; ++i) {
    if (!(r_[i] > r_[i - 1])) {
      throw ParameterError("grid nodes are not strictly increasing; reduce n");
    }
  }
  finish();
}

void RadialGrid::finish() {
  w_ = weights(1.0, true);
  c_ = edge_weights(1.0);
}

double RadialGrid::r_of_xi(double xi) const {
  switch (grading_) {
    case Grading::Log: return std::exp(xi);
    case Grading::Uniform: return xi;
    case Grading::Reciprocal: return -1.0 / xi;
  }
  return xi;
}

double RadialGrid::dr_dxi(double xi) const {
  switch (grading_) {
    case Grading::Log: return std::exp(xi);
    case Grading::Uniform: return 1.0;
    case Grading::Reciprocal: return 1.0 / (xi * xi);
  }
  return 1.0;
}

std::vector<double> RadialGrid::weights(double p, bool origin_disc) const {
  const std::size_t n = r_.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = h_ * std::pow(r_[i], p) * dr_dxi(xi_[i]);
  }
  w.front() *= 0.5;
  w.back() *= 0.5;
  if (origin_disc) {
    if (!(p > -1.0)) throw DomainError("origin disc weight needs p > -1");
    w.front() += std::pow(r_.front(), p + 1.0) / (p + 1.0);
  }
  return w;
}

std::vector<double> RadialGrid::edge_weights(double p) const {
  const std::size_t n = r_.size();
  std::vector<double> c(n - 1);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const double xm = 0.5 * (xi_[e] + xi_[e + 1]);
    c[e] = std::pow(r_of_xi(xm), p) / dr_dxi(xm) / h_;
  }
  return c;
}

GridPtr RadialGrid::reciprocal() const {
  if (mirror_) return mirror_;
  auto g = std::shared_ptr<RadialGrid>(new RadialGrid());
  const std::size_t n = r_.size();
  switch (grading_) {
    case Grading::Log: g->grading_ = Grading::Log; break;
    case Grading::Uniform: g->grading_ = Grading::Reciprocal; break;
    case Grading::Reciprocal: g->grading_ = Grading::Uniform; break;
  }
  g->h_ = h_;
  g->r_.resize(n);
  g->xi_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = n - 1 - j;
    g->r_[j] = 1.0 / r_[i];
    // Log: ln(1/r) = -xi. Uniform <-> Reciprocal: -1/(1/r) = -r and 1/r = -xi.
    g->xi_[j] = -xi_[i];
  }
  g->finish();
  g->mirror_ = weak_from_this().lock();
  return g;
}

double RadialGrid::interpolate(const std::vector<double>& f, double r) const {
  if (f.size() != r_.size()) throw ShapeError("interpolate: length mismatch");
  if (!(r >= r_.front()) || !(r <= r_.back())) {
    throw DomainError("radius " + std::to_string(r) + " outside the grid");
  }
  auto it = std::upper_bound(r_.begin(), r_.end(), r);
  if (it == r_.end()) return f.back();
  const std::size_t j = static_cast<std::size_t>(it - r_.begin());
  const std::size_t i = j - 1;
  const double t = (r - r_[i]) / (r_[j] - r_[i]);
  return f[i] + t * (f[j] - f[i]);
}

GridPtr build_grid(std::size_t n, double r_min, double r_max, Grading grading) {
  return std::make_shared<const RadialGrid>(n, r_min, r_max, grading);
}

Field::Field(GridPtr grid, std::vector<value_type> values)
    : grid_(std::move(grid)), v_(std::move(values)) {
  if (!grid_) throw ShapeError("field without a grid");
  if (v_.size() != grid_->size()) {
    throw ShapeError("field length " + std::to_string(v_.size()) +
                     " does not match grid size " + std::to_string(grid_->size()));
  }
  for (const auto& z : v_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("field contains a non-finite value");
    }
  }
}

Field::Field(GridPtr grid, const std::vector<double>& values)
    : Field(std::move(grid), std::vector<value_type>(values.begin(), values.end())) {}

Field Field::from_function(GridPtr grid, const std::function<value_type(double)>& f) {
  std::vector<value_type> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->nodes()[i]);
  return Field(std::move(grid), std::move(v));
}

Field Field::zeros(GridPtr grid) {
  std::vector<value_type> v(grid->size());
  return Field(std::move(grid), std::move(v));
}

std::vector<double> Field::real_part() const {
  std::vector<double> out(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = v_[i].real();
  return out;
}

std::vector<double> Field::abs_sq() const {
  std::vector<double> out(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = std::norm(v_[i]);
  return out;
}

namespace {

Field scale_by_power(const Field& f, double exponent) {
  const auto& r = f.grid()->nodes();
  std::vector<Field::value_type> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = f[i] * std::pow(r[i], exponent);
  }
  return Field(f.grid(), std::move(out));
}

}  // namespace

Field to_u(const Field& v, int N) { return scale_by_power(v, -0.5 * (N - 2)); }

Field to_v(const Field& u, int N) { return scale_by_power(u, 0.5 * (N - 2)); }

double log_time_coordinate(double r, int N) {
  if (!(r > 0.0) || !(r < 1.0)) {
    throw DomainError("log-time coordinate needs 0 < r < 1");
  }
  return std::pow(-std::log(r), -1.0 / (N - 2));
}

double radius_from_log_time(double t, int N) {
  if (!(t > 0.0)) throw DomainError("log-time coordinate must be positive");
  return std::exp(-std::pow(t, -(N - 2.0)));
}

double integrate_mu(const std::vector<double>& f, const RadialGrid& grid, int N) {
  if (f.size() != grid.size()) {
    throw ShapeError("integrate_mu: " + std::to_string(f.size()) +
                     " samples on a grid of " + std::to_string(grid.size()));
  }
  const auto& w = grid.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return sphere_area(N) * s;
}

void require_same_grid(const Field& a, const Field& b) {
  if (a.grid() == b.grid()) return;
  if (a.size() != b.size() || !a.grid()->same_nodes(*b.grid())) {
    throw ShapeError("fields live on different grids");
  }
}

}  // namespace hardynls
