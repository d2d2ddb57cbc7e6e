#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hardynls {

/// Coordinate xi in which the nodes are equispaced.
enum class Grading {
  Log,         // xi = ln r
  Uniform,     // xi = r
  Reciprocal,  // xi = -1/r (image of a uniform grid under r -> 1/r)
};

const char* grading_name(Grading g);
Grading parse_grading(const std::string& name);

class RadialGrid;
using GridPtr = std::shared_ptr<const RadialGrid>;

/// Radial mesh 0 < r_0 < ... < r_{n-1}, equispaced in xi with step h.
///
/// weights() integrates f against r dr on [0, r_max]: trapezoid in xi plus
/// the disc [0, r_0] with f frozen at r_0 (the zero-slope ghost at the origin).
/// edge_weights() gives c_e with sum_e c_e |f_{e+1} - f_e|^2 ~ int |f'|^2 r dr.
class RadialGrid : public std::enable_shared_from_this<RadialGrid> {
 public:
  RadialGrid(std::size_t n, double r_min, double r_max, Grading grading);

  std::size_t size() const { return r_.size(); }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }
  double h() const { return h_; }
  Grading grading() const { return grading_; }

  const std::vector<double>& nodes() const { return r_; }
  const std::vector<double>& xi() const { return xi_; }
  const std::vector<double>& weights() const { return w_; }
  const std::vector<double>& edge_weights() const { return c_; }

  double r_of_xi(double xi) const;
  double dr_dxi(double xi) const;

  /// Trapezoid weights for int f r^p dr over [r_0, r_max]; with origin_disc the
  /// piece int_0^{r_0} r^p dr is added to the first node (requires p > -1).
  std::vector<double> weights(double p, bool origin_disc = false) const;

  /// Edge weights for int |f'|^2 r^p dr; entry e couples nodes e and e+1.
  std::vector<double> edge_weights(double p) const;

  /// Image of this grid under r -> 1/r, with nodes 1/r_{n-1-i}. The image of
  /// an image is the original grid object, so r -> 1/r -> r is node-exact.
  GridPtr reciprocal() const;

  /// Linear interpolation of samples at radius r; DomainError outside the grid.
  double interpolate(const std::vector<double>& f, double r) const;

  bool same_nodes(const RadialGrid& other) const { return r_ == other.r_; }

 private:
  RadialGrid() = default;
  void finish();

  Grading grading_ = Grading::Log;
  double h_ = 0.0;
  std::vector<double> xi_;
  std::vector<double> r_;
  std::vector<double> w_;
  std::vector<double> c_;
  GridPtr mirror_;
};

/// pre: n >= 16, 0 < r_min < r_max. Throws ParameterError otherwise.
GridPtr build_grid(std::size_t n = 8192, double r_min = 1e-4,
                   double r_max = 50.0, Grading grading = Grading::Log);

/// Complex radial profile aligned with a grid.
class Field {
 public:
  using value_type = std::complex<double>;

  Field(GridPtr grid, std::vector<value_type> values);
  Field(GridPtr grid, const std::vector<double>& values);

  static Field from_function(GridPtr grid,
                             const std::function<value_type(double)>& f);
  static Field zeros(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  const std::vector<value_type>& values() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const value_type& operator[](std::size_t i) const { return v_[i]; }

  std::vector<double> real_part() const;
  std::vector<double> abs_sq() const;

 private:
  GridPtr grid_;
  std::vector<value_type> v_;
};

/// u = r^{-(N-2)/2} v, pointwise.
Field to_u(const Field& v, int N);
/// v = r^{(N-2)/2} u, pointwise.
Field to_v(const Field& u, int N);

/// t = (-log r)^{-1/(N-2)} for 0 < r < 1; DomainError otherwise.
double log_time_coordinate(double r, int N);
/// Inverse map r = exp(-t^{-(N-2)}).
double radius_from_log_time(double t, int N);

/// N omega_N sum_i w_i f_i, the dmu integral of a radial function.
double integrate_mu(const std::vector<double>& f, const RadialGrid& grid, int N);

/// Throws ShapeError unless both fields live on the same nodes.
void require_same_grid(const Field& a, const Field& b);

}  // namespace hardynls
