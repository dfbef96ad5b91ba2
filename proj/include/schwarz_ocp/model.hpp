#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace schwarz_ocp {

/// Uniform grid on the unit interval (dim = 1) or unit square (dim = 2).
/// Points are (N+1)^dim nodes x_i = i*h, h = 1/N; lexicographic layout
/// with x fastest.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return 1.0 / static_cast<double>(n_); }

  /// Nodes per axis, N + 1.
  int points_per_axis() const { return n_ + 1; }
  std::size_t point_count() const;
  std::size_t interior_count() const;

  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_ + 1) +
           static_cast<std::size_t>(i);
  }
  int x_of(std::size_t idx) const {
    return static_cast<int>(idx % static_cast<std::size_t>(n_ + 1));
  }
  int y_of(std::size_t idx) const {
    return static_cast<int>(idx / static_cast<std::size_t>(n_ + 1));
  }

  bool is_boundary(std::size_t idx) const;
  bool is_interior(std::size_t idx) const { return !is_boundary(idx); }

  /// Index lists for the interior and boundary views; they partition
  /// 0..point_count()-1.
  std::vector<std::size_t> interior_indices() const;
  std::vector<std::size_t> boundary_indices() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_ = 1;
  int n_ = 2;
};

/// Validating factory: dim in {1, 2}, N >= 2.
Grid build_grid(int dim, int n);

/// Nodal values on every point of a grid.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(const Grid& grid, double fill = 0.0);
  GridFunction(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t idx) { return values_[idx]; }
  double operator[](std::size_t idx) const { return values_[idx]; }
  double& at(int i, int j = 0) { return values_[grid_.index(i, j)]; }
  double at(int i, int j = 0) const { return values_[grid_.index(i, j)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Copies of the values at interior / boundary points, in index order.
  std::vector<double> interior_values() const;
  std::vector<double> boundary_values() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Throws std::invalid_argument unless both functions live on the same grid.
void require_same_grid(const GridFunction& a, const GridFunction& b, std::string_view what);

/// Axis-aligned index box of grid points. In 2D the boxes used here are
/// vertical strips: the full y range and a sub-range of x.
class Subdomain {
 public:
  Subdomain() = default;
  /// Box [lo_x, hi_x] x [0, N] (2D) or [lo_x, hi_x] (1D).
  Subdomain(const Grid& grid, int lo_x, int hi_x);

  /// The whole grid viewed as a region without artificial boundary.
  static Subdomain whole(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::array<int, 2> lo() const { return lo_; }
  std::array<int, 2> hi() const { return hi_; }

  bool contains(std::size_t idx) const;
  /// Strictly inside the box (and therefore inside the global interior).
  bool contains_interior(std::size_t idx) const;

  std::size_t interior_count() const;
  /// Interior points of the box in lexicographic order; this is the
  /// unknown ordering used by the subdomain solvers.
  const std::vector<std::size_t>& interior_indices() const { return interior_; }
  /// Box boundary points that lie in the interior of the global domain.
  const std::vector<std::size_t>& artificial_boundary() const { return artificial_; }

  friend bool operator==(const Subdomain& a, const Subdomain& b) {
    return a.grid_ == b.grid_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Grid grid_;
  std::array<int, 2> lo_{0, 0};
  std::array<int, 2> hi_{0, 0};
  std::vector<std::size_t> interior_;
  std::vector<std::size_t> artificial_;
};

enum class OverlapConvention {
  /// Both strips grow by delta layers past the midline (overlap 2*delta cells).
  ExtendBoth,
  /// Total overlap of delta cells split as ceil(delta/2) left, floor(delta/2) right.
  HalfOverlap,
};

std::string_view to_string(OverlapConvention c);
OverlapConvention parse_overlap_convention(std::string_view s);

struct Decomposition {
  Subdomain left;
  Subdomain right;
  int delta = 0;
  int split_index = 0;
  OverlapConvention convention = OverlapConvention::ExtendBoth;

  /// Overlap width in cells: left.hi - right.lo.
  int overlap_cells() const { return left.hi()[0] - right.lo()[0]; }
};

/// Two strips around the midline split N/2.
Decomposition build_decomposition(const Grid& grid, int delta,
                                  OverlapConvention convention = OverlapConvention::ExtendBoth);

/// Left strip 0..s_index, right strip r_index..N, with 0 < r_index < s_index < N.
Decomposition build_decomposition_at(const Grid& grid, int r_index, int s_index);

enum class AnalyticField { Zero, Ones, SinSinTarget, SinSinSource, SeededRandom };

/// Nodal samples. SinSinTarget is prod sin(pi x_d); SinSinSource is
/// dim*pi^2 times that (so -Laplace of the target). Ones and SeededRandom
/// (uniform in [-1, 1)) are zero on the physical boundary.
GridFunction sample_function(const Grid& grid, AnalyticField field, std::uint64_t seed = 0);

enum class ProblemKind { OCP, Elliptic, AlphaElliptic };

std::string_view to_string(ProblemKind k);
ProblemKind parse_problem_kind(std::string_view s);

enum class InitPolicy { Zero, Ones, Random };

std::string_view to_string(InitPolicy p);
InitPolicy parse_init_policy(std::string_view s);

struct ProblemSpec {
  Grid grid;
  ProblemKind kind = ProblemKind::OCP;
  double alpha = 1.0;
  double shift_c = 0.0;
  GridFunction f;
  GridFunction y_d;
  Decomposition decomposition;
  InitPolicy init = InitPolicy::Ones;
  std::uint64_t seed = 0;
  double tol = 1e-14;
  int max_sweeps = 5;

  /// Throws std::invalid_argument on inconsistent fields.
  void validate() const;
};

/// 2*alpha^(-1/2), the shift of the alpha-dependent elliptic equation.
double alpha_elliptic_shift(double alpha);

/// Experiment presets.
///   OCP: f = source, y_d = target, c = 0.
///   Elliptic: homogeneous -Laplace W = 0.
///   AlphaElliptic: homogeneous with c = 2 alpha^(-1/2).
ProblemSpec make_problem(ProblemKind kind, const Grid& grid, double alpha, int delta,
                         OverlapConvention convention = OverlapConvention::ExtendBoth);

/// The initial iterate field for a policy (used for both Y and P~).
GridFunction initial_field(const Grid& grid, InitPolicy policy, std::uint64_t seed);

}  // namespace schwarz_ocp
