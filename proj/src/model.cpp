#include "schwarz_ocp/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace schwarz_ocp {

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (n < 2) throw std::invalid_argument("grid needs N >= 2 for an interior point");
}

std::size_t Grid::point_count() const {
  const auto m = static_cast<std::size_t>(n_ + 1);
  return dim_ == 1 ? m : m * m;
}

std::size_t Grid::interior_count() const {
  const auto m = static_cast<std::size_t>(n_ - 1);
  return dim_ == 1 ? m : m * m;
}

bool Grid::is_boundary(std::size_t idx) const {
  const int i = x_of(idx);
  if (i == 0 || i == n_) return true;
  if (dim_ == 1) return false;
  const int j = y_of(idx);
  return j == 0 || j == n_;
}

std::vector<std::size_t> Grid::interior_indices() const {
  std::vector<std::size_t> out;
  out.reserve(interior_count());
  for (std::size_t k = 0; k < point_count(); ++k)
    if (!is_boundary(k)) out.push_back(k);
  return out;
}

std::vector<std::size_t> Grid::boundary_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < point_count(); ++k)
    if (is_boundary(k)) out.push_back(k);
  return out;
}

Grid build_grid(int dim, int n) { return Grid(dim, n); }

GridFunction::GridFunction(const Grid& grid, double fill)
    : grid_(grid), values_(grid.point_count(), fill) {}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.point_count())
    throw std::invalid_argument("grid function length does not match grid point count");
}

std::vector<double> GridFunction::interior_values() const {
  std::vector<double> out;
  out.reserve(grid_.interior_count());
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (grid_.is_interior(k)) out.push_back(values_[k]);
  return out;
}

std::vector<double> GridFunction::boundary_values() const {
  std::vector<double> out;
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (grid_.is_boundary(k)) out.push_back(values_[k]);
  return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(*this, other, "operator+=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(*this, other, "operator-=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

void require_same_grid(const GridFunction& a, const GridFunction& b, std::string_view what) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// ---------------------------------------------------------------------------
// Subdomain

Subdomain::Subdomain(const Grid& grid, int lo_x, int hi_x)
    : grid_(grid), lo_{lo_x, 0}, hi_{hi_x, grid.dim() == 2 ? grid.n() : 0} {
  if (lo_x < 0 || hi_x > grid.n() || hi_x - lo_x < 2)
    throw std::invalid_argument("subdomain box must lie in the grid and contain an interior point");

  const int jmax = grid.dim() == 2 ? grid.n() : 0;
  for (int j = 0; j <= jmax; ++j) {
    for (int i = lo_x; i <= hi_x; ++i) {
      const auto idx = grid.index(i, j);
      if (contains_interior(idx)) {
        interior_.push_back(idx);
      } else if (grid.is_interior(idx)) {
        artificial_.push_back(idx);
      }
    }
  }
}

Subdomain Subdomain::whole(const Grid& grid) { return Subdomain(grid, 0, grid.n()); }

bool Subdomain::contains(std::size_t idx) const {
  const int i = grid_.x_of(idx);
  const int j = grid_.y_of(idx);
  return i >= lo_[0] && i <= hi_[0] && j >= lo_[1] && j <= hi_[1];
}

bool Subdomain::contains_interior(std::size_t idx) const {
  const int i = grid_.x_of(idx);
  if (i <= lo_[0] || i >= hi_[0]) return false;
  if (grid_.dim() == 1) return true;
  const int j = grid_.y_of(idx);
  return j > lo_[1] && j < hi_[1];
}

std::size_t Subdomain::interior_count() const { return interior_.size(); }

// ---------------------------------------------------------------------------
// Decomposition

std::string_view to_string(OverlapConvention c) {
  return c == OverlapConvention::ExtendBoth ? "extend-both" : "half-overlap";
}

OverlapConvention parse_overlap_convention(std::string_view s) {
  if (s == "extend-both") return OverlapConvention::ExtendBoth;
  if (s == "half-overlap") return OverlapConvention::HalfOverlap;
  throw std::invalid_argument("unknown overlap convention '" + std::string(s) + "'");
}

Decomposition build_decomposition(const Grid& grid, int delta, OverlapConvention convention) {
  if (grid.n() % 2 != 0) throw std::invalid_argument("decomposition needs an even N");
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");

  const int split = grid.n() / 2;
  int extend_left = delta;
  int extend_right = delta;
  if (convention == OverlapConvention::HalfOverlap) {
    extend_left = (delta + 1) / 2;
    extend_right = delta / 2;
  }
  if (split - extend_right <= 0 || split + extend_left >= grid.n())
    throw std::invalid_argument("overlap reaches the physical boundary");

  Decomposition d;
  d.left = Subdomain(grid, 0, split + extend_left);
  d.right = Subdomain(grid, split - extend_right, grid.n());
  d.delta = delta;
  d.split_index = split;
  d.convention = convention;
  return d;
}

Decomposition build_decomposition_at(const Grid& grid, int r_index, int s_index) {
  if (!(0 < r_index && r_index < s_index && s_index < grid.n()))
    throw std::invalid_argument("need 0 < r_index < s_index < N");
  Decomposition d;
  d.left = Subdomain(grid, 0, s_index);
  d.right = Subdomain(grid, r_index, grid.n());
  d.delta = 0;
  d.split_index = (r_index + s_index) / 2;
  return d;
}

// ---------------------------------------------------------------------------
// Sampled data

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

GridFunction sample_function(const Grid& grid, AnalyticField field, std::uint64_t seed) {
  GridFunction z(grid);
  const double h = grid.h();
  const double pi = std::numbers::pi;
  switch (field) {
    case AnalyticField::Zero:
      break;
    case AnalyticField::Ones:
      for (std::size_t k = 0; k < z.size(); ++k)
        if (grid.is_interior(k)) z[k] = 1.0;
      break;
    case AnalyticField::SinSinTarget:
    case AnalyticField::SinSinSource: {
      const double scale =
          field == AnalyticField::SinSinSource ? grid.dim() * pi * pi : 1.0;
      for (std::size_t k = 0; k < z.size(); ++k) {
        double v = std::sin(pi * grid.x_of(k) * h);
        if (grid.dim() == 2) v *= std::sin(pi * grid.y_of(k) * h);
        z[k] = scale * v;
      }
      break;
    }
    case AnalyticField::SeededRandom: {
      std::mt19937_64 gen(seed);
      for (std::size_t k = 0; k < z.size(); ++k) {
        const double u = 2.0 * unit_double(gen) - 1.0;
        if (grid.is_interior(k)) z[k] = u;
      }
      break;
    }
  }
  return z;
}

// ---------------------------------------------------------------------------
// Problem specification

std::string_view to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::OCP: return "ocp";
    case ProblemKind::Elliptic: return "elliptic";
    case ProblemKind::AlphaElliptic: return "alpha-elliptic";
  }
  return "?";
}

ProblemKind parse_problem_kind(std::string_view s) {
  if (s == "ocp") return ProblemKind::OCP;
  if (s == "elliptic") return ProblemKind::Elliptic;
  if (s == "alpha-elliptic") return ProblemKind::AlphaElliptic;
  throw std::invalid_argument("unknown problem kind '" + std::string(s) + "'");
}

std::string_view to_string(InitPolicy p) {
  switch (p) {
    case InitPolicy::Zero: return "zero";
    case InitPolicy::Ones: return "ones";
    case InitPolicy::Random: return "random";
  }
  return "?";
}

InitPolicy parse_init_policy(std::string_view s) {
  if (s == "zero") return InitPolicy::Zero;
  if (s == "ones") return InitPolicy::Ones;
  if (s == "random") return InitPolicy::Random;
  throw std::invalid_argument("unknown init policy '" + std::string(s) + "'");
}

double alpha_elliptic_shift(double alpha) { return 2.0 / std::sqrt(alpha); }

void ProblemSpec::validate() const {
  if ((kind == ProblemKind::OCP || kind == ProblemKind::AlphaElliptic) && !(alpha > 0.0))
    throw std::invalid_argument("alpha must be positive");
  if (!(shift_c >= 0.0)) throw std::invalid_argument("shift c must be nonnegative");
  if (kind == ProblemKind::AlphaElliptic) {
    const double forced = alpha_elliptic_shift(alpha);
    if (std::abs(shift_c - forced) > 1e-12 * forced)
      throw std::invalid_argument("alpha-elliptic kind requires c = 2 alpha^(-1/2)");
  }
  if (!(f.grid() == grid) || !(y_d.grid() == grid))
    throw std::invalid_argument("f and y_d must live on the problem grid");
  if (!(decomposition.left.grid() == grid) || !(decomposition.right.grid() == grid))
    throw std::invalid_argument("decomposition belongs to a different grid");
  if (max_sweeps < 0) throw std::invalid_argument("max_sweeps must be nonnegative");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be nonnegative");
}

ProblemSpec make_problem(ProblemKind kind, const Grid& grid, double alpha, int delta,
                         OverlapConvention convention) {
  ProblemSpec spec;
  spec.grid = grid;
  spec.kind = kind;
  spec.alpha = alpha;
  spec.decomposition = build_decomposition(grid, delta, convention);
  spec.f = GridFunction(grid);
  spec.y_d = GridFunction(grid);
  switch (kind) {
    case ProblemKind::OCP:
      spec.f = sample_function(grid, AnalyticField::SinSinSource);
      spec.y_d = sample_function(grid, AnalyticField::SinSinTarget);
      break;
    case ProblemKind::Elliptic:
      break;
    case ProblemKind::AlphaElliptic:
      spec.shift_c = alpha_elliptic_shift(alpha);
      break;
  }
  return spec;
}

GridFunction initial_field(const Grid& grid, InitPolicy policy, std::uint64_t seed) {
  switch (policy) {
    case InitPolicy::Zero: return GridFunction(grid);
    case InitPolicy::Ones: return sample_function(grid, AnalyticField::Ones);
    case InitPolicy::Random: return sample_function(grid, AnalyticField::SeededRandom, seed);
  }
  return GridFunction(grid);
}

}  // namespace schwarz_ocp
