#include "plap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace plap {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool has_second_normal(const std::array<double, 2>& n) { return !std::isnan(n[0]); }
}  // namespace

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::Interval: return "interval";
        case DomainKind::Ball: return "ball";
        case DomainKind::Shell: return "shell";
        case DomainKind::Rectangle: return "rectangle";
    }
    return "?";
}

double unit_ball_volume(int n) {
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("interval requires a < b");
    return Domain(DomainKind::Interval, 1, a, b);
}

Domain Domain::ball(int n, double radius) {
    if (n < 2) throw std::invalid_argument("ball requires n >= 2 (use interval for 1D)");
    if (!(radius > 0)) throw std::invalid_argument("ball requires R > 0");
    return Domain(DomainKind::Ball, n, 0.0, radius);
}

Domain Domain::shell(int n, double inner, double outer) {
    if (n < 2) throw std::invalid_argument("shell requires n >= 2");
    if (!(0 < inner && inner < outer))
        throw std::invalid_argument("shell requires 0 < r < R");
    return Domain(DomainKind::Shell, n, inner, outer);
}

Domain Domain::rectangle(double width, double height) {
    if (!(width > 0 && height > 0))
        throw std::invalid_argument("rectangle requires w, h > 0");
    return Domain(DomainKind::Rectangle, 2, width, height);
}

double Domain::volume() const {
    switch (kind_) {
        case DomainKind::Interval: return p2_ - p1_;
        case DomainKind::Ball: return unit_ball_volume(dim_) * std::pow(p2_, dim_);
        case DomainKind::Shell:
            return unit_ball_volume(dim_) * (std::pow(p2_, dim_) - std::pow(p1_, dim_));
        case DomainKind::Rectangle: return p1_ * p2_;
    }
    return 0;
}

double Domain::perimeter() const {
    switch (kind_) {
        case DomainKind::Interval: return 2.0;  // counting measure on the endpoints
        case DomainKind::Ball:
            return dim_ * unit_ball_volume(dim_) * std::pow(p2_, dim_ - 1);
        case DomainKind::Shell:
            return dim_ * unit_ball_volume(dim_) *
                   (std::pow(p2_, dim_ - 1) + std::pow(p1_, dim_ - 1));
        case DomainKind::Rectangle: return 2.0 * (p1_ + p2_);
    }
    return 0;
}

std::string Domain::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case DomainKind::Interval: os << "interval(" << p1_ << "," << p2_ << ")"; break;
        case DomainKind::Ball: os << "ball(n=" << dim_ << ",R=" << p2_ << ")"; break;
        case DomainKind::Shell:
            os << "shell(n=" << dim_ << ",r=" << p1_ << ",R=" << p2_ << ")";
            break;
        case DomainKind::Rectangle: os << "rectangle(" << p1_ << "x" << p2_ << ")"; break;
    }
    return os.str();
}

double perimeter_volume_ratio(const Domain& domain) {
    return domain.perimeter() / domain.volume();
}

double max_mean_curvature(const Domain& domain) {
    switch (domain.kind()) {
        case DomainKind::Ball: return 1.0 / domain.radius();
        case DomainKind::Shell:
            return std::max(1.0 / domain.outer_radius(), -1.0 / domain.inner_radius());
        default:
            throw std::invalid_argument("curvature undefined for " +
                                        to_string(domain.kind()));
    }
}

std::vector<std::array<double, 2>> Grid::normals(std::size_t idx) const {
    std::vector<std::array<double, 2>> out;
    if (roles_[idx] != PointRole::Boundary) return out;
    out.push_back(normal_a_[idx]);
    if (has_second_normal(normal_b_[idx])) out.push_back(normal_b_[idx]);
    return out;
}

double Grid::volume_weight_sum() const {
    double s = 0;
    for (double w : volume_weights_) s += w;
    return s;
}

double Grid::boundary_weight_sum() const {
    double s = 0;
    for (double w : boundary_weights_) s += w;
    return s;
}

namespace {

// 1D radial grids: s in [s0, s1], jacobian jac(s) for the volume element,
// boundary atoms (weight, normal sign) at the ends.
struct RadialSpec {
    double s0, s1;
    int n;           // ambient dimension driving the jacobian s^{n-1}
    double jac_coef; // n * omega_n, or 1 for intervals
    bool inner_boundary;
    double inner_atom, outer_atom;
};

RadialSpec radial_spec(const Domain& d) {
    switch (d.kind()) {
        case DomainKind::Interval:
            return {d.a(), d.b(), 1, 1.0, true, 1.0, 1.0};
        case DomainKind::Ball: {
            const double c = d.dim() * unit_ball_volume(d.dim());
            return {0.0, d.radius(), d.dim(), c, false, 0.0,
                    c * std::pow(d.radius(), d.dim() - 1)};
        }
        case DomainKind::Shell: {
            const double c = d.dim() * unit_ball_volume(d.dim());
            return {d.inner_radius(), d.outer_radius(), d.dim(), c, true,
                    c * std::pow(d.inner_radius(), d.dim() - 1),
                    c * std::pow(d.outer_radius(), d.dim() - 1)};
        }
        default: throw std::logic_error("not a radial domain");
    }
}

}  // namespace

std::shared_ptr<const Grid> make_grid(const Domain& domain, int resolution) {
    if (resolution < 4) throw std::invalid_argument("resolution must be >= 4");
    std::shared_ptr<Grid> grid(new Grid(domain));
    Grid& g = *grid;
    g.resolution_ = resolution;

    if (domain.kind() == DomainKind::Rectangle) {
        const int m = resolution;
        const double hx = domain.width() / m;
        const double hy = domain.height() / m;
        g.nx_ = m + 1;
        g.ny_ = m + 1;
        g.hx_ = hx;
        g.hy_ = hy;
        g.spacing_ = std::max(hx, hy);
        const std::size_t n = static_cast<std::size_t>(g.nx_) * g.ny_;
        g.coords_.resize(2 * n);
        g.roles_.assign(n, PointRole::Interior);
        g.volume_weights_.assign(n, 0.0);
        g.boundary_weights_.assign(n, 0.0);
        g.normal_a_.assign(n, {0.0, 0.0});
        g.normal_b_.assign(n, {kNaN, kNaN});
        auto trap = [m](int i, double h) { return (i == 0 || i == m) ? h / 2 : h; };
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= m; ++j) {
                const std::size_t idx = g.index(i, j);
                g.coords_[2 * idx] = i * hx;
                g.coords_[2 * idx + 1] = j * hy;
                g.volume_weights_[idx] = trap(i, hx) * trap(j, hy);
                const bool on_x = (i == 0 || i == m);
                const bool on_y = (j == 0 || j == m);
                if (!on_x && !on_y) continue;
                g.roles_[idx] = PointRole::Boundary;
                double bw = 0.0;
                std::array<double, 2> first{kNaN, kNaN}, second{kNaN, kNaN};
                if (on_x) {
                    bw += trap(j, hy);  // vertical edge, arclength along y
                    first = {i == 0 ? -1.0 : 1.0, 0.0};
                }
                if (on_y) {
                    bw += trap(i, hx);
                    std::array<double, 2> ny{0.0, j == 0 ? -1.0 : 1.0};
                    if (std::isnan(first[0])) first = ny; else second = ny;
                }
                g.boundary_weights_[idx] = bw;
                g.normal_a_[idx] = first;
                g.normal_b_[idx] = second;
            }
        }
        return grid;
    }

    const RadialSpec spec = radial_spec(domain);
    const int m = resolution;
    const double h = (spec.s1 - spec.s0) / m;
    g.nx_ = m + 1;
    g.ny_ = 1;
    g.hx_ = h;
    g.hy_ = 0.0;
    g.spacing_ = h;
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    g.coords_.resize(2 * n, 0.0);
    g.roles_.assign(n, PointRole::Interior);
    g.volume_weights_.assign(n, 0.0);
    g.boundary_weights_.assign(n, 0.0);
    g.normal_a_.assign(n, {0.0, 0.0});
    g.normal_b_.assign(n, {kNaN, kNaN});
    for (int i = 0; i <= m; ++i) {
        const double s = spec.s0 + i * h;
        g.coords_[2 * i] = s;
        g.coords_[2 * i + 1] = 0.0;
        const double trap = (i == 0 || i == m) ? h / 2 : h;
        g.volume_weights_[i] = trap * spec.jac_coef * std::pow(s, spec.n - 1);
    }
    if (spec.inner_boundary) {
        g.roles_[0] = PointRole::Boundary;
        g.boundary_weights_[0] = spec.inner_atom;
        g.normal_a_[0] = {-1.0, 0.0};
    }
    g.roles_[m] = PointRole::Boundary;
    g.boundary_weights_[m] = spec.outer_atom;
    g.normal_a_[m] = {1.0, 0.0};
    return grid;
}

double boundary_distance(const Domain& domain, const std::array<double, 2>& x) {
    switch (domain.kind()) {
        case DomainKind::Interval:
            return std::min(x[0] - domain.a(), domain.b() - x[0]);
        case DomainKind::Ball: return domain.radius() - x[0];
        case DomainKind::Shell:
            return std::min(x[0] - domain.inner_radius(), domain.outer_radius() - x[0]);
        case DomainKind::Rectangle:
            return std::min(std::min(x[0], domain.width() - x[0]),
                            std::min(x[1], domain.height() - x[1]));
    }
    return 0;
}

ScalarField distance_field(const std::shared_ptr<const Grid>& grid) {
    ScalarField f(grid);
    for (std::size_t i = 0; i < grid->size(); ++i)
        f[i] = boundary_distance(grid->domain(), grid->point(i));
    return f;
}

}  // namespace plap
