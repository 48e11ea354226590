#include "deltacone/grid.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "deltacone/error.hpp"

namespace deltacone {

// ---------------------------------------------------------------- GridDomain

GridDomain GridDomain::punctured_ball(const Vector& center, double r0, double r_exc, double h) {
    const int n = center.dim();
    if (n < 1 || n > kMaxDim) throw Error(ErrorKind::invalid_input, "grid dimension out of range");
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_input, "grid spacing h must be > 0");
    if (!(r0 > 0.0) || !(r_exc >= 0.0) || !(r_exc < r0)) {
        throw Error(ErrorKind::invalid_input, "grid radii require 0 <= r_exc < r0");
    }
    const double half = std::floor(r0 / h + 1e-9);
    if (half < 2) throw Error(ErrorKind::invalid_input, "r0 / h must be at least 2");
    double box = 1.0;
    for (int i = 0; i < n; ++i) box *= 2.0 * half + 1.0;
    if (box > 1.2e8) throw Error(ErrorKind::invalid_input, "grid too large (" + std::to_string(box) + " nodes)");

    GridDomain g;
    g.dim_ = n;
    g.center_ = center;
    g.r0_ = r0;
    g.r_exc_ = r_exc;
    g.h_ = h;
    g.half_ = static_cast<int>(half);
    const std::size_t side = static_cast<std::size_t>(2 * g.half_ + 1);
    std::size_t stride = 1;
    for (int axis = n - 1; axis >= 0; --axis) {
        g.strides_[static_cast<std::size_t>(axis)] = stride;
        stride *= side;
    }
    g.mask_.assign(stride, 0);
    const double lo = r_exc * (1.0 - 1e-12);
    const double hi = r0 * (1.0 + 1e-12);
    for (std::size_t node = 0; node < stride; ++node) {
        const double d = g.distance(node);
        g.mask_[node] = (d > 0.0 && d >= lo && d <= hi) ? 1 : 0;
    }
    bool any_interior = false;
    for (std::size_t node = 0; node < stride && !any_interior; ++node) {
        any_interior = g.active(node) && g.is_interior(node);
    }
    if (!any_interior) throw Error(ErrorKind::empty_domain, "grid has no interior nodes");
    return g;
}

std::size_t GridDomain::active_count() const noexcept {
    std::size_t c = 0;
    for (auto m : mask_) c += m;
    return c;
}

std::vector<std::size_t> GridDomain::active_nodes() const {
    std::vector<std::size_t> out;
    out.reserve(active_count());
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i]) out.push_back(i);
    }
    return out;
}

MultiIndex GridDomain::multi_index(std::size_t node) const noexcept {
    MultiIndex m{};
    const std::size_t side = static_cast<std::size_t>(2 * half_ + 1);
    for (int axis = dim_ - 1; axis >= 0; --axis) {
        m[static_cast<std::size_t>(axis)] = static_cast<int>(node % side) - half_;
        node /= side;
    }
    return m;
}

std::size_t GridDomain::flat_index(const MultiIndex& m) const noexcept {
    std::size_t idx = 0;
    for (int axis = 0; axis < dim_; ++axis) {
        idx += static_cast<std::size_t>(m[static_cast<std::size_t>(axis)] + half_) *
               strides_[static_cast<std::size_t>(axis)];
    }
    return idx;
}

std::optional<std::size_t> GridDomain::node_at(const MultiIndex& m) const noexcept {
    for (int axis = 0; axis < dim_; ++axis) {
        if (std::abs(m[static_cast<std::size_t>(axis)]) > half_) return std::nullopt;
    }
    return flat_index(m);
}

Vector GridDomain::position(std::size_t node) const noexcept {
    const MultiIndex m = multi_index(node);
    Vector x = center_;
    for (int axis = 0; axis < dim_; ++axis) x[axis] += h_ * m[static_cast<std::size_t>(axis)];
    return x;
}

double GridDomain::distance(std::size_t node) const noexcept {
    const MultiIndex m = multi_index(node);
    double s = 0.0;
    for (int axis = 0; axis < dim_; ++axis) {
        const double c = h_ * m[static_cast<std::size_t>(axis)];
        s += c * c;
    }
    return std::sqrt(s);
}

std::string GridDomain::describe_node(std::size_t node) const {
    const MultiIndex m = multi_index(node);
    std::ostringstream os;
    os << '(';
    for (int axis = 0; axis < dim_; ++axis) os << (axis ? "," : "") << m[static_cast<std::size_t>(axis)];
    os << ')';
    return os.str();
}

std::optional<std::size_t> GridDomain::shifted(std::size_t node, const MultiIndex& offset) const noexcept {
    MultiIndex m = multi_index(node);
    for (int axis = 0; axis < dim_; ++axis) m[static_cast<std::size_t>(axis)] += offset[static_cast<std::size_t>(axis)];
    return node_at(m);
}

bool GridDomain::box_contains(std::size_t node, int radius) const noexcept {
    const MultiIndex m = multi_index(node);
    for (int axis = 0; axis < dim_; ++axis) {
        if (std::abs(m[static_cast<std::size_t>(axis)]) + radius > half_) return false;
    }
    return true;
}

bool GridDomain::is_interior(std::size_t node) const noexcept {
    if (!box_contains(node, 1)) return false;
    for (int a = 0; a < dim_; ++a) {
        const std::size_t sa = strides_[static_cast<std::size_t>(a)];
        if (!mask_[node + sa] || !mask_[node - sa]) return false;
        for (int b = a + 1; b < dim_; ++b) {
            const std::size_t sb = strides_[static_cast<std::size_t>(b)];
            if (!mask_[node + sa + sb] || !mask_[node + sa - sb] || !mask_[node - sa + sb] ||
                !mask_[node - sa - sb]) {
                return false;
            }
        }
    }
    return true;
}

GridDomain GridDomain::restricted(const std::vector<std::uint8_t>& keep) const {
    if (keep.size() != mask_.size()) throw Error(ErrorKind::invalid_input, "mask size mismatch");
    GridDomain g = *this;
    for (std::size_t i = 0; i < mask_.size(); ++i) g.mask_[i] = mask_[i] && keep[i];
    return g;
}

GridDomain GridDomain::excised(double r_exc) const {
    if (!(r_exc >= 0.0) || !(r_exc < r0_)) throw Error(ErrorKind::invalid_input, "excision radius out of range");
    GridDomain g = *this;
    g.r_exc_ = std::max(r_exc_, r_exc);
    const double lo = g.r_exc_ * (1.0 - 1e-12);
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (g.mask_[i] && distance(i) < lo) g.mask_[i] = 0;
    }
    return g;
}

GridDomain GridDomain::truncated(double r_outer) const {
    GridDomain g = *this;
    const double hi = r_outer * (1.0 + 1e-12);
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (g.mask_[i] && distance(i) > hi) g.mask_[i] = 0;
    }
    return g;
}

// ---------------------------------------------------------------- AnalyticField

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_same_dim(int a, int b) {
    if (a != b) throw Error(ErrorKind::invalid_input, "analytic field dimension mismatch");
}

}  // namespace

AnalyticField AnalyticField::power(const Vector& x0, double exponent, double coeff) {
    AnalyticField f(x0.dim());
    f.terms_.push_back(Power{x0, coeff, exponent});
    return f;
}

AnalyticField AnalyticField::log_singular(const Vector& x0, double coeff) {
    AnalyticField f(x0.dim());
    f.terms_.push_back(LogSingular{x0, coeff});
    return f;
}

AnalyticField AnalyticField::stereographic(const Vector& x0, double coeff) {
    AnalyticField f(x0.dim());
    f.terms_.push_back(Stereographic{x0, coeff});
    return f;
}

AnalyticField AnalyticField::constant(int dim, double c) {
    return quadratic(c, Vector(dim), SymTensor(dim));
}

AnalyticField AnalyticField::linear(double c0, const Vector& b) {
    return quadratic(c0, b, SymTensor(b.dim()));
}

AnalyticField AnalyticField::quadratic(double c0, const Vector& b, const SymTensor& M) {
    require_same_dim(b.dim(), M.dim());
    AnalyticField f(b.dim());
    f.terms_.push_back(Quadratic{c0, b, M});
    return f;
}

AnalyticField& AnalyticField::operator+=(const AnalyticField& o) {
    if (dim_ == 0) dim_ = o.dim_;
    require_same_dim(dim_, o.dim_);
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

AnalyticField AnalyticField::scaled(double s) const {
    AnalyticField f = *this;
    for (auto& t : f.terms_) {
        std::visit(overloaded{[&](Power& p) { p.coeff *= s; },
                              [&](LogSingular& p) { p.coeff *= s; },
                              [&](Stereographic& p) { p.coeff *= s; },
                              [&](Quadratic& q) {
                                  q.c0 *= s;
                                  q.b *= s;
                                  q.M *= s;
                              }},
                   t);
    }
    return f;
}

double AnalyticField::value(const Vector& x) const {
    double v = 0.0;
    for (const auto& t : terms_) {
        v += std::visit(overloaded{[&](const Power& p) {
                                       const double r = (x - p.x0).norm();
                                       return p.coeff * std::pow(r, p.exponent);
                                   },
                                   [&](const LogSingular& p) {
                                       return p.coeff * std::log((x - p.x0).norm());
                                   },
                                   [&](const Stereographic& p) {
                                       return p.coeff * std::log(0.5 * (1.0 + (x - p.x0).norm_squared()));
                                   },
                                   [&](const Quadratic& q) {
                                       return q.c0 + q.b.dot(x) + 0.5 * q.M.quadratic_form(x);
                                   }},
                        t);
    }
    return v;
}

Vector AnalyticField::gradient(const Vector& x) const {
    Vector g(x.dim());
    for (const auto& t : terms_) {
        std::visit(overloaded{[&](const Power& p) {
                                  const Vector y = x - p.x0;
                                  const double r = y.norm();
                                  g += y * (p.coeff * p.exponent * std::pow(r, p.exponent - 2.0));
                              },
                              [&](const LogSingular& p) {
                                  const Vector y = x - p.x0;
                                  g += y * (p.coeff / y.norm_squared());
                              },
                              [&](const Stereographic& p) {
                                  const Vector y = x - p.x0;
                                  g += y * (2.0 * p.coeff / (1.0 + y.norm_squared()));
                              },
                              [&](const Quadratic& q) { g += q.b + q.M.apply(x); }},
                   t);
    }
    return g;
}

SymTensor AnalyticField::hessian(const Vector& x) const {
    const int n = x.dim();
    SymTensor H(n);
    const SymTensor I = SymTensor::identity(n);
    for (const auto& t : terms_) {
        std::visit(overloaded{[&](const Power& p) {
                                  const Vector y = x - p.x0;
                                  const double r2 = y.norm_squared();
                                  const double ra2 = std::pow(r2, 0.5 * (p.exponent - 2.0));
                                  H += (I + SymTensor::outer(y) * ((p.exponent - 2.0) / r2)) *
                                       (p.coeff * p.exponent * ra2);
                              },
                              [&](const LogSingular& p) {
                                  const Vector y = x - p.x0;
                                  const double r2 = y.norm_squared();
                                  H += (I - SymTensor::outer(y) * (2.0 / r2)) * (p.coeff / r2);
                              },
                              [&](const Stereographic& p) {
                                  const Vector y = x - p.x0;
                                  const double q = 1.0 + y.norm_squared();
                                  H += (I * (2.0 / q) - SymTensor::outer(y) * (4.0 / (q * q))) * p.coeff;
                              },
                              [&](const Quadratic& q) { H += q.M; }},
                   t);
    }
    return H;
}

std::string AnalyticField::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        std::visit(overloaded{[&](const Power& p) { os << p.coeff << "*|x-x0|^" << p.exponent; },
                              [&](const LogSingular& p) { os << p.coeff << "*log|x-x0|"; },
                              [&](const Stereographic& p) { os << p.coeff << "*log((1+|x-x0|^2)/2)"; },
                              [&](const Quadratic& q) {
                                  os << "quadratic(c0=" << q.c0 << ", |b|=" << q.b.norm()
                                     << ", |M|=" << q.M.frobenius_norm() << ")";
                              }},
                   t);
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------- ScalarField

ScalarField ScalarField::sample(const GridDomain& domain, const AnalyticField& generator) {
    require_same_dim(domain.dim(), generator.dim());
    ScalarField f;
    f.domain_ = domain;
    f.values_.assign(domain.box_size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < domain.box_size(); ++i) {
        if (!domain.active(i)) continue;
        const double v = generator.value(domain.position(i));
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::invalid_input,
                        "generator is not finite at node " + domain.describe_node(i));
        }
        f.values_[i] = v;
    }
    f.analytic_ = generator;
    return f;
}

ScalarField ScalarField::from_values(const GridDomain& domain, std::vector<double> values) {
    if (values.size() != domain.box_size()) {
        throw Error(ErrorKind::invalid_input, "value array does not cover the lattice");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!domain.active(i)) {
            values[i] = std::numeric_limits<double>::quiet_NaN();
        } else if (!std::isfinite(values[i])) {
            throw Error(ErrorKind::invalid_input, "non-finite value at node " + domain.describe_node(i));
        }
    }
    ScalarField f;
    f.domain_ = domain;
    f.values_ = std::move(values);
    return f;
}

std::optional<double> ScalarField::value_at(const Vector& x) const {
    if (analytic_) return analytic_->value(x);
    MultiIndex m{};
    for (int axis = 0; axis < domain_.dim(); ++axis) {
        const double t = (x[axis] - domain_.center()[axis]) / domain_.h();
        const double r = std::round(t);
        if (std::abs(t - r) > 1e-9) return std::nullopt;
        m[static_cast<std::size_t>(axis)] = static_cast<int>(r);
    }
    const auto node = domain_.node_at(m);
    if (!node || !domain_.active(*node)) return std::nullopt;
    return values_[*node];
}

ScalarField ScalarField::restricted_to(const GridDomain& sub) const {
    if (sub.box_size() != domain_.box_size() || sub.dim() != domain_.dim()) {
        throw Error(ErrorKind::invalid_input, "sub-domain is on a different lattice");
    }
    for (std::size_t i = 0; i < sub.box_size(); ++i) {
        if (sub.active(i) && !domain_.active(i)) {
            throw Error(ErrorKind::invalid_input, "sub-domain activates node " + sub.describe_node(i) +
                                                      " that has no value");
        }
    }
    ScalarField f = *this;
    f.domain_ = sub;
    for (std::size_t i = 0; i < f.values_.size(); ++i) {
        if (!sub.active(i)) f.values_[i] = std::numeric_limits<double>::quiet_NaN();
    }
    return f;
}

}  // namespace deltacone
