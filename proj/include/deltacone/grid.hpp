#pragma once

// Uniform Cartesian lattices on punctured balls and annuli, and scalar
// fields sampled on them.
//
// Nodes sit at center + h * m for integer multi-indices m with |m_i| <= N,
// N = floor(r0 / h). The center node is the puncture and is never active;
// a node is active iff r_exc <= d(x) <= r0 and d(x) > 0, intersected with
// an optional extra mask.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "deltacone/symmat.hpp"

namespace deltacone {

using MultiIndex = std::array<int, kMaxDim>;

class GridDomain {
public:
    GridDomain() = default;

    /// Requires h > 0 and 0 <= r_exc < r0; N = floor(r0/h + 1e-9). Throws
    /// Error(empty_domain) if no node has a full interior stencil.
    static GridDomain punctured_ball(const Vector& center, double r0, double r_exc, double h);

    int dim() const noexcept { return dim_; }
    const Vector& center() const noexcept { return center_; }
    double r0() const noexcept { return r0_; }
    double r_exc() const noexcept { return r_exc_; }
    double h() const noexcept { return h_; }
    int half_width() const noexcept { return half_; }
    std::size_t box_size() const noexcept { return mask_.size(); }
    std::size_t stride(int axis) const noexcept { return strides_[static_cast<std::size_t>(axis)]; }

    bool active(std::size_t node) const noexcept { return mask_[node] != 0; }
    std::size_t active_count() const noexcept;
    std::vector<std::size_t> active_nodes() const;

    MultiIndex multi_index(std::size_t node) const noexcept;
    std::size_t flat_index(const MultiIndex& m) const noexcept;
    /// Node at `m`, if inside the lattice box.
    std::optional<std::size_t> node_at(const MultiIndex& m) const noexcept;
    Vector position(std::size_t node) const noexcept;
    double distance(std::size_t node) const noexcept;  // to the center
    std::string describe_node(std::size_t node) const;

    /// Node + offset if the shifted multi-index stays in the box.
    std::optional<std::size_t> shifted(std::size_t node, const MultiIndex& offset) const noexcept;
    /// True when all axis neighbours (+-1) and all diagonal neighbours
    /// (+-1, +-1) in every coordinate plane are active.
    bool is_interior(std::size_t node) const noexcept;
    /// True when every node within `radius` lattice steps (Chebyshev) is in the box.
    bool box_contains(std::size_t node, int radius) const noexcept;

    /// Same lattice with the active set intersected with `keep`.
    GridDomain restricted(const std::vector<std::uint8_t>& keep) const;
    /// Same lattice with excision radius raised to `r_exc`.
    GridDomain excised(double r_exc) const;
    /// Same lattice restricted to d(x) <= r_outer.
    GridDomain truncated(double r_outer) const;

private:
    int dim_ = 0;
    Vector center_;
    double r0_ = 0.0;
    double r_exc_ = 0.0;
    double h_ = 0.0;
    int half_ = 0;
    std::array<std::size_t, kMaxDim> strides_{};
    std::vector<std::uint8_t> mask_;
};

/// Closed-form fields: a sum of catalog terms with exact derivatives.
class AnalyticField {
public:
    struct Power {  // coeff |x - x0|^exponent
        Vector x0;
        double coeff = 1.0;
        double exponent = 1.0;
    };
    struct LogSingular {  // coeff log|x - x0|
        Vector x0;
        double coeff = 2.0;
    };
    struct Stereographic {  // coeff log((1 + |x - x0|^2) / 2)
        Vector x0;
        double coeff = 1.0;
    };
    struct Quadratic {  // c0 + b.x + x^T M x / 2
        double c0 = 0.0;
        Vector b;
        SymTensor M;
    };
    using Term = std::variant<Power, LogSingular, Stereographic, Quadratic>;

    AnalyticField() = default;
    explicit AnalyticField(int dim) : dim_(dim) {}

    static AnalyticField power(const Vector& x0, double exponent, double coeff = 1.0);
    static AnalyticField log_singular(const Vector& x0, double coeff = 2.0);
    static AnalyticField stereographic(const Vector& x0, double coeff = 1.0);
    static AnalyticField constant(int dim, double c);
    static AnalyticField linear(double c0, const Vector& b);
    static AnalyticField quadratic(double c0, const Vector& b, const SymTensor& M);

    int dim() const noexcept { return dim_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    AnalyticField& operator+=(const AnalyticField& o);
    friend AnalyticField operator+(AnalyticField a, const AnalyticField& b) { return a += b; }
    AnalyticField scaled(double s) const;

    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;
    SymTensor hessian(const Vector& x) const;
    std::string describe() const;

private:
    int dim_ = 0;
    std::vector<Term> terms_;
};

/// Values on the active nodes of a GridDomain (NaN elsewhere), optionally
/// tagged with the analytic generator they were sampled from.
class ScalarField {
public:
    ScalarField() = default;

    static ScalarField sample(const GridDomain& domain, const AnalyticField& generator);
    /// `values` covers the whole lattice box; active entries must be finite.
    static ScalarField from_values(const GridDomain& domain, std::vector<double> values);

    const GridDomain& domain() const noexcept { return domain_; }
    double operator[](std::size_t node) const noexcept { return values_[node]; }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::optional<AnalyticField>& analytic() const noexcept { return analytic_; }
    bool has_exact_derivatives() const noexcept { return analytic_.has_value(); }

    /// Value at an arbitrary point: the generator when present, otherwise the
    /// active node at that exact lattice position.
    std::optional<double> value_at(const Vector& x) const;

    /// Same values on a sub-domain (same lattice, smaller active set).
    ScalarField restricted_to(const GridDomain& sub) const;

private:
    GridDomain domain_;
    std::vector<double> values_;
    std::optional<AnalyticField> analytic_;
};

}  // namespace deltacone
