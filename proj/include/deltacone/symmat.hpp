#pragma once

// Small dense symmetric-matrix algebra (2 <= n <= 8): storage types,
// cyclic Jacobi eigen-decomposition, and elementary symmetric polynomials.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>

namespace deltacone {

inline constexpr int kMaxDim = 8;

/// Fixed-capacity real n-vector.
class Vector {
public:
    Vector() = default;
    explicit Vector(int dim);
    Vector(std::initializer_list<double> values);
    explicit Vector(std::span<const double> values);

    int dim() const noexcept { return dim_; }
    double& operator[](int i) noexcept { return data_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const noexcept { return data_[static_cast<std::size_t>(i)]; }
    std::span<const double> values() const noexcept {
        return {data_.data(), static_cast<std::size_t>(dim_)};
    }
    std::span<double> values() noexcept { return {data_.data(), static_cast<std::size_t>(dim_)}; }

    double dot(const Vector& o) const noexcept;
    double norm() const noexcept;
    double norm_squared() const noexcept { return dot(*this); }

    Vector& operator+=(const Vector& o) noexcept;
    Vector& operator-=(const Vector& o) noexcept;
    Vector& operator*=(double s) noexcept;
    friend Vector operator+(Vector a, const Vector& b) noexcept { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) noexcept { return a -= b; }
    friend Vector operator*(Vector a, double s) noexcept { return a *= s; }
    friend Vector operator*(double s, Vector a) noexcept { return a *= s; }

private:
    int dim_ = 0;
    std::array<double, kMaxDim> data_{};
};

/// Symmetric n x n matrix; only the upper triangle is stored, so symmetry
/// holds by construction.
class SymTensor {
public:
    SymTensor() = default;
    explicit SymTensor(int dim);

    static SymTensor zero(int dim) { return SymTensor(dim); }
    static SymTensor identity(int dim);
    static SymTensor diagonal(std::span<const double> diag);
    /// a a^T
    static SymTensor outer(const Vector& a);

    int dim() const noexcept { return dim_; }
    double operator()(int i, int j) const noexcept { return data_[index(i, j)]; }
    void set(int i, int j, double value) noexcept { data_[index(i, j)] = value; }
    void add(int i, int j, double value) noexcept { data_[index(i, j)] += value; }

    double trace() const noexcept;
    double frobenius_norm() const noexcept;
    bool all_finite() const noexcept;
    Vector apply(const Vector& x) const noexcept;
    double quadratic_form(const Vector& x) const noexcept { return x.dot(apply(x)); }

    SymTensor& operator+=(const SymTensor& o) noexcept;
    SymTensor& operator-=(const SymTensor& o) noexcept;
    SymTensor& operator*=(double s) noexcept;
    friend SymTensor operator+(SymTensor a, const SymTensor& b) noexcept { return a += b; }
    friend SymTensor operator-(SymTensor a, const SymTensor& b) noexcept { return a -= b; }
    friend SymTensor operator*(SymTensor a, double s) noexcept { return a *= s; }
    friend SymTensor operator*(double s, SymTensor a) noexcept { return a *= s; }

private:
    static std::size_t index(int i, int j) noexcept {
        if (i > j) std::swap(i, j);
        // Row-major packed upper triangle for the maximal dimension.
        return static_cast<std::size_t>(i * kMaxDim - i * (i - 1) / 2 + (j - i));
    }

    int dim_ = 0;
    std::array<double, kMaxDim*(kMaxDim + 1) / 2> data_{};
};

/// Square n x n matrix whose columns are expected to be orthonormal.
class Frame {
public:
    Frame() = default;
    explicit Frame(int dim);
    static Frame identity(int dim);
    /// Rotation by `angle` in the (i, j) coordinate plane.
    static Frame plane_rotation(int dim, int i, int j, double angle);

    int dim() const noexcept { return dim_; }
    double& operator()(int i, int j) noexcept {
        return data_[static_cast<std::size_t>(i * kMaxDim + j)];
    }
    double operator()(int i, int j) const noexcept {
        return data_[static_cast<std::size_t>(i * kMaxDim + j)];
    }
    Vector column(int j) const;

    /// max |Q^T Q - I| entry.
    double orthogonality_defect() const noexcept;

private:
    int dim_ = 0;
    std::array<double, kMaxDim * kMaxDim> data_{};
};

/// Eigenvalues sorted non-decreasing.
class EigenTuple {
public:
    EigenTuple() = default;
    EigenTuple(std::initializer_list<double> values);
    /// Copies and sorts.
    explicit EigenTuple(std::span<const double> values);

    int dim() const noexcept { return dim_; }
    double operator[](int i) const noexcept { return data_[static_cast<std::size_t>(i)]; }
    std::span<const double> values() const noexcept {
        return {data_.data(), static_cast<std::size_t>(dim_)};
    }
    double min() const noexcept { return data_[0]; }
    double max() const noexcept { return data_[static_cast<std::size_t>(dim_ - 1)]; }
    double sum() const noexcept;
    double norm() const noexcept;

    EigenTuple scaled(double c) const;

private:
    int dim_ = 0;
    std::array<double, kMaxDim> data_{};
};

struct EigenDecomposition {
    EigenTuple values;
    Frame vectors;  // column j pairs with values[j]
    int sweeps = 0;
};

/// Cyclic Jacobi; sweeps until the off-diagonal Frobenius mass drops below
/// 1e-14 * ||S||. Throws Error(invalid_input) on a non-finite entry.
EigenDecomposition eigen_decompose(const SymTensor& s);
EigenTuple eigenvalues(const SymTensor& s);

/// Q diag(lambda) Q^T. Throws Error(invalid_input) if Q is not orthogonal to 1e-12.
SymTensor spectral_assemble(const EigenTuple& lambda, const Frame& q);

/// sigma_0 ... sigma_n of `values` via the one-pass recurrence
/// e_k(l_1..l_m) = e_k(l_1..l_{m-1}) + l_m e_{k-1}(l_1..l_{m-1}).
std::array<double, kMaxDim + 1> elementary_symmetric(std::span<const double> values);

/// sigma_k for 1 <= k <= n; throws Error(invalid_input) otherwise.
double sigma_k(std::span<const double> values, int k);
inline double sigma_k(const EigenTuple& lambda, int k) { return sigma_k(lambda.values(), k); }

/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int k) noexcept;

}  // namespace deltacone
