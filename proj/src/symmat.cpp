#include "deltacone/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deltacone/error.hpp"

namespace deltacone {

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorKind::invalid_input, "dimension " + std::to_string(dim) +
                                                  " outside [1, " + std::to_string(kMaxDim) + "]");
    }
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector::Vector(int dim) : dim_(dim) { check_dim(dim); }

Vector::Vector(std::initializer_list<double> values)
    : Vector(std::span<const double>(values.begin(), values.size())) {}

Vector::Vector(std::span<const double> values) : dim_(static_cast<int>(values.size())) {
    check_dim(dim_);
    std::copy(values.begin(), values.end(), data_.begin());
}

double Vector::dot(const Vector& o) const noexcept {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += (*this)[i] * o[i];
    return s;
}

double Vector::norm() const noexcept { return std::sqrt(norm_squared()); }

Vector& Vector::operator+=(const Vector& o) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& o) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
    return *this;
}

Vector& Vector::operator*=(double s) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
    return *this;
}

// ---------------------------------------------------------------- SymTensor

SymTensor::SymTensor(int dim) : dim_(dim) { check_dim(dim); }

SymTensor SymTensor::identity(int dim) {
    SymTensor s(dim);
    for (int i = 0; i < dim; ++i) s.set(i, i, 1.0);
    return s;
}

SymTensor SymTensor::diagonal(std::span<const double> diag) {
    SymTensor s(static_cast<int>(diag.size()));
    for (int i = 0; i < s.dim(); ++i) s.set(i, i, diag[static_cast<std::size_t>(i)]);
    return s;
}

SymTensor SymTensor::outer(const Vector& a) {
    SymTensor s(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = i; j < a.dim(); ++j) s.set(i, j, a[i] * a[j]);
    }
    return s;
}

double SymTensor::trace() const noexcept {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymTensor::frobenius_norm() const noexcept {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
    }
    return std::sqrt(s);
}

bool SymTensor::all_finite() const noexcept {
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            if (!std::isfinite((*this)(i, j))) return false;
        }
    }
    return true;
}

Vector SymTensor::apply(const Vector& x) const noexcept {
    Vector y(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) noexcept {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) noexcept {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

SymTensor& SymTensor::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

// ---------------------------------------------------------------- Frame

Frame::Frame(int dim) : dim_(dim) { check_dim(dim); }

Frame Frame::identity(int dim) {
    Frame f(dim);
    for (int i = 0; i < dim; ++i) f(i, i) = 1.0;
    return f;
}

Frame Frame::plane_rotation(int dim, int i, int j, double angle) {
    Frame f = identity(dim);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    f(i, i) = c;
    f(j, j) = c;
    f(i, j) = -s;
    f(j, i) = s;
    return f;
}

Vector Frame::column(int j) const {
    Vector v(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = (*this)(i, j);
    return v;
}

double Frame::orthogonality_defect() const noexcept {
    double worst = 0.0;
    for (int a = 0; a < dim_; ++a) {
        for (int b = 0; b < dim_; ++b) {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i) s += (*this)(i, a) * (*this)(i, b);
            worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

// ---------------------------------------------------------------- EigenTuple

EigenTuple::EigenTuple(std::initializer_list<double> values)
    : EigenTuple(std::span<const double>(values.begin(), values.size())) {}

EigenTuple::EigenTuple(std::span<const double> values) : dim_(static_cast<int>(values.size())) {
    check_dim(dim_);
    std::copy(values.begin(), values.end(), data_.begin());
    std::sort(data_.begin(), data_.begin() + dim_);
}

double EigenTuple::sum() const noexcept {
    double s = 0.0;
    for (double v : values()) s += v;
    return s;
}

double EigenTuple::norm() const noexcept {
    double s = 0.0;
    for (double v : values()) s += v * v;
    return std::sqrt(s);
}

EigenTuple EigenTuple::scaled(double c) const {
    std::array<double, kMaxDim> tmp{};
    for (int i = 0; i < dim_; ++i) tmp[static_cast<std::size_t>(i)] = c * (*this)[i];
    return EigenTuple(std::span<const double>(tmp.data(), static_cast<std::size_t>(dim_)));
}

// ---------------------------------------------------------------- Jacobi

EigenDecomposition eigen_decompose(const SymTensor& s) {
    if (!s.all_finite()) throw Error(ErrorKind::invalid_input, "non-finite matrix entry");
    const int n = s.dim();

    std::array<std::array<double, kMaxDim>, kMaxDim> a{};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = s(i, j);
    }
    Frame q = Frame::identity(n);

    const double scale = s.frobenius_norm();
    const double target = 1e-14 * scale;
    auto off_mass = [&] {
        double m = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) m += 2.0 * a[i][j] * a[i][j];
        }
        return std::sqrt(m);
    };

    int sweeps = 0;
    constexpr int kMaxSweeps = 64;
    while (sweeps < kMaxSweeps && off_mass() > target) {
        ++sweeps;
        for (int p = 0; p < n - 1; ++p) {
            for (int r = p + 1; r < n; ++r) {
                const double apr = a[p][r];
                if (apr == 0.0) continue;
                // Rutishauser's formulation: t = sgn(theta) / (|theta| + sqrt(theta^2 + 1)).
                const double theta = (a[r][r] - a[p][p]) / (2.0 * apr);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                a[p][p] -= t * apr;
                a[r][r] += t * apr;
                a[p][r] = a[r][p] = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == r) continue;
                    const double akp = a[k][p];
                    const double akr = a[k][r];
                    a[k][p] = a[p][k] = akp - sn * (akr + tau * akp);
                    a[k][r] = a[r][k] = akr + sn * (akp - tau * akr);
                }
                for (int k = 0; k < n; ++k) {
                    const double qkp = q(k, p);
                    const double qkr = q(k, r);
                    q(k, p) = qkp - sn * (qkr + tau * qkp);
                    q(k, r) = qkr + sn * (qkp - tau * qkr);
                }
            }
        }
    }

    // Sort eigenpairs ascending.
    std::array<int, kMaxDim> order{};
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.begin() + n, [&](int x, int y) { return a[x][x] < a[y][y]; });

    std::array<double, kMaxDim> vals{};
    Frame sorted(n);
    for (int j = 0; j < n; ++j) {
        vals[j] = a[order[j]][order[j]];
        for (int i = 0; i < n; ++i) sorted(i, j) = q(i, order[j]);
    }
    return {EigenTuple(std::span<const double>(vals.data(), static_cast<std::size_t>(n))), sorted,
            sweeps};
}

EigenTuple eigenvalues(const SymTensor& s) { return eigen_decompose(s).values; }

SymTensor spectral_assemble(const EigenTuple& lambda, const Frame& q) {
    if (lambda.dim() != q.dim()) {
        throw Error(ErrorKind::invalid_input, "eigen tuple and frame dimensions differ");
    }
    if (q.orthogonality_defect() > 1e-12) {
        throw Error(ErrorKind::invalid_input, "frame is not orthogonal to 1e-12");
    }
    const int n = lambda.dim();
    SymTensor s(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double v = 0.0;
            for (int k = 0; k < n; ++k) v += q(i, k) * lambda[k] * q(j, k);
            s.set(i, j, v);
        }
    }
    return s;
}

// ---------------------------------------------------------------- sigma_k

std::array<double, kMaxDim + 1> elementary_symmetric(std::span<const double> values) {
    std::array<double, kMaxDim + 1> e{};
    e[0] = 1.0;
    int m = 0;
    for (double x : values) {
        ++m;
        for (int k = m; k >= 1; --k) e[k] += x * e[k - 1];
    }
    return e;
}

double sigma_k(std::span<const double> values, int k) {
    const int n = static_cast<int>(values.size());
    if (k < 1 || k > n) {
        throw Error(ErrorKind::invalid_input,
                    "sigma_k index " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    return elementary_symmetric(values)[static_cast<std::size_t>(k)];
}

double binomial(int n, int k) noexcept {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace deltacone
