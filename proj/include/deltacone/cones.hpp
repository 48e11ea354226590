#pragma once

// Membership margins for the polyhedral cones Gamma_delta and the Garding
// cones Gamma_{sigma_k}, together with the exact exponent calculus that ties
// delta to the Holder, Sobolev and p-Laplacian exponents.

#include <cstdint>
#include <string>

#include "deltacone/rational.hpp"
#include "deltacone/symmat.hpp"

namespace deltacone {

inline constexpr double kDefaultBoundaryTol = 1e-9;
inline constexpr double kMarginScaleFloor = 1e-300;

enum class ConeVerdict { strict_interior, boundary, exterior };
const char* to_string(ConeVerdict v) noexcept;

/// Signed, ||lambda||-normalized distance-to-boundary with its verdict.
/// verdict == boundary iff |margin| <= tolerance.
struct ConeMargin {
    double margin = 0.0;
    ConeVerdict verdict = ConeVerdict::boundary;
    double tolerance = kDefaultBoundaryTol;

    static ConeMargin classify(double margin, double tolerance);
    bool in_closure() const noexcept { return verdict != ConeVerdict::exterior; }
};

class ConeSpec {
public:
    enum class Kind { gamma_delta, gamma_sigma_k };

    /// Requires delta > -1/n.
    static ConeSpec gamma_delta(int n, double delta);
    /// Requires 1 <= k <= n.
    static ConeSpec gamma_sigma_k(int n, int k);

    Kind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    double delta() const noexcept { return delta_; }
    int k() const noexcept { return k_; }
    std::string describe() const;

private:
    Kind kind_ = Kind::gamma_delta;
    int dim_ = 0;
    double delta_ = 0.0;
    int k_ = 0;
};

/// margin = min_i (lambda_i + delta * sum lambda) / max(||lambda||, floor).
ConeMargin gamma_delta_margin(const EigenTuple& lambda, double delta,
                              double tolerance = kDefaultBoundaryTol);

/// margin = min_{j<=k} sigma_j / (C(n,j) ||lambda||^j); membership is
/// sigma_j > 0 for all j <= k.
ConeMargin gamma_sigmak_margin(const EigenTuple& lambda, int k,
                               double tolerance = kDefaultBoundaryTol);

ConeMargin cone_margin(const EigenTuple& lambda, const ConeSpec& cone,
                       double tolerance = kDefaultBoundaryTol);

/// delta(k, n) = (n-k)/(n(k-1)) for n >= 3, n/2 < k <= n.
Rational delta_of_k(int n, int k);

/// All exponents derived from (n, delta), kept as exact rationals.
/// p0 and p_delta are +infinity when delta == 0.
struct ExponentTable {
    int n = 0;
    Rational delta;
    Rational gamma;    // (1 + (2-n) delta) / (1 + delta)
    Rational beta;     // gamma / 2
    Rational alpha;    // 1 / beta
    Rational p0;       // 2 + 1/delta
    Rational p_delta;  // n (1 + delta) / ((n-1) delta)
    Rational delta0;   // (1 + (2-n) delta) / 2
};

/// Requires n >= 3 and 0 <= delta < 1/(n-2).
ExponentTable exponents(int n, const Rational& delta);

/// Holder exponent for the sigma_k(A^tau) family:
/// (n-2)(2k-2n+n tau) / (n-2k+kn-n tau), valid for k > n/2 and
/// 2(n-k)/n < tau <= 1.
Rational gamma_tau(int n, int k, const Rational& tau);
Rational tau_threshold(int n, int k);

/// Ricci eigenvalues (n-2) lambda_i + sigma_1 recovered from Schouten
/// eigenvalues, plus min_i Ric_i - [1 + (2-n) delta] sigma_1.
struct RicciBound {
    EigenTuple ricci;
    double margin = 0.0;
};
RicciBound ricci_from_schouten(const EigenTuple& schouten, int n, double delta);

/// Result of drawing Gamma_{sigma_k} samples and measuring their Gamma_delta margin.
struct InclusionReport {
    int n = 0;
    int k = 0;
    Rational delta;
    std::int64_t samples = 0;
    std::int64_t draws = 0;
    double min_margin = 0.0;
    EigenTuple worst;
    std::int64_t violations = 0;
    double tolerance = kDefaultBoundaryTol;
    std::uint64_t seed = 0;
    bool pass = false;
};

/// Rejection-samples `sample_count` tuples of Gamma_{sigma_k} from [-1,1]^n
/// and records the minimal Gamma_{delta(k,n)} margin. Throws
/// Error(sampling_failure) if the acceptance rate falls below 1e-4.
InclusionReport inclusion_sample_test(int n, int k, std::int64_t sample_count, std::uint64_t seed,
                                      double tolerance = kDefaultBoundaryTol);

}  // namespace deltacone
