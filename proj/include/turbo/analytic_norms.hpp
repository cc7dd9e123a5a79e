#pragma once

#include <optional>
#include <vector>

#include "turbo/errors.hpp"
#include "turbo/field_ops.hpp"
#include "turbo/spectral_field.hpp"

namespace turbo {

/// Parameters of the weighted analytic norms: regularity r, radius tau,
/// geometric weights eps_bar (full derivatives) and eps (tangential ones),
/// and the truncation order of the shell sums.
struct AnalyticNormParams {
    SobolevIndex r{4};
    double tau = 0.25;
    double eps_bar = 0.05;
    double eps = 0.3;
    int max_order = 24;

    AnalyticNormParams() { validate(); }
    AnalyticNormParams(SobolevIndex r_, double tau_, double eps_bar_, double eps_, int M)
        : r(r_), tau(tau_), eps_bar(eps_bar_), eps(eps_), max_order(M) {
        validate();
    }

    void validate() const {
        if (!(tau > 0.0)) throw std::invalid_argument("AnalyticNormParams: tau must be > 0");
        if (!(eps_bar > 0.0 && eps_bar <= eps && eps <= 1.0))
            throw std::invalid_argument("AnalyticNormParams: need 0 < eps_bar <= eps <= 1");
        if (max_order < r.r + 2)
            throw std::invalid_argument("AnalyticNormParams: max_order must be >= r+2");
    }
};

/// A complete system of first-order tangential operators. On the torus every
/// coordinate derivative is tangential; on the disk the single operator is the
/// rotation field x1 d2 - x2 d1, which annihilates any radial function.
class TangentialSystem {
  public:
    enum class Kind { TorusCoordinates, DiskRotation };

    static TangentialSystem torus(int dim) { return TangentialSystem(Kind::TorusCoordinates, dim); }
    static TangentialSystem disk() { return TangentialSystem(Kind::DiskRotation, 1); }

    Kind kind() const { return kind_; }
    int count() const { return count_; }

    /// Apply the op_index-th tangential operator.
    SpectralField apply(const SpectralField& f, int op_index) const;

  private:
    TangentialSystem(Kind k, int count) : kind_(k), count_(count) {}
    Kind kind_;
    int count_;
};

/// All d^i * K^j mixed derivatives D^alpha T^beta f, with repetitions.
struct DerivativeTensor {
    int order_i = 0;
    int order_j = 0;
    std::vector<SpectralField> entries;

    /// Komatsu tensor norm: sum of the entries' L2 norms.
    double norm() const;
};

/// c_{i,j} = (i+j)^r / (i+j)! * tau^{i+j-r} * eps_bar^i * eps^j.
/// Rejects i+j < r. Evaluated through log-factorials.
double coeff_cij(int i, int j, const AnalyticNormParams& p);

/// Same combinatorial weight with r replaced by r+1 (the Y-norm weight).
double coeff_cij_y(int i, int j, const AnalyticNormParams& p);

/// Explicit enumeration of the derivative tensor. Guarded against entry-count
/// blowup; intended for moderate orders.
DerivativeTensor komatsu_tensor(const SpectralField& f, int i, int j, const TangentialSystem& T,
                                int max_order);

/// Cached pure-derivative L2 norms ||d1^p d2^q f|| for p+q <= max order,
/// computed from one pass over the coefficient lattice.
class DerivativeMoments {
  public:
    DerivativeMoments(const SpectralField& f, int max_order);
    double norm(int p, int q = 0, int s = 0) const;  // ||d1^p d2^q d3^s f||
    int max_order() const { return max_order_; }
    int dim() const { return dim_; }

  private:
    int dim_;
    int max_order_;
    std::vector<double> table_;  // squared norms, composition-indexed
    std::int64_t index(int p, int q, int s) const;
};

/// Komatsu tensor norm ||d^i T^j f||. On the torus this collapses to the pure
/// (i+j)-derivative tensor via Vandermonde regrouping and is read from the
/// moment cache; on the disk it falls back to explicit recursion.
double komatsu_tensor_norm(const SpectralField& f, int i, int j, const TangentialSystem& T,
                           const DerivativeMoments* moments = nullptr);

struct ShellTerm {
    int i, j;
    double weight_x;       // c_{i,j}   (0 when i+j < r)
    double weight_y;       // y-weight  (0 when i+j < r+1)
    double tensor_norm;    // ||d^i T^j f||
};

struct AnalyticNorms {
    double x = 0, x_tilde = 0, y = 0, y_tilde = 0, y_bar = 0, h_r = 0;
    std::vector<ShellTerm> terms;       // every (i,j) with r <= i+j <= M
    double last_shell_fraction_x = 0;   // contribution of the m = M shell
    double last_shell_fraction_y = 0;
    bool truncation_warning = false;    // last shell > 1% of the sum
};

/// Evaluate all five analytic norms and the per-(i,j) breakdown.
AnalyticNorms analytic_norms(const SpectralField& f, const AnalyticNormParams& p,
                             const TangentialSystem& T);

double norm_X(const SpectralField& f, const AnalyticNormParams& p, const TangentialSystem& T);
double norm_Xtilde(const SpectralField& f, const AnalyticNormParams& p, const TangentialSystem& T);
double norm_Y(const SpectralField& f, const AnalyticNormParams& p, const TangentialSystem& T);
double norm_Ytilde(const SpectralField& f, const AnalyticNormParams& p, const TangentialSystem& T);
double norm_Ybar(const SpectralField& f, const AnalyticNormParams& p, const TangentialSystem& T);

/// Komatsu-product-rule residual at order i:
///   sum over derivative multisets of || D^a(fg) - f D^a g - binomial corrections ||,
/// weighted by slot multiplicities. Zero in exact arithmetic.
double product_rule_residual(const SpectralField& f, const SpectralField& g, int i,
                             int max_order);

struct RadiusEstimate {
    bool entire = false;
    double radius = 0.0;   // meaningful when !entire
    int shells_used = 0;

    double value_or(double inf_value) const { return entire ? inf_value : radius; }
};

/// Fit the exponential Fourier-decay rate from shell maxima of |f_k|.
/// Returns entire for band-limited or super-exponentially decaying data;
/// throws NumericalError("insufficient decay data") with < 4 usable shells.
RadiusEstimate estimate_radius(const SpectralField& f);

}  // namespace turbo
