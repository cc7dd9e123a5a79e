#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "turbo/grid.hpp"

namespace turbo {

using Complex = std::complex<double>;

/// Periodic field stored as complex Fourier coefficients on the truncated
/// lattice |k_i| <= n/2. Coefficients are mean-normalized: coeff at k=0 is the
/// field average. Real-valued fields keep conjugate symmetry and a zero
/// Nyquist shell.
class SpectralField {
  public:
    SpectralField() = default;
    SpectralField(const Grid& grid, int channels);

    static SpectralField zero(const Grid& grid, int channels) { return {grid, channels}; }

    /// Build from real samples, one column per channel, grid.size() rows,
    /// x-fastest flat ordering.
    static SpectralField from_samples(const Grid& grid, const Eigen::MatrixXd& samples);

    /// Sample a callable f(x, channel) on the grid. For dim < 3 trailing
    /// coordinates are zero.
    static SpectralField from_function(
        const Grid& grid, int channels,
        const std::function<double(double, double, double, int)>& f);

    const Grid& grid() const { return grid_; }
    int channels() const { return channels_; }

    Eigen::MatrixXcd& coeffs() { return coeffs_; }
    const Eigen::MatrixXcd& coeffs() const { return coeffs_; }

    Complex coeff(int kx, int ky, int kz, int c) const;
    void set_coeff(int kx, int ky, int kz, int c, Complex v);

    /// Inverse transform; real parts of the synthesized samples.
    Eigen::MatrixXd samples() const;

    /// Evaluate the trigonometric interpolant at an arbitrary point (direct
    /// mode sum; O(size) per call).
    Eigen::VectorXd evaluate(double x, double y = 0.0, double z = 0.0) const;

    /// Zero every coefficient with |k_i| = n/2 on any axis.
    void zero_nyquist();

    /// Symmetrize coefficients so the synthesized field is exactly real.
    void enforce_real();

    SpectralField extract_channel(int c) const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  private:
    Grid grid_;
    int channels_ = 0;
    Eigen::MatrixXcd coeffs_;  // grid.size() rows, one column per channel

    std::int64_t wrap_index(int kx, int ky, int kz) const;
};

}  // namespace turbo
