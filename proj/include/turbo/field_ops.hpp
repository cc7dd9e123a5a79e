#pragma once

#include "turbo/spectral_field.hpp"

namespace turbo {

/// L2 norm with the mean-normalized Parseval convention (constant 1 -> 1);
/// channels add in quadrature.
double l2_norm(const SpectralField& f);

double linf_norm(const SpectralField& f);

/// sqrt( sum_k (1+|k|^2)^r |f_k|^2 ), summed over channels.
double sobolev_norm(const SpectralField& f, SobolevIndex r);

/// Spectral derivative along one axis: multiplication by i*k_axis.
SpectralField derivative(const SpectralField& f, int axis);

/// All first derivatives of a scalar field, one channel per axis.
SpectralField gradient(const SpectralField& f);

/// div of a vector field (scalar output).
SpectralField divergence(const SpectralField& f);

/// 2D scalar curl: d1 f2 - d2 f1.
SpectralField curl2d(const SpectralField& f);

/// Perpendicular gradient (-d2 psi, d1 psi) of a scalar stream function.
SpectralField perp_gradient(const SpectralField& psi);

/// Leray projection onto divergence-free fields; k=0 mode unchanged.
SpectralField leray_project(const SpectralField& f);

/// 2/3-rule dealiasing: zero modes with any |k_i| > n/3.
SpectralField dealias(const SpectralField& f);

/// Pointwise product of scalar fields computed in sample space, dealiased.
SpectralField multiply(const SpectralField& a, const SpectralField& b);

/// u . grad v for vector u and vector/scalar v, dealiased.
SpectralField advect(const SpectralField& u, const SpectralField& v);

/// Heat semigroup at time eps: multiplication by exp(-eps |k|^2).
SpectralField heat_mollify(const SpectralField& f, double eps);

/// Solve -lap p = rhs spectrally with zero mean (k=0 dropped).
SpectralField neg_laplace_inverse(const SpectralField& rhs);

/// Kinetic energy (1/2) |u|_{L2}^2 in the mean-normalized convention.
double kinetic_energy(const SpectralField& u);

/// Seeded random field with coefficients ~ exp(-radius_decay |k|) up to
/// |k_i| <= kmax, mean zero, optionally Leray-projected, rescaled so that
/// its H^r norm equals amplitude.
SpectralField random_analytic_field(const Grid& grid, int channels, std::uint64_t seed,
                                    double amplitude, double radius_decay, int kmax,
                                    bool divergence_free, SobolevIndex r = SobolevIndex(4));

}  // namespace turbo
