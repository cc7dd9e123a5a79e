#include "turbo/field_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace turbo {

namespace {

// Apply fn(kx, ky, kz) as a diagonal multiplier in coefficient space.
template <typename Fn>
SpectralField apply_multiplier(const SpectralField& f, Fn&& fn) {
    SpectralField out = f;
    const Grid& g = f.grid();
    const std::int64_t total = g.size();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = g.unflat(idx);
        const double kx = g.k_phys(iv[0]);
        const double ky = g.dim > 1 ? g.k_phys(iv[1]) : 0.0;
        const double kz = g.dim > 2 ? g.k_phys(iv[2]) : 0.0;
        out.coeffs().row(idx) *= fn(kx, ky, kz);
    }
    return out;
}

}  // namespace

double l2_norm(const SpectralField& f) { return f.coeffs().norm(); }

double linf_norm(const SpectralField& f) {
    return f.samples().array().abs().maxCoeff();
}

double sobolev_norm(const SpectralField& f, SobolevIndex r) {
    const Grid& g = f.grid();
    const std::int64_t total = g.size();
    double acc = 0.0;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = g.unflat(idx);
        double k2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double k = g.k_phys(iv[d]);
            k2 += k * k;
        }
        acc += std::pow(1.0 + k2, r.r) * f.coeffs().row(idx).squaredNorm();
    }
    return std::sqrt(acc);
}

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis < 0 || axis >= f.grid().dim)
        throw std::invalid_argument("derivative: axis out of range");
    SpectralField out = f;
    const Grid& g = f.grid();
    const std::int64_t total = g.size();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = g.unflat(idx);
        out.coeffs().row(idx) *= Complex(0.0, g.k_phys(iv[axis]));
    }
    out.zero_nyquist();
    return out;
}

SpectralField gradient(const SpectralField& f) {
    if (f.channels() != 1) throw std::invalid_argument("gradient: scalar field expected");
    const Grid& g = f.grid();
    SpectralField out(g, g.dim);
    for (int d = 0; d < g.dim; ++d) out.coeffs().col(d) = derivative(f, d).coeffs().col(0);
    return out;
}

SpectralField divergence(const SpectralField& f) {
    const Grid& g = f.grid();
    if (f.channels() != g.dim) throw std::invalid_argument("divergence: vector field expected");
    SpectralField out(g, 1);
    for (int d = 0; d < g.dim; ++d) {
        SpectralField fd = f.extract_channel(d);
        out.coeffs().col(0) += derivative(fd, d).coeffs().col(0);
    }
    return out;
}

SpectralField curl2d(const SpectralField& f) {
    if (f.grid().dim != 2 || f.channels() != 2)
        throw std::invalid_argument("curl2d: 2D vector field expected");
    SpectralField out(f.grid(), 1);
    out.coeffs().col(0) = derivative(f.extract_channel(1), 0).coeffs().col(0) -
                          derivative(f.extract_channel(0), 1).coeffs().col(0);
    return out;
}

SpectralField perp_gradient(const SpectralField& psi) {
    if (psi.grid().dim != 2 || psi.channels() != 1)
        throw std::invalid_argument("perp_gradient: 2D scalar field expected");
    SpectralField out(psi.grid(), 2);
    out.coeffs().col(0) = -derivative(psi, 1).coeffs().col(0);
    out.coeffs().col(1) = derivative(psi, 0).coeffs().col(0);
    return out;
}

SpectralField leray_project(const SpectralField& f) {
    const Grid& g = f.grid();
    if (f.channels() != g.dim || g.dim < 2)
        throw std::invalid_argument("leray_project: vector field with dim >= 2 expected");
    SpectralField out = f;
    const std::int64_t total = g.size();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = g.unflat(idx);
        Eigen::Vector3d k(g.k_phys(iv[0]), g.dim > 1 ? g.k_phys(iv[1]) : 0.0,
                          g.dim > 2 ? g.k_phys(iv[2]) : 0.0);
        const double k2 = k.squaredNorm();
        if (k2 == 0.0) continue;
        Complex kdotf(0, 0);
        for (int d = 0; d < g.dim; ++d) kdotf += k(d) * out.coeffs()(idx, d);
        for (int d = 0; d < g.dim; ++d) out.coeffs()(idx, d) -= k(d) * kdotf / k2;
    }
    return out;
}

SpectralField dealias(const SpectralField& f) {
    const Grid& g = f.grid();
    const int kcut = g.n / 3;
    SpectralField out = f;
    const std::int64_t total = g.size();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = g.unflat(idx);
        bool kill = false;
        for (int d = 0; d < g.dim; ++d) kill = kill || std::abs(g.k_int(iv[d])) > kcut;
        if (kill) out.coeffs().row(idx).setZero();
    }
    return out;
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("multiply: grid mismatch");
    if (a.channels() != 1 || b.channels() != 1)
        throw std::invalid_argument("multiply: scalar fields expected");
    Eigen::MatrixXd prod = a.samples().array() * b.samples().array();
    return dealias(SpectralField::from_samples(a.grid(), prod));
}

SpectralField advect(const SpectralField& u, const SpectralField& v) {
    const Grid& g = u.grid();
    if (u.channels() != g.dim) throw std::invalid_argument("advect: u must be a vector field");
    SpectralField out(g, v.channels());
    for (int c = 0; c < v.channels(); ++c) {
        SpectralField vc = v.extract_channel(c);
        SpectralField acc(g, 1);
        for (int d = 0; d < g.dim; ++d) {
            acc += multiply(u.extract_channel(d), derivative(vc, d));
        }
        out.coeffs().col(c) = acc.coeffs().col(0);
    }
    return out;
}

SpectralField heat_mollify(const SpectralField& f, double eps) {
    if (eps < 0.0) throw std::invalid_argument("heat_mollify: eps must be >= 0");
    if (eps == 0.0) return f;
    return apply_multiplier(f, [eps](double kx, double ky, double kz) {
        return std::exp(-eps * (kx * kx + ky * ky + kz * kz));
    });
}

SpectralField neg_laplace_inverse(const SpectralField& rhs) {
    SpectralField out = apply_multiplier(rhs, [](double kx, double ky, double kz) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        return k2 == 0.0 ? 0.0 : 1.0 / k2;
    });
    // k=0: -lap has no inverse there; fix the mean to zero.
    out.coeffs().row(0).setZero();
    return out;
}

double kinetic_energy(const SpectralField& u) {
    const double n = l2_norm(u);
    return 0.5 * n * n;
}

SpectralField random_analytic_field(const Grid& grid, int channels, std::uint64_t seed,
                                    double amplitude, double radius_decay, int kmax,
                                    bool divergence_free, SobolevIndex r) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SpectralField f(grid, channels);
    const std::int64_t total = grid.size();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = grid.unflat(idx);
        bool in_band = true;
        double k2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
            const int k = grid.k_int(iv[d]);
            in_band = in_band && std::abs(k) <= kmax && std::abs(k) != grid.n / 2;
            const double kp = grid.k_phys(iv[d]);
            k2 += kp * kp;
        }
        if (!in_band || k2 == 0.0) continue;
        const double mag = std::exp(-radius_decay * std::sqrt(k2));
        for (int c = 0; c < channels; ++c)
            f.coeffs()(idx, c) = Complex(normal(rng), normal(rng)) * mag;
    }
    f.enforce_real();
    if (divergence_free && channels == grid.dim) f = leray_project(f);
    const double nr = sobolev_norm(f, r);
    if (nr > 0.0) f *= amplitude / nr;
    return f;
}

}  // namespace turbo
