#include "turbo/spectral_field.hpp"

#include <unsupported/Eigen/FFT>

#include <stdexcept>
#include <vector>

namespace turbo {

namespace {

// Transform every 1D line along `axis` in place. forward: scaled by 1/n so a
// full pass over all axes yields mean-normalized coefficients.
void fft_axis(const Grid& g, Eigen::MatrixXcd& data, int axis, bool forward) {
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);

    const int n = g.n;
    const std::int64_t total = g.size();
    const std::int64_t n_lines = total / n;

    std::int64_t stride = 1;
    for (int d = 0; d < axis; ++d) stride *= n;

    std::vector<Complex> line(n), out(n);
    for (int c = 0; c < data.cols(); ++c) {
        for (std::int64_t l = 0; l < n_lines; ++l) {
            // Base index of line l: distribute l over the non-axis dimensions.
            const std::int64_t block = stride * n;
            const std::int64_t base = (l / stride) * block + (l % stride);
            for (int i = 0; i < n; ++i) line[i] = data(base + i * stride, c);
            if (forward)
                fft.fwd(out, line);
            else
                fft.inv(out, line);
            const double scale = forward ? 1.0 / n : 1.0;
            for (int i = 0; i < n; ++i) data(base + i * stride, c) = out[i] * scale;
        }
    }
}

void fft_all(const Grid& g, Eigen::MatrixXcd& data, bool forward) {
    for (int d = 0; d < g.dim; ++d) fft_axis(g, data, d, forward);
}

}  // namespace

SpectralField::SpectralField(const Grid& grid, int channels)
    : grid_(grid), channels_(channels) {
    grid_.validate();
    if (channels < 1 || channels > 3)
        throw std::invalid_argument("SpectralField: channels must be 1..3");
    coeffs_ = Eigen::MatrixXcd::Zero(grid_.size(), channels_);
}

SpectralField SpectralField::from_samples(const Grid& grid, const Eigen::MatrixXd& samples) {
    if (samples.rows() != grid.size())
        throw std::invalid_argument("from_samples: row count != grid size");
    SpectralField f(grid, static_cast<int>(samples.cols()));
    f.coeffs_ = samples.cast<Complex>();
    fft_all(grid, f.coeffs_, true);
    f.zero_nyquist();
    f.enforce_real();
    return f;
}

SpectralField SpectralField::from_function(
    const Grid& grid, int channels,
    const std::function<double(double, double, double, int)>& fn) {
    Eigen::MatrixXd samples(grid.size(), channels);
    const int n = grid.n;
    for (int c = 0; c < channels; ++c) {
        std::int64_t idx = 0;
        const int nz = grid.dim > 2 ? n : 1;
        const int ny = grid.dim > 1 ? n : 1;
        for (int iz = 0; iz < nz; ++iz)
            for (int iy = 0; iy < ny; ++iy)
                for (int ix = 0; ix < n; ++ix)
                    samples(idx++, c) =
                        fn(grid.coord(ix), grid.dim > 1 ? grid.coord(iy) : 0.0,
                           grid.dim > 2 ? grid.coord(iz) : 0.0, c);
    }
    return from_samples(grid, samples);
}

std::int64_t SpectralField::wrap_index(int kx, int ky, int kz) const {
    const int n = grid_.n;
    auto wrap = [n](int k) {
        int i = k % n;
        if (i < 0) i += n;
        return i;
    };
    return grid_.flat(wrap(kx), grid_.dim > 1 ? wrap(ky) : 0, grid_.dim > 2 ? wrap(kz) : 0);
}

Complex SpectralField::coeff(int kx, int ky, int kz, int c) const {
    return coeffs_(wrap_index(kx, ky, kz), c);
}

void SpectralField::set_coeff(int kx, int ky, int kz, int c, Complex v) {
    coeffs_(wrap_index(kx, ky, kz), c) = v;
}

Eigen::MatrixXd SpectralField::samples() const {
    Eigen::MatrixXcd work = coeffs_;
    fft_all(grid_, work, false);
    return work.real();
}

Eigen::VectorXd SpectralField::evaluate(double x, double y, double z) const {
    const int n = grid_.n;
    const double sx = x - grid_.x0(), sy = y - grid_.x0(), sz = z - grid_.x0();
    Eigen::VectorXcd phase_x(n), phase_y(n), phase_z(n);
    for (int i = 0; i < n; ++i) {
        phase_x(i) = std::polar(1.0, grid_.k_phys(i) * sx);
        phase_y(i) = grid_.dim > 1 ? std::polar(1.0, grid_.k_phys(i) * sy) : Complex(1, 0);
        phase_z(i) = grid_.dim > 2 ? std::polar(1.0, grid_.k_phys(i) * sz) : Complex(1, 0);
    }
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(channels_);
    const int nz = grid_.dim > 2 ? n : 1;
    const int ny = grid_.dim > 1 ? n : 1;
    std::int64_t idx = 0;
    for (int iz = 0; iz < nz; ++iz)
        for (int iy = 0; iy < ny; ++iy) {
            const Complex pyz = phase_y(iy) * phase_z(iz);
            for (int ix = 0; ix < n; ++ix, ++idx)
                acc += coeffs_.row(idx).transpose() * (phase_x(ix) * pyz);
        }
    return acc.real();
}

void SpectralField::zero_nyquist() {
    const int n = grid_.n;
    const std::int64_t total = grid_.size();
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = grid_.unflat(idx);
        bool nyq = false;
        for (int d = 0; d < grid_.dim; ++d) nyq = nyq || (iv[d] == n / 2);
        if (nyq) coeffs_.row(idx).setZero();
    }
}

void SpectralField::enforce_real() {
    const int n = grid_.n;
    const std::int64_t total = grid_.size();
    auto reflect = [n](int i) { return i == 0 ? 0 : n - i; };
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = grid_.unflat(idx);
        const std::int64_t ridx =
            grid_.flat(reflect(iv[0]), grid_.dim > 1 ? reflect(iv[1]) : 0,
                       grid_.dim > 2 ? reflect(iv[2]) : 0);
        if (ridx < idx) continue;
        for (int c = 0; c < channels_; ++c) {
            const Complex a = coeffs_(idx, c), b = coeffs_(ridx, c);
            const Complex sym = 0.5 * (a + std::conj(b));
            coeffs_(idx, c) = sym;
            coeffs_(ridx, c) = std::conj(sym);
        }
    }
}

SpectralField SpectralField::extract_channel(int c) const {
    SpectralField out(grid_, 1);
    out.coeffs_.col(0) = coeffs_.col(c);
    return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    coeffs_ += o.coeffs_;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    coeffs_ -= o.coeffs_;
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    coeffs_ *= s;
    return *this;
}

}  // namespace turbo
