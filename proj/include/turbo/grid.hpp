#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace turbo {

inline constexpr double kPi = std::numbers::pi_v<double>;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

/// Uniform periodic grid on [-length/2, length/2)^dim with n samples per axis.
struct Grid {
    int dim = 2;
    int n = 64;
    double length = kTwoPi;

    Grid() = default;
    Grid(int dim_, int n_, double length_ = kTwoPi) : dim(dim_), n(n_), length(length_) {
        validate();
    }

    void validate() const {
        if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1, 2 or 3");
        if (n < 8 || n % 2 != 0) throw std::invalid_argument("Grid: n must be even and >= 8");
        if (!(length > 0.0)) throw std::invalid_argument("Grid: length must be positive");
    }

    double h() const { return length / n; }
    double x0() const { return -0.5 * length; }

    std::int64_t size() const {
        std::int64_t s = 1;
        for (int d = 0; d < dim; ++d) s *= n;
        return s;
    }

    double coord(int i) const { return x0() + h() * i; }

    /// Integer wavenumber of sample index i along one axis (standard FFT layout).
    int k_int(int i) const { return (i <= n / 2) ? i : i - n; }

    /// Physical wavenumber 2*pi*k/length; equals k for the default 2*pi box.
    double k_phys(int i) const { return kTwoPi * k_int(i) / length; }

    std::int64_t flat(int ix, int iy = 0, int iz = 0) const {
        return ix + static_cast<std::int64_t>(n) * (iy + static_cast<std::int64_t>(n) * iz);
    }

    std::array<int, 3> unflat(std::int64_t idx) const {
        std::array<int, 3> out{0, 0, 0};
        out[0] = static_cast<int>(idx % n);
        idx /= n;
        if (dim > 1) {
            out[1] = static_cast<int>(idx % n);
            idx /= n;
        }
        if (dim > 2) out[2] = static_cast<int>(idx % n);
        return out;
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && n == o.n && length == o.length;
    }
};

/// Sobolev regularity index; the estimates require r > 3.
struct SobolevIndex {
    int r = 4;
    explicit SobolevIndex(int r_ = 4) : r(r_) {
        if (r <= 3) throw std::invalid_argument("SobolevIndex: requires r > 3");
    }
};

}  // namespace turbo
