#include "turbo/analytic_norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace turbo {

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Exact for the small arguments used here (values stay far below 2^53).
double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double acc = 1.0;
    for (int t = 0; t < k; ++t) acc = acc * (n - t) / (t + 1);
    return std::round(acc);
}

double multinomial(int m, int p, int q, int s) {
    return binomial(m, p) * binomial(m - p, q) * (s >= 0 ? 1.0 : 0.0);
}

double weight(int i, int j, int rr, double tau, double eps_bar, double eps) {
    const int m = i + j;
    const double lg = rr * std::log(static_cast<double>(m)) - log_factorial(m) +
                      (m - rr) * std::log(tau) + i * std::log(eps_bar) + j * std::log(eps);
    return std::exp(lg);
}

// Coordinate multiplication in sample space; valid for fields supported away
// from the box seam (disk-type carriers).
SpectralField multiply_by_coordinate(const SpectralField& f, int axis) {
    const Grid& g = f.grid();
    Eigen::MatrixXd s = f.samples();
    for (std::int64_t idx = 0; idx < s.rows(); ++idx) {
        const auto iv = g.unflat(idx);
        s.row(idx) *= g.coord(iv[axis]);
    }
    return SpectralField::from_samples(g, s);
}

}  // namespace

SpectralField TangentialSystem::apply(const SpectralField& f, int op_index) const {
    if (op_index < 0 || op_index >= count_)
        throw std::invalid_argument("TangentialSystem: op index out of range");
    if (kind_ == Kind::TorusCoordinates) return derivative(f, op_index);
    // Disk rotation field x1 d2 - x2 d1.
    SpectralField d1 = derivative(f, 0);
    SpectralField d2 = derivative(f, 1);
    return multiply_by_coordinate(d2, 0) - multiply_by_coordinate(d1, 1);
}

double DerivativeTensor::norm() const {
    double acc = 0.0;
    for (const auto& e : entries) acc += l2_norm(e);
    return acc;
}

double coeff_cij(int i, int j, const AnalyticNormParams& p) {
    if (i < 0 || j < 0 || i + j < p.r.r)
        throw std::invalid_argument("coeff_cij: requires i+j >= r");
    return weight(i, j, p.r.r, p.tau, p.eps_bar, p.eps);
}

double coeff_cij_y(int i, int j, const AnalyticNormParams& p) {
    if (i < 0 || j < 0 || i + j < p.r.r + 1)
        throw std::invalid_argument("coeff_cij_y: requires i+j >= r+1");
    return weight(i, j, p.r.r + 1, p.tau, p.eps_bar, p.eps);
}

DerivativeTensor komatsu_tensor(const SpectralField& f, int i, int j, const TangentialSystem& T,
                                int max_order) {
    if (i < 0 || j < 0) throw std::invalid_argument("komatsu_tensor: negative order");
    if (i + j > max_order) throw NumericalError("komatsu_tensor: order overflow beyond max_order");
    const int d = f.grid().dim;
    const int K = T.count();
    double count = std::pow(static_cast<double>(d), i) * std::pow(static_cast<double>(K), j);
    if (count > (1 << 20)) throw NumericalError("komatsu_tensor: entry count too large");

    DerivativeTensor out;
    out.order_i = i;
    out.order_j = j;

    // Tangential part first, iterated over all K^j tuples.
    std::vector<SpectralField> tangential{f};
    for (int level = 0; level < j; ++level) {
        std::vector<SpectralField> next;
        next.reserve(tangential.size() * K);
        for (const auto& e : tangential)
            for (int op = 0; op < K; ++op) next.push_back(T.apply(e, op));
        tangential = std::move(next);
    }
    // Then all d^i derivative tuples.
    std::vector<SpectralField> current = std::move(tangential);
    for (int level = 0; level < i; ++level) {
        std::vector<SpectralField> next;
        next.reserve(current.size() * d);
        for (const auto& e : current)
            for (int axis = 0; axis < d; ++axis) next.push_back(derivative(e, axis));
        current = std::move(next);
    }
    out.entries = std::move(current);
    return out;
}

DerivativeMoments::DerivativeMoments(const SpectralField& f, int max_order)
    : dim_(f.grid().dim), max_order_(max_order) {
    const int M = max_order;
    const std::int64_t span = M + 1;
    table_.assign(dim_ == 3 ? span * span * span : span * span, 0.0);

    const Grid& g = f.grid();
    const std::int64_t total = g.size();
    std::vector<double> px(M + 1), py(M + 1), pz(M + 1);
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const double a = f.coeffs().row(idx).squaredNorm();
        if (a == 0.0) continue;
        const auto iv = g.unflat(idx);
        const double k1 = g.k_phys(iv[0]);
        const double k2 = g.dim > 1 ? g.k_phys(iv[1]) : 0.0;
        const double k3 = g.dim > 2 ? g.k_phys(iv[2]) : 0.0;
        px[0] = py[0] = pz[0] = 1.0;
        for (int t = 1; t <= M; ++t) {
            px[t] = px[t - 1] * k1 * k1;
            py[t] = py[t - 1] * k2 * k2;
            pz[t] = pz[t - 1] * k3 * k3;
        }
        if (dim_ == 3) {
            for (int p = 0; p <= M; ++p)
                for (int q = 0; p + q <= M; ++q)
                    for (int s = 0; p + q + s <= M; ++s)
                        table_[index(p, q, s)] += px[p] * py[q] * pz[s] * a;
        } else {
            for (int p = 0; p <= M; ++p)
                for (int q = 0; p + q <= M; ++q) table_[index(p, q, 0)] += px[p] * py[q] * a;
        }
    }
}

std::int64_t DerivativeMoments::index(int p, int q, int s) const {
    const std::int64_t span = max_order_ + 1;
    return dim_ == 3 ? (p * span + q) * span + s : p * span + q;
}

double DerivativeMoments::norm(int p, int q, int s) const {
    if (p + q + s > max_order_) throw std::invalid_argument("DerivativeMoments: order overflow");
    return std::sqrt(table_[index(p, q, s)]);
}

double komatsu_tensor_norm(const SpectralField& f, int i, int j, const TangentialSystem& T,
                           const DerivativeMoments* moments) {
    const int d = f.grid().dim;
    if (T.kind() == TangentialSystem::Kind::TorusCoordinates) {
        // Coordinate tangential operators: d^i T^j regroups into the pure
        // (i+j)-derivative tensor (Vandermonde convolution of the counts).
        const int m = i + j;
        std::optional<DerivativeMoments> local;
        if (moments == nullptr) {
            local.emplace(f, m);
            moments = &*local;
        }
        double acc = 0.0;
        if (d == 1) return moments->norm(m, 0, 0);
        if (d == 2) {
            for (int p = 0; p <= m; ++p) acc += binomial(m, p) * moments->norm(p, m - p, 0);
            return acc;
        }
        for (int p = 0; p <= m; ++p)
            for (int q = 0; p + q <= m; ++q)
                acc += multinomial(m, p, q, m - p - q) * moments->norm(p, q, m - p - q);
        return acc;
    }
    // Disk system: K = 1, apply the rotation j times, then pure derivatives.
    SpectralField g = f;
    for (int t = 0; t < j; ++t) g = T.apply(g, 0);
    DerivativeMoments mom(g, i);
    double acc = 0.0;
    for (int p = 0; p <= i; ++p) acc += binomial(i, p) * mom.norm(p, i - p, 0);
    return acc;
}

AnalyticNorms analytic_norms(const SpectralField& f, const AnalyticNormParams& p,
                             const TangentialSystem& T) {
    AnalyticNorms out;
    const int r = p.r.r;
    const int M = p.max_order;
    out.h_r = sobolev_norm(f, p.r);

    const bool torus = T.kind() == TangentialSystem::Kind::TorusCoordinates;
    std::optional<DerivativeMoments> moments;
    if (torus) moments.emplace(f, M);

    // On the disk, cache T^j f progressively (K = 1).
    std::vector<SpectralField> t_powers;
    if (!torus) {
        t_powers.push_back(f);
        for (int j = 1; j <= M; ++j) t_powers.push_back(T.apply(t_powers.back(), 0));
    }

    double x_last_shell = 0.0, y_last_shell = 0.0;
    for (int m = r; m <= M; ++m) {
        double tensor_m = torus ? komatsu_tensor_norm(f, m, 0, T, &*moments) : 0.0;
        for (int i = 0; i <= m; ++i) {
            const int j = m - i;
            double tnorm = tensor_m;
            if (!torus) {
                DerivativeMoments mom(t_powers[j], i);
                tnorm = 0.0;
                for (int a = 0; a <= i; ++a) tnorm += binomial(i, a) * mom.norm(a, i - a, 0);
            }
            ShellTerm term;
            term.i = i;
            term.j = j;
            term.tensor_norm = tnorm;
            term.weight_x = weight(i, j, r, p.tau, p.eps_bar, p.eps);
            term.weight_y = (m >= r + 1) ? weight(i, j, r + 1, p.tau, p.eps_bar, p.eps) : 0.0;
            out.x += term.weight_x * tnorm;
            out.y += term.weight_y * tnorm;
            if (m == M) {
                x_last_shell += term.weight_x * tnorm;
                y_last_shell += term.weight_y * tnorm;
            }
            out.terms.push_back(term);
        }
    }
    out.x_tilde = out.x + out.h_r;
    out.y_tilde = p.tau * out.y + out.h_r;
    out.y_bar = out.y + out.h_r;
    out.last_shell_fraction_x = out.x > 0 ? x_last_shell / out.x : 0.0;
    out.last_shell_fraction_y = out.y > 0 ? y_last_shell / out.y : 0.0;
    out.truncation_warning =
        out.last_shell_fraction_x > 0.01 || out.last_shell_fraction_y > 0.01;
    return out;
}

double norm_X(const SpectralField& f, const AnalyticNormParams& p, const TangentialSystem& T) {
    return analytic_norms(f, p, T).x;
}
double norm_Xtilde(const SpectralField& f, const AnalyticNormParams& p,
                   const TangentialSystem& T) {
    return analytic_norms(f, p, T).x_tilde;
}
double norm_Y(const SpectralField& f, const AnalyticNormParams& p, const TangentialSystem& T) {
    return analytic_norms(f, p, T).y;
}
double norm_Ytilde(const SpectralField& f, const AnalyticNormParams& p,
                   const TangentialSystem& T) {
    return analytic_norms(f, p, T).y_tilde;
}
double norm_Ybar(const SpectralField& f, const AnalyticNormParams& p, const TangentialSystem& T) {
    return analytic_norms(f, p, T).y_bar;
}

double product_rule_residual(const SpectralField& f, const SpectralField& g, int i,
                             int max_order) {
    if (i < 0 || i > max_order) throw NumericalError("product_rule_residual: order overflow");
    if (f.grid().dim != 2) throw std::invalid_argument("product_rule_residual: 2D only");

    // Cache D^{a,b} f and D^{a,b} g up to total order i.
    auto derivs = [i](const SpectralField& h) {
        std::map<std::pair<int, int>, SpectralField> out;
        out.emplace(std::make_pair(0, 0), h);
        for (int m = 1; m <= i; ++m)
            for (int a = 0; a <= m; ++a) {
                const int b = m - a;
                const auto& prev = a > 0 ? out.at({a - 1, b}) : out.at({a, b - 1});
                out.emplace(std::make_pair(a, b), derivative(prev, a > 0 ? 0 : 1));
            }
        return out;
    };
    const auto df = derivs(f);
    const auto dg = derivs(g);
    const SpectralField fg = multiply(f, g);

    double residual = 0.0;
    for (int p = 0; p <= i; ++p) {
        const int q = i - p;
        SpectralField lhs = fg;
        for (int t = 0; t < p; ++t) lhs = derivative(lhs, 0);
        for (int t = 0; t < q; ++t) lhs = derivative(lhs, 1);
        SpectralField rhs = multiply(f, dg.at({p, q}));
        for (int pp = 0; pp <= p; ++pp)
            for (int qq = 0; qq <= q; ++qq) {
                if (pp == 0 && qq == 0) continue;
                const double mult = binomial(p, pp) * binomial(q, qq);
                rhs += mult * multiply(df.at({pp, qq}), dg.at({p - pp, q - qq}));
            }
        residual += binomial(i, p) * l2_norm(lhs - rhs);
    }
    return residual;
}

RadiusEstimate estimate_radius(const SpectralField& f) {
    const Grid& g = f.grid();
    const std::int64_t total = g.size();

    // Shell maxima of |f_k| over integer-rounded |k|.
    std::vector<double> shell_max;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto iv = g.unflat(idx);
        double k2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double k = g.k_phys(iv[d]);
            k2 += k * k;
        }
        const int s = static_cast<int>(std::lround(std::sqrt(k2)));
        const double amp = f.coeffs().row(idx).cwiseAbs().maxCoeff();
        if (s >= static_cast<int>(shell_max.size())) shell_max.resize(s + 1, 0.0);
        shell_max[s] = std::max(shell_max[s], amp);
    }
    const double amax = *std::max_element(shell_max.begin(), shell_max.end());
    if (amax <= 0.0) throw NumericalError("estimate_radius: zero field");
    const double thr = std::max(1e-13, amax * 1e-15);

    const int smax = static_cast<int>(shell_max.size()) - 1;
    int last_usable = -1;
    for (int s = 0; s <= smax; ++s)
        if (shell_max[s] > thr) last_usable = s;

    // Band-limited cliff: an O(1)-amplitude shell followed by machine zeros.
    if (last_usable < smax && shell_max[last_usable] > 1e-6 * amax)
        return {true, 0.0, last_usable + 1};

    std::vector<double> ss, la;
    for (int s = 1; s <= last_usable; ++s)
        if (shell_max[s] > thr) {
            ss.push_back(static_cast<double>(s));
            la.push_back(std::log(shell_max[s]));
        }
    if (ss.size() < 4) throw NumericalError("estimate_radius: insufficient decay data");

    auto fit_decay = [](const std::vector<double>& xs, const std::vector<double>& ys, size_t lo,
                        size_t hi) {
        // Least-squares slope of ys vs xs on [lo, hi); returns the decay rate
        // (negated slope).
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(hi - lo);
        for (size_t t = lo; t < hi; ++t) {
            sx += xs[t];
            sy += ys[t];
            sxx += xs[t] * xs[t];
            sxy += xs[t] * ys[t];
        }
        const double denom = n * sxx - sx * sx;
        return -(n * sxy - sx * sy) / denom;
    };

    // Super-exponential decay: the fitted decay rate steepens markedly from
    // the first half of the usable range to the second half.
    const size_t half = ss.size() / 2;
    if (half >= 2 && ss.size() - half >= 2) {
        const double rate1 = fit_decay(ss, la, 0, half);
        const double rate2 = fit_decay(ss, la, half, ss.size());
        if (rate1 > 0.0 && rate2 > 1.8 * rate1)
            return {true, 0.0, static_cast<int>(ss.size())};
    }

    const double rate = fit_decay(ss, la, 0, ss.size());
    return {false, std::max(rate, 0.0), static_cast<int>(ss.size())};
}

}  // namespace turbo
