#include "ginv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace ginv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Complex unit_root(std::size_t n, std::uint64_t exponent) {
    const double angle = kTwoPi * static_cast<double>(exponent % n) /
                         static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

Spectrum dft(std::span<const double> z) {
    const std::size_t n = z.size();
    if (n < 1) throw Error("dft: empty signal");
    Spectrum spec;
    spec.coeffs.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (std::size_t g = 0; g < n; ++g)
            acc += z[g] * unit_root(n, k * g);
        spec.coeffs[k] = acc;
    }
    return spec;
}

std::vector<Complex> inverse_dft(const Spectrum& spec) {
    const std::size_t n = spec.size();
    std::vector<Complex> z(n);
    for (std::size_t g = 0; g < n; ++g) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k)
            acc += spec.coeffs[k] * std::conj(unit_root(n, k * g));
        z[g] = acc / static_cast<double>(n);
    }
    return z;
}

std::vector<std::vector<double>> triple_correlation(std::span<const double> z) {
    const std::size_t n = z.size();
    std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            double sum = 0.0;
            for (std::size_t sigma = 0; sigma < n; ++sigma)
                sum += z[sigma] * z[(sigma + g) % n] * z[(sigma + h) % n];
            table[g][h] = sum;
        }
    return table;
}

Bispectrum bispectrum_from_spectrum(const Spectrum& spec) {
    const std::size_t n = spec.size();
    Bispectrum B;
    B.n = n;
    B.values.resize(n * n);
    for (std::size_t k1 = 0; k1 < n; ++k1)
        for (std::size_t k2 = 0; k2 < n; ++k2)
            B.values[k1 * n + k2] = spec.coeffs[k1] * spec.coeffs[k2] *
                                    std::conj(spec.coeffs[(k1 + k2) % n]);
    return B;
}

Bispectrum bispectrum(std::span<const double> z) {
    const std::size_t n = z.size();
    if (n < 1) throw Error("bispectrum: empty signal");

    const Bispectrum factored = bispectrum_from_spectrum(dft(z));

    // Second route: 2-D transform of the triple correlation, row-column
    // decomposed so the whole thing stays O(n^3).
    const auto corr = triple_correlation(z);
    std::vector<Complex> half(n * n);   // half[g][k2] = sum_h corr[g][h] w^(k2 h)
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t k2 = 0; k2 < n; ++k2) {
            Complex acc{0.0, 0.0};
            for (std::size_t h = 0; h < n; ++h)
                acc += corr[g][h] * unit_root(n, k2 * h);
            half[g * n + k2] = acc;
        }
    double max_abs = 0.0;
    for (const Complex& v : factored.values) max_abs = std::max(max_abs, std::abs(v));
    const double tol = 1e-8 * std::max(1.0, max_abs);
    for (std::size_t k1 = 0; k1 < n; ++k1)
        for (std::size_t k2 = 0; k2 < n; ++k2) {
            Complex acc{0.0, 0.0};
            for (std::size_t g = 0; g < n; ++g)
                acc += half[g * n + k2] * unit_root(n, k1 * g);
            if (std::abs(acc - factored.at(k1, k2)) > tol)
                throw FactorizationMismatch(
                    "bispectrum: transform and factorization paths disagree");
        }
    return factored;
}

InversionResult invert_bispectrum(const Bispectrum& B, double tol_factor) {
    const std::size_t n = B.n;
    if (n < 1 || B.values.size() != n * n)
        throw Error("invert_bispectrum: malformed table");

    // Scale-relative zero test for the invertibility condition.
    double b0_max = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        b0_max = std::max(b0_max, std::abs(B.at(0, k)));
    const double z0 = std::cbrt(B.at(0, 0).real());
    const double scale = std::abs(z0) / static_cast<double>(n) + std::cbrt(b0_max);
    const double tol = tol_factor * std::max(scale, 1e-300);

    if (std::abs(z0) <= tol)
        throw ConditionViolated("invert_bispectrum: zhat(0) vanishes");

    std::vector<Complex> zhat(n);
    zhat[0] = z0;

    if (n > 1) {
        const double mag_sq = (B.at(0, 1) / z0).real();
        if (mag_sq < -tol * tol)
            throw NegativeMagnitude("invert_bispectrum: B(0,1)/zhat(0) is negative");
        const double mag = std::sqrt(std::max(mag_sq, 0.0));
        if (mag <= tol)
            throw ConditionViolated("invert_bispectrum: zhat(1) vanishes");
        zhat[1] = mag;   // provisional shift gauge: nonnegative real

        for (std::size_t k = 1; k + 1 < n; ++k) {
            zhat[k + 1] = std::conj(B.at(k, 1) / (zhat[k] * zhat[1]));
            if (std::abs(zhat[k + 1]) <= tol)
                throw ConditionViolated("invert_bispectrum: zhat(" +
                                        std::to_string(k + 1) + ") vanishes");
        }

        // The provisional gauge pins arg zhat(1) = 0, but only the n discrete
        // gauges arg zhat(1) in arg(true) + 2 pi Z / n produce a real signal.
        // The wrap-around coefficient exposes the defect: for a real preimage
        // zhat(n-1)/conj(zhat(1)) = exp(-i n psi) with psi the true phase of
        // zhat(1). Rotate by the matching n-th root to land on a real gauge.
        if (n > 2) {
            const Complex eta = zhat[n - 1] / std::conj(zhat[1]);
            const double theta = std::arg(std::conj(eta)) / static_cast<double>(n);
            const Complex rot{std::cos(theta), std::sin(theta)};
            Complex power{1.0, 0.0};
            for (std::size_t k = 1; k < n; ++k) {
                power *= rot;
                zhat[k] *= power;
            }
        }
    }

    Spectrum spec;
    spec.coeffs = std::move(zhat);
    const std::vector<Complex> z = inverse_dft(spec);

    InversionResult out;
    out.signal.reserve(n);
    for (const Complex& v : z) {
        out.signal.push_back(v.real());
        out.imag_residue = std::max(out.imag_residue, std::abs(v.imag()));
    }
    return out;
}

} // namespace ginv
