#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ginv/errors.hpp"

namespace ginv {

using Complex = std::complex<double>;

/// Discrete Fourier coefficients of a real signal over Z_n:
/// coeffs[k] = sum_g z[g] * exp(2 pi i k g / n). Direct O(n^2) evaluation;
/// n stays at desk scale here.
struct Spectrum {
    std::vector<Complex> coeffs;

    std::size_t size() const { return coeffs.size(); }
};

Spectrum dft(std::span<const double> z);

/// Inverse transform; exact up to rounding, imaginary parts included so
/// callers can check the residue.
std::vector<Complex> inverse_dft(const Spectrum& spec);

/// A(g, h) = sum_sigma z[sigma] z[sigma+g] z[sigma+h], indices mod n.
/// Plain ascending accumulation, matching multi_correlation bit for bit on
/// the regular space of Z_n.
std::vector<std::vector<double>> triple_correlation(std::span<const double> z);

/// Fourier side of the triple correlation. Built two ways — the 2-D
/// transform of the correlation table and the direct factorization
/// zhat(k1) zhat(k2) conj(zhat(k1+k2)) — which must agree; disagreement
/// beyond tolerance throws FactorizationMismatch.
struct Bispectrum {
    std::size_t n = 0;
    std::vector<Complex> values;   // row-major n x n

    const Complex& at(std::size_t k1, std::size_t k2) const {
        return values[k1 * n + k2];
    }
};

Bispectrum bispectrum(std::span<const double> z);

/// Build the factorized bispectrum of an explicit spectrum (used by tests
/// and by the CLI invert mode when reading external tables).
Bispectrum bispectrum_from_spectrum(const Spectrum& spec);

struct InversionResult {
    std::vector<double> signal;
    double imag_residue = 0.0;   // largest imaginary part discarded
};

/// Recover a real signal from its bispectrum, up to cyclic shift:
///   zhat(0)   = real cube root of B(0,0)
///   |zhat(1)| = sqrt(B(0,1) / zhat(0)), phase initially fixed at zero
///   zhat(k+1) = conj( B(k,1) / (zhat(k) zhat(1)) )
/// then the discrete shift gauge consistent with a real signal is applied
/// and the spectrum inverted. Requires every |zhat(k)| above tolerance
/// (throws ConditionViolated), and B(0,1)/zhat(0) to be nonnegative
/// (throws NegativeMagnitude).
InversionResult invert_bispectrum(const Bispectrum& B, double tol_factor = 1e-8);

} // namespace ginv
