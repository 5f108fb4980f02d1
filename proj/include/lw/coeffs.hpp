#pragma once

// Extraction of the harmonic coefficients A_j, B_j (circular and hyperbolic
// foliations) or monomial coefficients A_j (parabolic foliations) of the
// rationalized Weingarten residual along each circle, plus evaluators for the
// printed closed-form coefficient formulas used as oracles.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lw/surface.hpp"

namespace lw {

enum class SpectrumMode { Harmonic, Monomial };

struct CoefficientSpectrum {
    SpectrumMode mode = SpectrumMode::Harmonic;
    int max_index = 0;
    std::vector<double> A;  // A[0..J]
    std::vector<double> B;  // B[1..J] (harmonic mode; B[0] stays 0)
    double u = 0;
    double scale = 1;  // normalization for "vanishing" judgments

    double normalized_max() const;
};

// Uniform sampling over one period and discrete Fourier projection; exact for
// trigonometric polynomials of degree <= J when J <= N/2 - 1.
CoefficientSpectrum extract_harmonics(const std::function<double(double)>& residual_at_u, int J,
                                      int N = 64);

// Least-squares monomial fit on J + 5 Chebyshev nodes of [vmin, vmax]
// (internally scaled to [-1, 1]); coefficients are reported in the original
// variable. Condition estimates above 1e12 are rejected.
CoefficientSpectrum extract_poly_coeffs(const std::function<double(double)>& residual_at_u, int J,
                                        double vmin = -1.0, double vmax = 1.0);

// Which function of v gets expanded. Auto picks the linear witness for the
// pure cases (P for b = c = 0, Q for a = c = 0) and the full rationalized
// residual otherwise.
enum class ScanChannel { Auto, MeanBracket, GaussBracket, Rationalized };

struct ScanOptions {
    int J = 16;        // harmonic index ceiling
    int J_mono = 12;   // monomial degree ceiling (parabolic foliations)
    int samples = 64;  // DFT sample count
    int nu = 12;       // u-grid size for scans
    double mono_vmin = -1.0, mono_vmax = 1.0;
    WPower wpower = WPower::Single;
    ScanChannel channel = ScanChannel::Auto;
};

struct ScanResult {
    std::vector<CoefficientSpectrum> spectra;
    double summary = 0;  // max over u and j of |coefficient| / scale
    ScanChannel channel_used = ScanChannel::Rationalized;
};

// Spectrum of the residual at one fixed u for the surface's foliation basis.
CoefficientSpectrum scan_at_u(const Surface& s, const WeingartenCoeffs& wc, double u,
                              const ScanOptions& opt = {});

// Spectra on a uniform u-grid plus the normalized summary.
ScanResult coefficient_scan(const Surface& s, const WeingartenCoeffs& wc,
                            const ScanOptions& opt = {});

// Printed coefficient formulas, evaluated verbatim. Formulas the source text
// likely misprints are still evaluated as printed; comparisons against the
// extraction document which variant holds.
enum class FormulaId {
    S311_A4,
    S311_A2,
    S311_B1,
    S312_A8,
    S312_B8,
    S321_A4,
    S321_A2,
    S321_A1,
    S322_A8,
    S322_B8,
    S331_A6,
    S331_A3,
    S332_B8,
    S332_B3,
    S411_B8,
    S411_A8_beta0,
    S412_A8_x1,
    S412_B8_x2,
};

const char* to_string(FormulaId id);

// Inputs are named doubles: r, rp, rpp, fp, fpp, gp, gpp, a, b, c, lambda,
// mu, kappa, beta, gamma, u as each formula requires. A missing symbol raises
// an error naming it.
double paper_formula(FormulaId id, const std::map<std::string, double>& in);

}  // namespace lw
