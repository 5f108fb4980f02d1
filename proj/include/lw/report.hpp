#pragma once

// The desk-scale verification suite: builds a surface from a config, runs the
// checks appropriate to its family, and produces a machine-readable report.
// Reports are deterministic: the same config yields byte-identical output.

#include <string>
#include <vector>

#include "lw/catalog.hpp"
#include "lw/coeffs.hpp"
#include "lw/surface.hpp"

namespace lw {

struct RunConfig {
    SurfaceSpec spec;
    WeingartenCoeffs wc{1, 0, 0};
    bool wc_set = false;  // false -> the family's natural coefficients
    int nu = 20, nv = 20;
    double tol = 1e-10;  // causal classification band
    ScanOptions scan;
    std::string out_path;      // empty -> caller prints
    std::string format = "json";
};

struct CheckRecord {
    std::string name;
    bool pass;
    double measured;
    double threshold;
    std::string note;
};

struct VerificationReport {
    std::string family;
    WeingartenCoeffs wc{1, 0, 0};
    std::vector<CheckRecord> checks;
    bool overall = true;

    // environment block
    double tol = 1e-10;
    double ode_rtol = 1e-10, ode_atol = 1e-12;
    int dft_samples = 64;
    int max_harmonic = 16, max_monomial = 12;
    std::string w_power = "single";
    std::string orientation = "canonical (u,v) order of the catalog parametrization";

    std::string to_json() const;
};

// Parses the JSON-config text into a RunConfig (missing keys keep defaults).
RunConfig parse_config(const std::string& json_text);

VerificationReport run_suite(const RunConfig& config);

}  // namespace lw
