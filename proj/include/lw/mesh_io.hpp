#pragma once

// Grid exporters: OBJ (vertices + triangulated quads) and CSV (per-node
// geometry columns). Both write deterministic, byte-stable output.

#include <string>

#include "lw/surface.hpp"

namespace lw {

// OBJ: one "v x1 x2 x3" line per node (row-major in u), then
// 2 (nu-1)(nv-1) "f i j k" lines. Coordinates are written verbatim.
void export_obj(const Surface& s, int nu, int nv, const std::string& path);

// CSV: header u,v,x1,x2,x3,E,F,G,W,H,K,residual then one row per node
// ('.' decimal, ',' separator, LF endings). Degenerate nodes get nan in the
// curvature columns.
void export_csv(const Surface& s, int nu, int nv, const WeingartenCoeffs& wc,
                const std::string& path);

}  // namespace lw
