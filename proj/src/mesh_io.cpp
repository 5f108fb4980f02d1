#include "lw/mesh_io.hpp"

#include <cstdio>
#include <string>

namespace lw {

namespace {

struct File {
    std::FILE* f;
    explicit File(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
        if (!f) throw Error("export_mesh: cannot open '" + path + "' for writing");
    }
    ~File() {
        if (f) std::fclose(f);
    }
    File(const File&) = delete;
    File& operator=(const File&) = delete;
};

void put_num(std::FILE* f, double x, char sep) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::fputs(buf, f);
    if (sep) std::fputc(sep, f);
}

void grid_point(const Surface& s, int nu, int nv, int i, int k, double& u, double& v) {
    u = s.domain.umin + (s.domain.umax - s.domain.umin) * i / (nu - 1);
    v = s.domain.vmin + (s.domain.vmax - s.domain.vmin) * k / (nv - 1);
}

}  // namespace

void export_obj(const Surface& s, int nu, int nv, const std::string& path) {
    if (nu < 2 || nv < 2) throw PreconditionError("export_obj: grid must be at least 2x2");
    File out(path);
    for (int i = 0; i < nu; ++i)
        for (int k = 0; k < nv; ++k) {
            double u, v;
            grid_point(s, nu, nv, i, k, u, v);
            const MVec3 x = s.eval(u, v).pos();
            std::fputs("v ", out.f);
            put_num(out.f, x.x1, ' ');
            put_num(out.f, x.x2, ' ');
            put_num(out.f, x.x3, '\n');
        }
    for (int i = 0; i + 1 < nu; ++i)
        for (int k = 0; k + 1 < nv; ++k) {
            const int a = i * nv + k + 1;  // OBJ indices are 1-based
            const int b = a + 1;
            const int c = a + nv + 1;
            const int d = a + nv;
            std::fprintf(out.f, "f %d %d %d\n", a, b, c);
            std::fprintf(out.f, "f %d %d %d\n", a, c, d);
        }
}

void export_csv(const Surface& s, int nu, int nv, const WeingartenCoeffs& wc,
                const std::string& path) {
    if (nu < 2 || nv < 2) throw PreconditionError("export_csv: grid must be at least 2x2");
    File out(path);
    std::fputs("u,v,x1,x2,x3,E,F,G,W,H,K,residual\n", out.f);
    for (int i = 0; i < nu; ++i)
        for (int k = 0; k < nv; ++k) {
            double u, v;
            grid_point(s, nu, nv, i, k, u, v);
            const VecJet2 j = s.eval(u, v);
            const MVec3 x = j.pos();
            const MVec3 xu = j.xu(), xv = j.xv();
            const double E = minkowski_dot(xu, xu);
            const double F = minkowski_dot(xu, xv);
            const double G = minkowski_dot(xv, xv);
            const double W = E * G - F * F;
            double H = std::nan(""), K = std::nan(""), res = std::nan("");
            try {
                const CurvaturePair cp = curvatures(j);
                H = cp.H;
                K = cp.K;
                res = weingarten_residual(cp, wc);
            } catch (const DegeneratePointError&) {
            }
            put_num(out.f, u, ',');
            put_num(out.f, v, ',');
            put_num(out.f, x.x1, ',');
            put_num(out.f, x.x2, ',');
            put_num(out.f, x.x3, ',');
            put_num(out.f, E, ',');
            put_num(out.f, F, ',');
            put_num(out.f, G, ',');
            put_num(out.f, W, ',');
            put_num(out.f, H, ',');
            put_num(out.f, K, ',');
            put_num(out.f, res, '\n');
        }
}

}  // namespace lw
