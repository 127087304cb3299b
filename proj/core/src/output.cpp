#include "kinetic/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "kinetic/errors.hpp"
#include "kinetic/moments.hpp"

namespace kinetic {

namespace {

std::string fmt(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

void commit(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out.good()) fail(errc::io_error, "write failed for '" + path + "'");
}

struct NodeMoments {
  double rho = 0.0, ux = 0.0, uy = 0.0, uz = 0.0, T = 0.0, p = 0.0, mach = 0.0;
};

NodeMoments node_moments(const PhaseMesh& mesh, const DistributionField& f, int slot,
                         double gamma) {
  const MacroState ms = compute_moments(mesh.vel, f.row(slot));
  NodeMoments m;
  m.rho = ms.rho;
  m.ux = ms.u.x;
  m.uy = ms.u.y;
  m.uz = ms.u.z;
  m.T = ms.T;
  m.p = ms.rho * ms.T;
  m.mach = norm(ms.u) / std::sqrt(gamma * ms.T);
  return m;
}

}  // namespace

void write_moments_csv(const PhaseMesh& mesh, const DistributionField& f, double gamma,
                       const std::string& path) {
  std::ostringstream out;
  out << (mesh.grid.dim == 1 ? "x" : "x,y") << ",rho,ux,uy,uz,T,p,mach\n";
  for (int node = 0; node < mesh.grid.total(); ++node) {
    if (mesh.cls[static_cast<std::size_t>(node)] != NodeClass::interior) continue;
    const int slot = mesh.slot_of[static_cast<std::size_t>(node)];
    const Vec2 p = mesh.position(node);
    const NodeMoments m = node_moments(mesh, f, slot, gamma);
    out << fmt(p.x);
    if (mesh.grid.dim == 2) out << ',' << fmt(p.y);
    out << ',' << fmt(m.rho) << ',' << fmt(m.ux) << ',' << fmt(m.uy) << ',' << fmt(m.uz) << ','
        << fmt(m.T) << ',' << fmt(m.p) << ',' << fmt(m.mach) << '\n';
  }
  commit(path, out.str());
}

void write_field_vtk(const PhaseMesh& mesh, const DistributionField& f, double gamma,
                     const std::string& path) {
  const SpatialGrid& g = mesh.grid;
  const int n = g.total();

  std::vector<NodeMoments> m(static_cast<std::size_t>(n));
  std::vector<double> blank(static_cast<std::size_t>(n), 0.0);
  for (int node = 0; node < n; ++node) {
    if (mesh.cls[static_cast<std::size_t>(node)] != NodeClass::interior) continue;
    blank[static_cast<std::size_t>(node)] = 1.0;
    m[static_cast<std::size_t>(node)] =
        node_moments(mesh, f, mesh.slot_of[static_cast<std::size_t>(node)], gamma);
  }

  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\n";
  out << "kinetic solver moments\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << g.npts[0] << ' ' << g.npts[1] << " 1\n";
  out << "ORIGIN " << fmt(g.origin[0]) << ' ' << fmt(g.origin[1]) << " 0\n";
  out << "SPACING " << fmt(g.h[0]) << ' ' << fmt(g.h[1]) << " 1\n";
  out << "POINT_DATA " << n << "\n";

  // VTK orders points x-fastest.
  auto scalar = [&](const char* name, auto&& value) {
    out << "SCALARS " << name << " double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix)
        out << fmt(value(static_cast<std::size_t>(g.lin(ix, iy)))) << '\n';
  };
  scalar("blank", [&](std::size_t i) { return blank[i]; });
  scalar("rho", [&](std::size_t i) { return m[i].rho; });
  scalar("ux", [&](std::size_t i) { return m[i].ux; });
  scalar("uy", [&](std::size_t i) { return m[i].uy; });
  scalar("T", [&](std::size_t i) { return m[i].T; });
  scalar("p", [&](std::size_t i) { return m[i].p; });
  scalar("mach", [&](std::size_t i) { return m[i].mach; });
  commit(path, out.str());
}

}  // namespace kinetic
