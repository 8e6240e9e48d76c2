#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pbg/classical/classical_fields.hpp"
#include "pbg/core/error.hpp"

namespace pbg {

ClassicalFieldProfile::ClassicalFieldProfile(Source source, double length, Evaluator evaluator,
                                             std::vector<double> grid)
    : source_(source),
      length_(length),
      evaluator_(std::move(evaluator)),
      grid_(std::make_shared<const std::vector<double>>(std::move(grid))) {
  if (!(length_ > 0)) throw InvalidInput("profile length must be positive");
  if (grid_->size() < 2) throw InvalidInput("profile grid needs at least two nodes");
}

double ClassicalFieldProfile::boundary_residual() const {
  const FieldVector end = evaluator_(length_);
  return std::max({std::abs(end[index(ModeId::sB)]), std::abs(end[index(ModeId::iB)]),
                   std::abs(end[index(ModeId::pB)])});
}

double photon_flux(const FieldVector& a) {
  return std::norm(a[0]) + std::norm(a[1]) + 2.0 * std::norm(a[2]) - std::norm(a[3]) -
         std::norm(a[4]) - 2.0 * std::norm(a[5]);
}

double conservation_residual(const ClassicalFieldProfile& profile) {
  const auto& grid = profile.grid();
  const double n0 = photon_flux(profile(grid.front()));
  const double scale = std::max(1.0, std::abs(n0));
  double worst = 0.0;
  for (double z : grid) worst = std::max(worst, std::abs(photon_flux(profile(z)) - n0));
  return worst / scale;
}

void write_profile_csv(std::ostream& out, const ClassicalFieldProfile& profile) {
  out << "z";
  for (ModeId m : kAllModes) out << ",re_" << to_string(m) << ",im_" << to_string(m);
  out << '\n';
  char buf[64];
  for (double z : profile.grid()) {
    std::snprintf(buf, sizeof buf, "%.12g", z);
    out << buf;
    const FieldVector a = profile(z);
    for (const cplx& v : a) {
      std::snprintf(buf, sizeof buf, ",%.15g,%.15g", v.real(), v.imag());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace pbg
