#include "casimir/materials.hpp"

#include <cmath>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

PermittivityModel PermittivityModel::vacuum() { return {}; }

PermittivityModel PermittivityModel::constant(double eps) {
  PermittivityModel m;
  m.kind = MaterialKind::Constant;
  m.eps_const = eps;
  m.validate();
  return m;
}

PermittivityModel PermittivityModel::plasma(double omega_p) {
  PermittivityModel m;
  m.kind = MaterialKind::Plasma;
  m.omega_p = omega_p;
  m.validate();
  return m;
}

PermittivityModel PermittivityModel::drude(double omega_p, double gamma0, int exponent, double t_ref) {
  PermittivityModel m;
  m.kind = MaterialKind::Drude;
  m.omega_p = omega_p;
  m.gamma0 = gamma0;
  m.damping_exponent = exponent;
  m.damping_ref_temperature = t_ref;
  m.validate();
  return m;
}

void PermittivityModel::validate() const {
  switch (kind) {
    case MaterialKind::Vacuum:
      return;
    case MaterialKind::Constant:
      if (!(eps_const >= 1.0)) throw InvalidArgument("constant permittivity must be >= 1");
      return;
    case MaterialKind::Drude:
      if (!(gamma0 >= 0.0)) throw InvalidArgument("Drude gamma0 must be >= 0");
      if (damping_exponent < 0) throw InvalidArgument("damping exponent must be >= 0");
      if (!(damping_ref_temperature > 0.0))
        throw InvalidArgument("damping reference temperature must be > 0");
      [[fallthrough]];
    case MaterialKind::Plasma:
      if (!(omega_p > 0.0)) throw InvalidArgument("plasma frequency must be > 0");
      return;
  }
}

double PermittivityModel::gamma(double T) const {
  if (T < 0.0) throw InvalidArgument("temperature must be >= 0");
  if (kind != MaterialKind::Drude) return 0.0;
  if (damping_exponent == 0) return gamma0;
  return gamma0 * std::pow(T / damping_ref_temperature, damping_exponent);
}

double PermittivityModel::plasma_wavelength() const {
  if (!(omega_p > 0.0)) throw InvalidArgument("model has no plasma frequency");
  return 2.0 * pi * phys::c / omega_p;
}

double PermittivityModel::resistivity(double T) const {
  if (kind != MaterialKind::Drude) throw InvalidArgument("resistivity needs a Drude model");
  return gamma(T) / (phys::eps0 * omega_p * omega_p);
}

bool PermittivityModel::is_lossless(double T) const {
  return kind != MaterialKind::Drude || gamma(T) == 0.0;
}

std::string PermittivityModel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case MaterialKind::Vacuum: os << "vacuum"; break;
    case MaterialKind::Constant: os << "constant(eps=" << eps_const << ")"; break;
    case MaterialKind::Plasma: os << "plasma(omega_p=" << omega_p << ")"; break;
    case MaterialKind::Drude:
      os << "drude(omega_p=" << omega_p << ", gamma0=" << gamma0 << ", m=" << damping_exponent
         << ", T_ref=" << damping_ref_temperature << ")";
      break;
  }
  return os.str();
}

cplx eval_permittivity(const PermittivityModel& model, cplx zeta, double T) {
  if (T < 0.0) throw InvalidArgument("temperature must be >= 0");
  switch (model.kind) {
    case MaterialKind::Vacuum:
      return 1.0;
    case MaterialKind::Constant:
      return model.eps_const;
    case MaterialKind::Plasma:
      if (zeta == 0.0) throw SingularFrequency("plasma permittivity is singular at zeta = 0");
      return 1.0 - model.omega_p * model.omega_p / (zeta * zeta);
    case MaterialKind::Drude: {
      const double g = model.gamma(T);
      const cplx shifted = zeta + I * g;
      if (zeta == 0.0 || shifted == 0.0)
        throw SingularFrequency("Drude permittivity is singular at zeta = 0 and zeta = -i gamma");
      return 1.0 - model.omega_p * model.omega_p / (zeta * shifted);
    }
  }
  return 1.0;
}

double eval_at_imaginary_frequency(const PermittivityModel& model, double xi, double T) {
  if (!(xi > 0.0)) throw InvalidArgument("imaginary frequency xi must be > 0");
  return eps_xi2_imaginary(model, xi, T) / (xi * xi);
}

double eps_xi2_imaginary(const PermittivityModel& model, double xi, double T) {
  if (xi < 0.0) throw InvalidArgument("imaginary frequency xi must be >= 0");
  const double wp2 = model.omega_p * model.omega_p;
  switch (model.kind) {
    case MaterialKind::Vacuum:
      return xi * xi;
    case MaterialKind::Constant:
      return model.eps_const * xi * xi;
    case MaterialKind::Plasma:
      return xi * xi + wp2;
    case MaterialKind::Drude: {
      const double g = model.gamma(T);
      if (g == 0.0) return xi * xi + wp2;
      return xi * xi + wp2 * xi / (xi + g);
    }
  }
  return xi * xi;
}

}  // namespace casimir
