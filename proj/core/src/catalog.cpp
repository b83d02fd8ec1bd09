#include "opcone/catalog.hpp"

namespace opcone::catalog {

namespace {

HermitianMatrix real2(double a00, double a01, double a11) {
  HermitianMatrix m(2);
  m.set(0, 0, a00);
  m.set(1, 0, a01);
  m.set(1, 1, a11);
  return m;
}

HermitianMatrix diag5(double x0, double x1, double x2, double x3, double x4) {
  return HermitianMatrix::diagonal(std::vector<double>{x0, x1, x2, x3, x4});
}

HermitianMatrix combo(double ce, double ca, double cb) {
  HermitianMatrix m = ce * five_point_e();
  m.add_scaled(ca, five_point_a());
  m.add_scaled(cb, five_point_b());
  return m;
}

}  // namespace

HermitianMatrix lattice_a() { return real2(1.0, 0.0, 0.0); }
HermitianMatrix lattice_b() { return real2(1.0, 1.0, 1.0); }
HermitianMatrix lattice_c() { return real2(1.1, 0.5, 3.6); }
HermitianMatrix lattice_d() { return real2(3.6, 0.5, 1.1); }

InterpolationInstance lattice_instance(double delta) {
  return InterpolationInstance{full_matrix_algebra(2), 1, {lattice_a(), lattice_b()}, {lattice_c(), lattice_d()},
                               delta};
}

HermitianMatrix five_point_e() { return HermitianMatrix::identity(5); }
HermitianMatrix five_point_a(double eps) { return diag5(0.0, eps, 0.5, 1.0 - eps, 1.0); }
HermitianMatrix five_point_b() { return diag5(1.0, 0.0, -0.5, 0.0, 1.0); }
HermitianMatrix five_point_c(double eps) { return diag5(0.0, eps, 0.5, eps, 0.0); }

OperatorSubsystem five_point_system(double eps) {
  return make_subsystem({five_point_e(), five_point_a(eps), five_point_b()});
}

TensorElement five_point_element(double eps) {
  return make_tensor_element(five_point_system(eps), QuotientSystem::jkm(2, 3), 1,
                             {five_point_e(), five_point_a(eps), five_point_b(), five_point_b()});
}

InterpolationInstance five_point_instance(double eps, double delta) {
  const HermitianMatrix b = five_point_b();
  return InterpolationInstance{five_point_system(eps), 1, {-b, -b, HermitianMatrix(5)},
                               {five_point_e(), five_point_a(eps)}, delta};
}

TensorElement separating_element() {
  return make_tensor_element(five_point_system(), QuotientSystem::jkm(2, 3), 1,
                             {combo(0.6, 0.1, 0.7), combo(1.3, -0.7, 0.0), combo(-0.6, 1.1, -0.5),
                              combo(0.2, -0.7, 0.0)});
}

InterpolationInstance separating_instance(double delta) {
  const TensorElement u = separating_element();
  return InterpolationInstance{u.system, 1, {-u.coeffs[2], -u.coeffs[3], HermitianMatrix(5)},
                               {u.coeffs[0], u.coeffs[1]}, delta};
}

std::vector<std::pair<std::string, InterpolationInstance>> instances_of_record(const OperatorSubsystem& system,
                                                                               std::size_t k, std::size_t m,
                                                                               std::size_t level, double delta) {
  std::vector<std::pair<std::string, InterpolationInstance>> out;
  const OperatorSubsystem five = five_point_system();
  if (k != 2 || m != 3 || level != 1 || system.ambient_dim() != five.ambient_dim() || system.dim() != five.dim())
    return out;
  for (const auto& b : five.basis())
    if (!system.contains(b)) return out;
  InterpolationInstance element = five_point_instance(0.1, delta);
  element.system = system;
  InterpolationInstance separating = separating_instance(delta);
  separating.system = system;
  out.emplace_back("five_point", std::move(element));
  out.emplace_back("separating", std::move(separating));
  return out;
}

}  // namespace opcone::catalog
