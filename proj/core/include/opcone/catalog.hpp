#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opcone/quotient.hpp"
#include "opcone/riesz.hpp"
#include "opcone/subsystem.hpp"
#include "opcone/tensor_cone.hpp"

/// Named instances used by tests, benchmarks and the reproduce command.
namespace opcone::catalog {

/// 2x2 real matrices with a, b < c, d but no x in M_2 with a, b < x < c, d.
HermitianMatrix lattice_a();
HermitianMatrix lattice_b();
HermitianMatrix lattice_c();
HermitianMatrix lattice_d();
/// lower {a, b}, upper {c, d} over M_2.
InterpolationInstance lattice_instance(double delta = 1e-6);

/// span{e, a, b} in C^5 with e = 1, a = (0, eps, 1/2, 1-eps, 1), b = (1, 0, -1/2, 0, 1).
OperatorSubsystem five_point_system(double eps = 0.1);
HermitianMatrix five_point_e();
HermitianMatrix five_point_a(double eps = 0.1);
HermitianMatrix five_point_b();
/// (0, eps, 1/2, eps, 0), a separator in the full diagonal algebra.
HermitianMatrix five_point_c(double eps = 0.1);
/// e (x) e_1 + a (x) e_2 + b (x) e_3 + b (x) e_4 in five_point_system (x) C^5/J_{2,3}.
TensorElement five_point_element(double eps = 0.1);
/// The same element as an interpolation problem: lower {-b, -b, 0}, upper {e, a}.
InterpolationInstance five_point_instance(double eps = 0.1, double delta = 1e-6);

/// An element of five_point_system (x) C^5/J_{2,3} (eps = 1/10) that is strictly positive
/// for the minimal cone but not positive for the maximal one:
/// s1 = 0.6e + 0.1a + 0.7b, s2 = 1.3e - 0.7a, s3 = -0.6e + 1.1a - 0.5b, s4 = 0.2e - 0.7a.
TensorElement separating_element();
/// separating_element as an interpolation problem: lower {-s3, -s4, 0}, upper {s1, s2}.
/// Ambient-feasible, subsystem-infeasible.
InterpolationInstance separating_instance(double delta = 1e-6);

/// Instances injected into TR(k, m) runs: for (k, m, level) = (2, 3, 1) over a system
/// spanning the same space as five_point_system(), five_point_instance() and
/// separating_instance(). Empty otherwise.
std::vector<std::pair<std::string, InterpolationInstance>> instances_of_record(const OperatorSubsystem& system,
                                                                               std::size_t k, std::size_t m,
                                                                               std::size_t level, double delta);

}  // namespace opcone::catalog
