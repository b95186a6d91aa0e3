#pragma once

#include <string>
#include <vector>

namespace hyperpara {

/// Double-precision verification of the su(m,m−1) Killing entry, for m where the
/// exact quadratic tower grows too large. Same basis, structure and metric as the
/// exact entry; every identity is checked to an absolute tolerance.
struct FloatKillingReport {
  int m = 0;
  std::size_t dim = 0;
  double tolerance = 1e-12;
  bool paraquaternionic = false;
  bool integrable = false;
  bool compatible = false;
  bool biinvariant = false;
  bool hpkt = false;             // d₁F₁ = d₂F₂ = d₃F₃
  bool torsion_matches = false;  // d₁F₁ = −B([·,·],·)
  bool strong = false;           // dT = 0
  bool flat = false;             // HPKT connection vanishes
  bool einstein = false;         // Ric = c·B
  double einstein_constant = 0;
  double max_residual = 0;  // largest residual among the checks that passed
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// 2 ≤ m ≤ 6; throws UnsupportedParameter otherwise.
FloatKillingReport float_killing(int m, double tolerance = 1e-12);

}  // namespace hyperpara
