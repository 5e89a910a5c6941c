#pragma once

#include <map>

#include "symred/types.hpp"

namespace symred {

/// Weights of the rotation generator about e₃ on the harmonic part of
/// Sym^ℓ(C³), with their multiplicities.
struct WeightProfile {
  int ell = 0;
  std::map<int, int> multiplicities;

  int dimension() const;
  int count(int m) const;
};

/// Generator of rotations about axis k acting on Sym^ℓ(C³) in the orthonormal
/// monomial basis x^α/√α! (real antisymmetric).
Mat symmetric_power_generator(int ell, int axis);

/// Computed from eigenvalues: the Casimir eigenspace ℓ(ℓ+1) of Sym^ℓ(C³),
/// then i·J₃ on it, rounded to integers at 1e-8. Throws ConfigError for
/// ℓ < 0 and RankAmbiguity for non-integral weights.
WeightProfile weight_profile(int ell);

int weight_multiplicity(int ell, int m);

/// dim Hom_H(V_ℓ, C_{m₀}) for H = SO2 acting on C by the character m₀.
int frobenius_dimension(int ell, int m0 = 0);

}  // namespace symred
