#pragma once

#include <complex>

#include "symred/phase_space.hpp"

namespace symred {

using CVec = Eigen::VectorXcd;

/// C^n stored in R^{2n} as (Re z, Im z).
CVec to_complex(const Vec& x);
Vec to_real(const CVec& z);

/// Frame (u₁ u₂ u₃) ∈ SO3 ↦ ξ = (u₁ − i u₂)/√2 in R⁶ storage.
Vec xi_from_frame(const Mat& frame);
/// Inverse of xi_from_frame on the null quadric.
Mat frame_from_xi(const Vec& x);

/// {0}: a point with the zero form and zero moment.
HamiltonianSpace point_space(const GroupId& group);

/// ℓS² ⊂ R³ with ω_x(v, w) = −⟨x, v×w⟩/ℓ² and Φ(x) = x.
HamiltonianSpace coadjoint_orbit_so3(double ell);

/// TS² = {(r, p) : |r| = 1, r·p = 0} with ω = ⟨δp, δ′r⟩ − ⟨δ′p, δr⟩ and Φ = r×p.
HamiltonianSpace tangent_sphere();

/// R² with ω = dx∧dy, rotated by SO2, Φ = (x² + y²)/2.
HamiltonianSpace plane_so2();

/// X̃₁ = {ξ ∈ C³ : ξ·ξ = 0, |ξ| = 1} with ϖ = Im Σ ξ̄ₖ dξₖ, circle e^{iθ}ξ and Φ = u₃.
PrequantumSpace prequantized_sphere();

/// {0̃}: the unit circle with ϖ = x dy − y dx and trivial action of `group`.
PrequantumSpace circle_prequantum(const GroupId& group);

/// TS² × circle with ϖ = ⟨p, dr⟩ + ϖ_circle, prequantizing tangent_sphere().
PrequantumSpace tangent_sphere_prequantum();

/// Uniformly random rotation matrix (exp of a wide Gaussian, reorthonormalized).
Mat random_rotation(Rng& rng);

}  // namespace symred
