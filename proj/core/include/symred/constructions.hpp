#pragma once

#include "symred/phase_space.hpp"

namespace symred {

/// X⁻ = (X, −ω, −Φ).
HamiltonianSpace dual(const HamiltonianSpace& space);

/// X₁ × X₂ under the diagonal action of a common group; forms and moments add.
HamiltonianSpace product(const HamiltonianSpace& a, const HamiltonianSpace& b);

/// Action pulled back along hom: source → group; moment algebra_mapᵀ Φ.
/// With a projection G×H → G this lifts a G-space to G×H.
HamiltonianSpace restrict_along(const HamiltonianSpace& space, const GroupHom& hom);

/// X₁⁻ × X₂ with diagonal action and moment Φ₂ − Φ₁.
HamiltonianSpace hom_data(const HamiltonianSpace& x1, const HamiltonianSpace& x2);

/// Right-trivialized T*G = {(q, μ)} ⊂ G × 𝔤* as an exact G×H-space:
/// (g, h)(q, μ) = (g q ι(h)⁻¹, Ad*_g μ), ϖ = ⟨μ, δq·q⁻¹⟩,
/// moments (μ, −ι*(Ad*_{q⁻¹} μ)).
PrequantumSpace cotangent_group_exact(const GroupHom& iota);

/// (T*G, dϖ) as a Hamiltonian G×H-space.
HamiltonianSpace cotangent_group(const GroupHom& iota);

/// Coordinate layout of a point (x, q, μ, y) of an induction space M.
struct InductionLayout {
  int x_dim = 0;
  int q_dim = 0;   // ambient dimension of G
  int mu_dim = 0;  // dim G
  int y_dim = 0;

  int q_offset() const { return x_dim; }
  int mu_offset() const { return x_dim + q_dim; }
  int y_offset() const { return x_dim + q_dim + mu_dim; }
  int m_dim() const { return x_dim + q_dim + mu_dim + y_dim; }
  int n_dim() const { return x_dim + y_dim; }

  Vec pack_m(const Vec& x, const GroupElement& q, const Vec& mu, const Vec& y) const;
  Vec x(const Vec& m) const { return m.head(x_dim); }
  Vec q_flat(const Vec& m) const { return m.segment(q_offset(), q_dim); }
  Vec mu(const Vec& m) const { return m.segment(mu_offset(), mu_dim); }
  Vec y(const Vec& m) const { return m.tail(y_dim); }
  Vec pack_n(const Vec& x, const Vec& y) const;
};

/// M = X⁻ × T*G × Y over G×H with moments (φ_M, ψ_M), and N = X⁻ × Y over H.
struct InductionData {
  HamiltonianSpace X;
  HamiltonianSpace Y;
  GroupHom iota;
  HamiltonianSpace M;
  HamiltonianSpace N;
  InductionLayout layout;
};

InductionData induction_data(const HamiltonianSpace& x, const HamiltonianSpace& y, const GroupHom& iota);

}  // namespace symred
