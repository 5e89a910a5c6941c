#pragma once

#include <array>

#include "symred/constructions.hpp"

namespace symred {

/// (X̃, −ϖ) with the reversed circle and conjugated charts; Φ ↦ −Φ.
PrequantumSpace dual(const PrequantumSpace& space);

/// Plain product under the diagonal action; 1-forms and moments add. The
/// result carries no circle action.
PrequantumSpace product(const PrequantumSpace& a, const PrequantumSpace& b);

PrequantumSpace restrict_along(const PrequantumSpace& space, const GroupHom& hom);

enum class ProductSign { Plus, Minus };

/// X̃₁ ⊠ X̃₂ (Plus) or X̃₁⁻ ⊠ X̃₂ (Minus). Points are pairs gauge-fixed so the
/// chart coordinate `chart` of the first factor is real positive; 1-form
/// ϖ₂ ± ϖ₁, moment Φ₂ ± Φ₁, circle acting on the second factor.
PrequantumSpace prequantum_product(const PrequantumSpace& s1, const PrequantumSpace& s2,
                                   ProductSign sign, int chart = 0);

/// Gauge-fixed representative of a pair under the antidiagonal circle.
/// Throws GaugeChartMiss when |chart coordinate| < 1e-3.
Vec gauge_fix(const PrequantumSpace& s1, const PrequantumSpace& s2, ProductSign sign, int chart,
              const Vec& x1, const Vec& x2);

inline constexpr double kGaugeChartThreshold = 1e-3;

/// Monomial multi-indices of degree ℓ in three variables, in a fixed order.
std::vector<std::array<int, 3>> monomials(int ell);

/// c_α = √(ℓ!/α!) ξ^α for ξ in R⁶ storage; result in R^{2N} storage.
Vec power_map(const Vec& xi, int ell);

/// A preimage of c under power_map, defined up to an ℓ-th root of unity.
Vec power_preimage(const Vec& c, int ell);

/// Matrix of Sym^ℓ(g) in the orthonormal monomial basis (real for real g).
Mat symmetric_power_matrix(const Mat& g, int ell);

/// Image of X̃₁ under ξ ↦ ξ^ℓ with the pushed-forward 1-form, moment ℓ·u₃.
PrequantumSpace fusion_power(const PrequantumSpace& sphere, int ell);

/// (R × X̃, d(e^s ϖ), e^s Φ).
HamiltonianSpace symplectize(const PrequantumSpace& space);

/// Un-quotiented prequantum induction spaces M̌ = X̃⁻ × T*G × Ỹ over G×H and
/// Ň = X̃⁻ × Ỹ over H.
struct PrequantumInductionData {
  PrequantumSpace X;
  PrequantumSpace Y;
  GroupHom iota;
  PrequantumSpace M;
  PrequantumSpace N;
  InductionLayout layout;
};

PrequantumInductionData prequantum_induction_data(const PrequantumSpace& x, const PrequantumSpace& y,
                                                  const GroupHom& iota);

}  // namespace symred
