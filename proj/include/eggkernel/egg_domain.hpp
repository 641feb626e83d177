#pragma once

#include <complex>
#include <vector>

namespace eggkernel {

/**
 * The domain E_m = { z in C^n : sum_j |z_j|^{2 m_j} < 1 } for a vector of
 * positive integer exponents m. m_j = 1 directions are round (ball-like);
 * m_j >= 2 directions flatten the boundary where z_j = 0.
 */
class EggDomain {
  public:
    explicit EggDomain(std::vector<int> exponents);

    int n() const { return static_cast<int>(m_.size()); }
    const std::vector<int>& m() const { return m_; }
    int m_at(int j) const { return m_[static_cast<size_t>(j)]; }

    /** sum_j 1/m_j, the exponent bookkeeping quantity used throughout. */
    double inv_m_sum() const;

    /** Least common multiple of the m_j (small by validation). */
    int m_lcm() const;

    /**
     * r(z) = 1 - sum_j |z_j|^{2 m_j}. Positive inside the domain, zero on
     * the boundary, negative outside.
     */
    double defining_r(const std::vector<std::complex<double>>& z) const;

  private:
    std::vector<int> m_;
};

/**
 * Index partition at a boundary point z0. All indices are 0-based:
 *   I: directions with m_j = 1,
 *   P: directions with z0_j = 0 and m_j >= 2 (the degenerate ones),
 *   Q: the complement of P, i.e. directions with z0_j != 0, plus all of I.
 * The point is strictly pseudoconvex exactly when P is empty.
 */
struct BoundaryClassification {
    std::vector<std::complex<double>> z0;
    std::vector<int> I;
    std::vector<int> P;
    std::vector<int> Q;
    int degenerate_rank = 0;
    bool weakly_pseudoconvex = false;
};

/**
 * Classify a boundary point. Throws not_on_boundary when
 * |1 - sum |z_j|^{2 m_j}| > 1e-10 (the message carries the defect), and
 * invalid_argument on dimension mismatch or non-finite input. Components
 * with both |Re| and |Im| below 1e-300 count as zero; anything larger is a
 * genuine nonzero direction.
 */
BoundaryClassification classify(const EggDomain& domain, const std::vector<std::complex<double>>& z0);

/**
 * Polar coordinates adapted to a classification: one angular coordinate t_j
 * per degenerate direction (listed in P order) and the boundary distance r.
 */
struct PolarPoint {
    std::vector<double> t;
    double r = 0.0;
};

/**
 * Map an interior point to (t, r) relative to cls:
 *   A   = 1 - sum_{j in Q} |z_j|^{2 m_j},
 *   t_j = (|z_j|^{2 m_j} / A)^{1/(2 m_j)}  for j in P,
 *   r   = 1 - sum_j |z_j|^{2 m_j}.
 * Throws degenerate_denominator when A <= 1e-14 (the point carries almost
 * all of its mass in the degenerate directions and the chart breaks down)
 * and invalid_argument when z is not an interior point.
 */
PolarPoint to_polar(const EggDomain& domain, const BoundaryClassification& cls,
                    const std::vector<std::complex<double>>& z);

/**
 * Reconstruct a representative interior point from (t, r): the P components
 * get modulus t_j * A^{1/(2 m_j)} with A = r / (1 - sum_P t_j^{2 m_j}) and
 * phase 0; the Q components shrink z0 radially (phases preserved) until the
 * defining sum closes. Inverse of to_polar on its image. Throws
 * degenerate_denominator when sum_P t_j^{2 m_j} >= 1 - 1e-14 and
 * invalid_argument when r is not in (0, A_max) or t has a negative entry.
 */
std::vector<std::complex<double>> from_polar(const EggDomain& domain,
                                             const BoundaryClassification& cls,
                                             const PolarPoint& polar);

/** Shape of the approach region U_alpha in the (t, r) chart. */
enum class UalphaVariant {
    power,  ///< sum_{j in P} t_j^{2 m_j} < 1/alpha
    sum,    ///< sum_{j in P} t_j < 1/alpha
};

/**
 * Whether the interior point z lies in U_alpha relative to cls. Requires
 * alpha >= 1. Points that are not interior, or whose polar chart degenerates,
 * are simply outside the region (returns false rather than throwing).
 */
bool in_admissible_region(const EggDomain& domain, const BoundaryClassification& cls,
                          const std::vector<std::complex<double>>& z, double alpha,
                          UalphaVariant variant = UalphaVariant::power);

/**
 * Classify a point of the parameter simplex boundary
 * { t >= 0 : sum_j t_j^{2 m_j} = 1 } with the same I/P/Q semantics as
 * classify (z0 holds the real t entries). Used by the induction step, where
 * the previous level's angular coordinates become the next level's boundary
 * point. Throws interior_point when sum < 1 - 1e-10 (the induction has
 * terminated) and not_on_boundary when sum > 1 + 1e-10.
 */
BoundaryClassification simplex_boundary_classify(const EggDomain& domain,
                                                 const std::vector<double>& t);

} // namespace eggkernel
