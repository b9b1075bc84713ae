#ifndef HYBRIDCSP_GSO_HPP
#define HYBRIDCSP_GSO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hybridcsp/csp.hpp"
#include "hybridcsp/random.hpp"

namespace hybridcsp {

/// Box [lower, upper] of the continuous search space, one interval per variable.
struct SearchBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    /// [0, |D_j|] per variable.
    static SearchBounds from_domains(const Domains& domains);

    std::size_t size() const { return lower.size(); }
    /// Euclidean length of the box diagonal.
    double diameter() const;
    void clamp(std::span<double> position) const;
    bool contains(std::span<const double> position) const;
};

/// One member of the group.
struct Member {
    std::vector<double> position;
    /// max(n-1, 1) angles in radians; the single angle is unused when n == 1.
    std::vector<double> head_angle;
    std::size_t fitness = 0;
    Assignment decoded;
    /// False when filtering the member's assignment wiped out a domain.
    bool consistent = true;
};

struct GsoParams {
    std::size_t pop_size = 48;
    /// Per-member probability of scrounging rather than ranging.
    double scrounger_prob = 0.6;
    /// Maximum pursuit distance.
    double l_max = 1.0;
    /// Maximum pursuit angle used by three-point scanning.
    double theta_max = 1.0;
    /// Maximum turning angle used by rangers.
    double alpha_max = 0.5;
    /// Distribution index of polynomial mutation.
    double mutation_eta = 2.0;
    /// Ranger distance multiplier.
    double ranging_a = 1.0;
    std::size_t max_iters = 1000;
    std::uint64_t rng_seed = 1;
    /// Clamp r1 normal draws to |r1| <= 3 by resampling.
    bool truncate_normal = true;

    /// Throws ConfigError on an out-of-range field.
    void validate() const;
};

/// Defaults derived from the problem dimension and bounds:
/// a = round(sqrt(n + 1)), theta_max = pi / a^2, alpha_max = theta_max / 2,
/// l_max = bounds diameter. ranging_a keeps its field default.
GsoParams default_gso_params(std::size_t n, const SearchBounds& bounds);
/// Defaults over the bounds of the network's initial domains.
GsoParams default_gso_params(const ConstraintNetwork& network);

/// Hyperspherical transform of n-1 angles into a unit direction in R^n.
/// For n == 1 the angles are ignored and (1) is returned. Throws
/// DimensionError when angles.size() != n - 1 (n >= 2).
std::vector<double> direction_from_angles(std::span<const double> angles, std::size_t n);

/// index_j = clamp(floor(position[j]), 0, |D_j| - 1); value = D_j[index_j].
/// Throws InfeasibleMemberError on an empty domain.
Assignment decode(std::span<const double> position, const Domains& domains);

/// Adaptive mutation probability 1/d + (k/k_max)(1 - 1/d). Throws
/// OutOfRangeError when k > k_max or d, k_max are zero.
double mutation_probability(std::size_t d, std::size_t k, std::size_t k_max);

/// Polynomial-distribution offset for a uniform draw u in [0, 1).
double polynomial_delta(double u, double eta);

/// Each coordinate mutates with probability p_m by (upper - lower) * delta,
/// then the result is clamped to bounds.
std::vector<double> polynomial_mutate(std::span<const double> position, const SearchBounds& bounds,
                                      double p_m, double eta, Rng& rng);

struct ThreePointDraws {
    std::array<double, 3> r1{};  ///< step multipliers for zero, right, left
    std::array<double, 3> r2{};  ///< angle multipliers for zero, right, left
};

struct ThreePointCandidates {
    std::vector<double> zero;
    std::vector<double> right;
    std::vector<double> left;
};

/// Zero-degree, right and left candidates for explicit draws (r2 of the
/// zero candidate is unused).
ThreePointCandidates three_point_candidates(const Member& producer, double l_max, double theta_max,
                                            const SearchBounds& bounds, const ThreePointDraws& draws);

ThreePointCandidates producer_scan_three_point(const Member& producer, const GsoParams& params,
                                               const SearchBounds& bounds, Rng& rng);

/// One adaptive polynomial mutation of the producer with greedy acceptance:
/// the mutant replaces the producer when its fitness is not worse.
Member producer_step_apm(const Member& producer, const GsoParams& params, const SearchBounds& bounds,
                         std::size_t k, std::size_t k_max, const ConstraintNetwork& network,
                         const Domains& domains, Rng& rng);

/// Y + r3 o (Yp - Y) for an explicit r3.
std::vector<double> scrounge_with(std::span<const double> position, std::span<const double> producer,
                                  std::span<const double> r3);

std::vector<double> scrounge(const Member& member, std::span<const double> producer, Rng& rng);

struct RangeMove {
    std::vector<double> position;
    std::vector<double> head_angle;
};

/// Ranger move for explicit draws: theta' = theta + r2 * alpha_max,
/// distance ranging_a * |r1| * l_max along G(theta'). Angles are wrapped into
/// [-pi, pi) and the position is clamped to bounds.
RangeMove range_with(const Member& member, const GsoParams& params, const SearchBounds& bounds,
                     double r1, std::span<const double> r2);

/// Draws r2 uniform on [-1, 1] per angle, then r1 standard normal.
RangeMove range_step(const Member& member, const GsoParams& params, const SearchBounds& bounds, Rng& rng);

/// Angle wrapped into [-pi, pi).
double wrap_angle(double angle);

}  // namespace hybridcsp

#endif  // HYBRIDCSP_GSO_HPP
