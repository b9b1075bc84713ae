#include "hybridcsp/gso.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hybridcsp/errors.hpp"

namespace hybridcsp {

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::truncated_normal(double limit) {
    for (;;) {
        const double z = normal();
        if (std::abs(z) <= limit) {
            return z;
        }
    }
}

namespace {

constexpr double kNormalLimit = 3.0;

double draw_r1(const GsoParams& params, Rng& rng) {
    return params.truncate_normal ? rng.truncated_normal(kNormalLimit) : rng.normal();
}

std::vector<double> step_along(std::span<const double> origin, std::span<const double> angles,
                               double distance, const SearchBounds& bounds) {
    const std::vector<double> g = direction_from_angles(angles, origin.size());
    std::vector<double> out(origin.begin(), origin.end());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] += distance * g[j];
    }
    bounds.clamp(out);
    return out;
}

std::vector<double> turned(std::span<const double> angles, double offset) {
    std::vector<double> out(angles.begin(), angles.end());
    for (double& a : out) {
        a += offset;
    }
    return out;
}

}  // namespace

SearchBounds SearchBounds::from_domains(const Domains& domains) {
    SearchBounds b;
    b.lower.assign(domains.size(), 0.0);
    b.upper.reserve(domains.size());
    for (const Domain& d : domains) {
        b.upper.push_back(static_cast<double>(d.size()));
    }
    return b;
}

double SearchBounds::diameter() const {
    double sum = 0.0;
    for (std::size_t j = 0; j < lower.size(); ++j) {
        const double w = upper[j] - lower[j];
        sum += w * w;
    }
    return std::sqrt(sum);
}

void SearchBounds::clamp(std::span<double> position) const {
    for (std::size_t j = 0; j < position.size(); ++j) {
        position[j] = std::clamp(position[j], lower[j], upper[j]);
    }
}

bool SearchBounds::contains(std::span<const double> position) const {
    if (position.size() != lower.size()) {
        return false;
    }
    for (std::size_t j = 0; j < position.size(); ++j) {
        if (!(position[j] >= lower[j] && position[j] <= upper[j])) {
            return false;
        }
    }
    return true;
}

void GsoParams::validate() const {
    if (pop_size == 0) {
        throw ConfigError("pop_size must be positive");
    }
    if (!(scrounger_prob >= 0.0 && scrounger_prob <= 1.0)) {
        throw ConfigError("scrounger_prob must lie in [0, 1]");
    }
    if (!(l_max > 0.0) || !(theta_max > 0.0) || !(alpha_max > 0.0) || !(mutation_eta > 0.0) ||
        !(ranging_a > 0.0)) {
        throw ConfigError("l_max, theta_max, alpha_max, mutation_eta and ranging_a must be positive");
    }
    if (max_iters == 0) {
        throw ConfigError("max_iters must be positive");
    }
}

GsoParams default_gso_params(std::size_t n, const SearchBounds& bounds) {
    GsoParams p;
    const double a = std::round(std::sqrt(static_cast<double>(n) + 1.0));
    p.theta_max = std::numbers::pi / (a * a);
    p.alpha_max = p.theta_max / 2.0;
    p.l_max = bounds.diameter();
    return p;
}

GsoParams default_gso_params(const ConstraintNetwork& network) {
    return default_gso_params(network.size(), SearchBounds::from_domains(network.domains()));
}

std::vector<double> direction_from_angles(std::span<const double> angles, std::size_t n) {
    if (n == 0) {
        throw DimensionError("direction needs at least one dimension");
    }
    if (n == 1) {
        return {1.0};
    }
    if (angles.size() != n - 1) {
        throw DimensionError("expected " + std::to_string(n - 1) + " head angles, got " +
                             std::to_string(angles.size()));
    }
    // suffix[j] = prod_{q >= j} cos(angles[q]) over 0-based angle indices.
    std::vector<double> suffix(n, 1.0);
    for (std::size_t q = n - 1; q-- > 0;) {
        suffix[q] = suffix[q + 1] * std::cos(angles[q]);
    }
    std::vector<double> g(n);
    g[0] = suffix[0];
    for (std::size_t j = 1; j < n; ++j) {
        g[j] = std::sin(angles[j - 1]) * suffix[j];
    }
    return g;
}

Assignment decode(std::span<const double> position, const Domains& domains) {
    if (position.size() != domains.size()) {
        throw DimensionError("position has " + std::to_string(position.size()) + " coordinates, expected " +
                             std::to_string(domains.size()));
    }
    Assignment out(position.size());
    for (std::size_t j = 0; j < position.size(); ++j) {
        const Domain& d = domains[j];
        if (d.empty()) {
            throw InfeasibleMemberError("domain of variable " + std::to_string(j) + " is empty");
        }
        const double last = static_cast<double>(d.size() - 1);
        const double index = std::clamp(std::floor(position[j]), 0.0, last);
        out[j] = d[static_cast<std::size_t>(index)];
    }
    return out;
}

double mutation_probability(std::size_t d, std::size_t k, std::size_t k_max) {
    if (d == 0 || k_max == 0) {
        throw OutOfRangeError("dimension and k_max must be positive");
    }
    if (k > k_max) {
        throw OutOfRangeError("iteration " + std::to_string(k) + " exceeds k_max " + std::to_string(k_max));
    }
    const double inv_d = 1.0 / static_cast<double>(d);
    return inv_d + (static_cast<double>(k) / static_cast<double>(k_max)) * (1.0 - inv_d);
}

double polynomial_delta(double u, double eta) {
    const double exponent = 1.0 / (eta + 1.0);
    if (u < 0.5) {
        return std::pow(2.0 * u, exponent) - 1.0;
    }
    return 1.0 - std::pow(2.0 * (1.0 - u), exponent);
}

std::vector<double> polynomial_mutate(std::span<const double> position, const SearchBounds& bounds,
                                      double p_m, double eta, Rng& rng) {
    std::vector<double> out(position.begin(), position.end());
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (rng.uniform() >= p_m) {
            continue;
        }
        double u = rng.uniform();
        while (u == 0.0) {
            u = rng.uniform();
        }
        out[j] += (bounds.upper[j] - bounds.lower[j]) * polynomial_delta(u, eta);
    }
    bounds.clamp(out);
    return out;
}

ThreePointCandidates three_point_candidates(const Member& producer, double l_max, double theta_max,
                                            const SearchBounds& bounds, const ThreePointDraws& draws) {
    const auto& y = producer.position;
    const auto& theta = producer.head_angle;
    std::span<const double> angles = y.size() > 1 ? std::span<const double>(theta) : std::span<const double>();
    const double half = theta_max / 2.0;
    ThreePointCandidates c;
    c.zero = step_along(y, angles, draws.r1[0] * l_max, bounds);
    c.right = step_along(y, turned(angles, draws.r2[1] * half), draws.r1[1] * l_max, bounds);
    c.left = step_along(y, turned(angles, -draws.r2[2] * half), draws.r1[2] * l_max, bounds);
    return c;
}

ThreePointCandidates producer_scan_three_point(const Member& producer, const GsoParams& params,
                                               const SearchBounds& bounds, Rng& rng) {
    ThreePointDraws draws;
    draws.r1[0] = draw_r1(params, rng);
    for (std::size_t i = 1; i < 3; ++i) {
        draws.r1[i] = draw_r1(params, rng);
        draws.r2[i] = rng.uniform();
    }
    return three_point_candidates(producer, params.l_max, params.theta_max, bounds, draws);
}

Member producer_step_apm(const Member& producer, const GsoParams& params, const SearchBounds& bounds,
                         std::size_t k, std::size_t k_max, const ConstraintNetwork& network,
                         const Domains& domains, Rng& rng) {
    const double p_m = mutation_probability(network.size(), k, k_max);
    Member candidate;
    candidate.position = polynomial_mutate(producer.position, bounds, p_m, params.mutation_eta, rng);
    candidate.decoded = decode(candidate.position, domains);
    candidate.fitness = evaluate(network, candidate.decoded);
    if (candidate.fitness > producer.fitness) {
        return producer;
    }
    candidate.head_angle = producer.head_angle;
    return candidate;
}

std::vector<double> scrounge_with(std::span<const double> position, std::span<const double> producer,
                                  std::span<const double> r3) {
    if (producer.size() != position.size() || r3.size() != position.size()) {
        throw DimensionError("scrounge operands differ in dimension");
    }
    std::vector<double> out(position.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = position[j] + r3[j] * (producer[j] - position[j]);
        // Guard against rounding past the producer coordinate.
        out[j] = std::clamp(out[j], std::min(position[j], producer[j]), std::max(position[j], producer[j]));
    }
    return out;
}

std::vector<double> scrounge(const Member& member, std::span<const double> producer, Rng& rng) {
    std::vector<double> r3(member.position.size());
    for (double& r : r3) {
        r = rng.uniform();
    }
    return scrounge_with(member.position, producer, r3);
}

double wrap_angle(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = angle - two_pi * std::floor((angle + std::numbers::pi) / two_pi);
    if (w >= std::numbers::pi) {
        w -= two_pi;
    }
    if (w < -std::numbers::pi) {
        w = -std::numbers::pi;
    }
    return w;
}

RangeMove range_with(const Member& member, const GsoParams& params, const SearchBounds& bounds,
                     double r1, std::span<const double> r2) {
    const std::size_t n = member.position.size();
    RangeMove move;
    move.head_angle = member.head_angle;
    if (n > 1) {
        if (r2.size() != member.head_angle.size()) {
            throw DimensionError("turning draws do not match the head angle dimension");
        }
        for (std::size_t q = 0; q < move.head_angle.size(); ++q) {
            move.head_angle[q] = wrap_angle(move.head_angle[q] + r2[q] * params.alpha_max);
        }
    }
    const double distance = params.ranging_a * std::abs(r1) * params.l_max;
    std::span<const double> angles = n > 1 ? std::span<const double>(move.head_angle) : std::span<const double>();
    move.position = step_along(member.position, angles, distance, bounds);
    return move;
}

RangeMove range_step(const Member& member, const GsoParams& params, const SearchBounds& bounds, Rng& rng) {
    std::vector<double> r2;
    if (member.position.size() > 1) {
        r2.resize(member.head_angle.size());
        for (double& r : r2) {
            r = rng.uniform(-1.0, 1.0);
        }
    }
    const double r1 = draw_r1(params, rng);
    return range_with(member, params, bounds, r1, r2);
}

}  // namespace hybridcsp
