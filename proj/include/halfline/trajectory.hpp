#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "halfline/errors.hpp"

namespace halfline {

enum class Direction { Away, Toward };

/// A point where the searcher changes direction, tagged with the direction of
/// the movement that follows it.
struct TurningPoint {
    double position;
    Direction direction;
};

/// Parameters of a t-sub-monotone trajectory: anchor expansion factor beta and
/// inner turning-point fractions 1 < gamma_1 < ... < gamma_t < beta (implicit
/// gamma_0 = 1, gamma_{t+1} = beta). Validated against the detection
/// probability p the strategy is meant for (beta < 1/(1-p)^2).
///
/// Near the domain edges at large t the true gamma separations drop below
/// double spacing, so adjacent gammas may round to equal values; ordering is
/// therefore enforced non-strictly here and strictly inside the solver at
/// extended precision.
struct SubMonotoneParams {
    int t;
    double beta;
    std::vector<double> gammas;

    SubMonotoneParams(int t, double beta, std::vector<double> gammas, double p);
};

/// Immutable description of a search trajectory. Value type, safe to share
/// across threads.
class Strategy {
public:
    struct Geometric {
        double base;
    };
    struct Explicit {
        std::function<double(int)> turning;  // x_i for i = 1, 2, ...
    };
    struct Sub {
        SubMonotoneParams params;
    };

    static Strategy geometric(double base);
    static Strategy explicit_monotone(std::function<double(int)> turning);
    static Strategy sub_monotone(SubMonotoneParams params);

    bool is_sub_monotone() const { return std::holds_alternative<Sub>(kind_); }
    const SubMonotoneParams* sub_params() const;

    /// Geometric growth factor per round (base or beta); 0 for explicit
    /// strategies, whose growth is estimated while walking.
    double growth_hint() const;

    const std::variant<Geometric, Explicit, Sub>& kind() const { return kind_; }

private:
    explicit Strategy(std::variant<Geometric, Explicit, Sub> kind) : kind_(std::move(kind)) {}
    std::variant<Geometric, Explicit, Sub> kind_;
};

/// Times between consecutive passes over a fixed placement, g_i = f_i - f_{i-1},
/// plus the cumulative pass times f_i.
struct GapSchedule {
    std::vector<double> gaps;
    std::vector<double> cumulative;
};

struct CrSample {
    double d;
    double expected_time;
    double ratio;  // p * expected_time / d
};

struct SupReport {
    double ratio;
    int round;     // round r achieving the max
    int interval;  // interval index within the round (1-based; 1 for monotone)
};

/// First n direction-change points of the trajectory, in order.
std::vector<TurningPoint> turning_points(const Strategy& s, int n);

/// First k visitation gaps for placement d, computed by walking the trajectory
/// and recording crossings of d. Rejects d < 1 and d exactly at a turning point.
GapSchedule gap_schedule(const Strategy& s, double d, int k);

/// Expected detection time sum_i (1-p)^{i-1} g_i, truncated so that the
/// remaining tail is below eps (term count via tail_bound_terms plus a
/// rigorous tail check on the walked gaps).
double expected_detection_time(const Strategy& s, double p, double d, double eps);

CrSample competitive_ratio_at(const Strategy& s, double p, double d);

/// Worst-case ratio over placements just past every turning point in rounds
/// r <= r_max, each at d = (turning point) * (1 + delta). Requires the
/// round-to-round max to settle below 1e-9 before r_max, and the result at
/// offsets delta and delta/10 to agree within 1e-6.
SupReport competitive_ratio_sup(const Strategy& s, double p, int r_max, double delta);

}  // namespace halfline
