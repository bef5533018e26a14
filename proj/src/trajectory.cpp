#include "halfline/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "halfline/numerics.hpp"

namespace halfline {

SubMonotoneParams::SubMonotoneParams(int t, double beta, std::vector<double> gammas, double p)
    : t(t), beta(beta), gammas(std::move(gammas)) {
    if (t < 0) throw std::invalid_argument("SubMonotoneParams: t must be >= 0");
    if (static_cast<int>(this->gammas.size()) != t)
        throw std::invalid_argument("SubMonotoneParams: need exactly t gammas");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("SubMonotoneParams: p must be in (0,1)");
    const double cap = 1.0 / ((1.0 - p) * (1.0 - p));
    if (!(beta > 1.0 && beta < cap))
        throw std::invalid_argument("SubMonotoneParams: beta must lie in (1, 1/(1-p)^2)");
    double prev = 1.0;
    for (double g : this->gammas) {
        if (!(g >= prev))
            throw std::invalid_argument("SubMonotoneParams: gammas must be >= 1 and non-decreasing");
        prev = g;
    }
    if (!(beta >= prev)) throw std::invalid_argument("SubMonotoneParams: gammas must stay below beta");
}

Strategy Strategy::geometric(double base) {
    if (!(base > 1.0)) throw std::invalid_argument("Strategy::geometric: base must be > 1");
    return Strategy(Geometric{base});
}

Strategy Strategy::explicit_monotone(std::function<double(int)> turning) {
    if (!turning) throw std::invalid_argument("Strategy::explicit_monotone: empty generator");
    return Strategy(Explicit{std::move(turning)});
}

Strategy Strategy::sub_monotone(SubMonotoneParams params) {
    return Strategy(Sub{std::move(params)});
}

const SubMonotoneParams* Strategy::sub_params() const {
    if (auto* s = std::get_if<Sub>(&kind_)) return &s->params;
    return nullptr;
}

double Strategy::growth_hint() const {
    if (auto* g = std::get_if<Geometric>(&kind_)) return g->base;
    if (auto* s = std::get_if<Sub>(&kind_)) return s->params.beta;
    return 0.0;
}

namespace {

// Lazy stream of trajectory legs. Consecutive legs share endpoints; zero-length
// legs (equal adjacent gammas) are emitted and ignored by consumers.
class LegStream {
public:
    struct Leg {
        double from, to;
    };

    explicit LegStream(const Strategy& s) {
        if (auto* g = std::get_if<Strategy::Geometric>(&s.kind())) {
            monotone_ = true;
            mono_next_ = [base = g->base, x = 1.0]() mutable {
                x *= base;
                return x;
            };
        } else if (auto* e = std::get_if<Strategy::Explicit>(&s.kind())) {
            monotone_ = true;
            mono_next_ = [gen = e->turning, prev = 0.0, idx = 0]() mutable {
                ++idx;
                const double x = gen(idx);
                if (idx == 1 && !(x > 1.0))
                    throw std::invalid_argument("explicit strategy: x_1 must exceed 1");
                if (!(x > prev))
                    throw std::invalid_argument("explicit strategy: turning points must increase");
                prev = x;
                return x;
            };
        } else {
            const auto& p = std::get<Strategy::Sub>(s.kind()).params;
            beta_ = p.beta;
            gammas_ = p.gammas;
            hops_ = p.t;
            anchor_ = beta_;
        }
    }

    Leg next() { return monotone_ ? next_monotone() : next_sub(); }

    // largest turning-point ratio observed so far (explicit strategies)
    double observed_growth() const { return observed_growth_; }

private:
    Leg next_monotone() {
        if (outbound_) {
            const double prev = last_far_;
            last_far_ = mono_next_();
            if (prev > 0.0) observed_growth_ = std::max(observed_growth_, last_far_ / prev);
            outbound_ = false;
            return {0.0, last_far_};
        }
        outbound_ = true;
        return {last_far_, 0.0};
    }

    // Prologue 0 -> x1 -> 0 -> x1, then per round: triple sweeps of the t inner
    // intervals, a closing stretch to the next anchor, and a full return.
    Leg next_sub() {
        for (;;) {
            switch (phase_) {
                case 0:
                    phase_ = 1;
                    return {0.0, beta_};
                case 1:
                    phase_ = 2;
                    return {beta_, 0.0};
                case 2:
                    phase_ = 3;
                    j_ = 1;
                    sweep_ = 0;
                    return {0.0, beta_};
                case 3: {
                    if (j_ > hops_) {
                        phase_ = 4;
                        continue;
                    }
                    const double lo = gamma(j_ - 1) * anchor_, hi = gamma(j_) * anchor_;
                    if (sweep_ == 0) {
                        sweep_ = 1;
                        return {lo, hi};
                    }
                    if (sweep_ == 1) {
                        sweep_ = 2;
                        return {hi, lo};
                    }
                    sweep_ = 0;
                    ++j_;
                    return {lo, hi};
                }
                case 4:
                    phase_ = 5;
                    return {gamma(hops_) * anchor_, anchor_ * beta_};
                case 5:
                    phase_ = 6;
                    return {anchor_ * beta_, 0.0};
                default:
                    phase_ = 3;
                    j_ = 1;
                    sweep_ = 0;
                    anchor_ *= beta_;
                    return {0.0, anchor_};
            }
        }
    }

    double gamma(int j) const {
        if (j == 0) return 1.0;
        if (j == hops_ + 1) return beta_;
        return gammas_[static_cast<size_t>(j - 1)];
    }

    bool monotone_ = false;
    std::function<double()> mono_next_;
    double last_far_ = 0.0;
    bool outbound_ = true;
    double observed_growth_ = 1.0;

    double beta_ = 0.0, anchor_ = 0.0;
    std::vector<double> gammas_;
    int hops_ = 0, phase_ = 0, j_ = 1, sweep_ = 0;
};

// Visitation gaps of a fixed placement along the trajectory. Each gap is
// accumulated from the leg lengths since the previous crossing, so its
// relative accuracy does not degrade as the absolute clock grows.
class CrossingWalker {
public:
    CrossingWalker(const Strategy& s, double d) : legs_(s), d_(d) {
        if (!(d >= 1.0)) throw std::invalid_argument("placement must satisfy d >= 1");
    }

    double next_gap() {
        for (;;) {
            const auto leg = legs_.next();
            if (d_ == leg.from || d_ == leg.to)
                throw std::invalid_argument("placement coincides with a turning point");
            const double lo = std::min(leg.from, leg.to), hi = std::max(leg.from, leg.to);
            if (lo < d_ && d_ < hi) {
                const double gap = since_ + std::abs(d_ - leg.from);
                since_ = std::abs(leg.to - d_);
                return gap;
            }
            since_ += std::abs(leg.to - leg.from);
        }
    }

    double observed_growth() const { return legs_.observed_growth(); }

private:
    LegStream legs_;
    double d_;
    double since_ = 0.0;
};

}  // namespace

std::vector<TurningPoint> turning_points(const Strategy& s, int n) {
    if (n < 1) throw std::invalid_argument("turning_points: n must be >= 1");
    std::vector<TurningPoint> out;
    out.reserve(static_cast<size_t>(n));
    LegStream legs(s);
    auto cur = legs.next();
    while (static_cast<int>(out.size()) < n) {
        const auto nxt = legs.next();
        if (nxt.to == nxt.from) continue;  // degenerate sweep
        const bool cur_away = cur.to > cur.from;
        const bool nxt_away = nxt.to > nxt.from;
        if (cur_away != nxt_away)
            out.push_back({cur.to, nxt_away ? Direction::Away : Direction::Toward});
        cur = nxt;
    }
    return out;
}

GapSchedule gap_schedule(const Strategy& s, double d, int k) {
    if (k < 1) throw std::invalid_argument("gap_schedule: k must be >= 1");
    CrossingWalker walker(s, d);
    GapSchedule sched;
    sched.gaps.reserve(static_cast<size_t>(k));
    sched.cumulative.reserve(static_cast<size_t>(k));
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        const double gap = walker.next_gap();
        total += gap;
        sched.gaps.push_back(gap);
        sched.cumulative.push_back(total);
    }
    return sched;
}

double expected_detection_time(const Strategy& s, double p, double d, double eps) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const double cap = 1.0 / ((1.0 - p) * (1.0 - p));
    const bool growth_known = s.growth_hint() > 0.0;
    double growth = growth_known ? s.growth_hint() : 1.0;
    if (growth >= cap)
        throw DivergenceError("expected_detection_time: growth factor >= 1/(1-p)^2");

    CrossingWalker walker(s, d);
    const double omp = 1.0 - p;
    double sum = 0.0, weight = 1.0;
    double last_even = 0.0;
    int target = 0;

    for (int i = 1;; ++i) {
        const double gap = walker.next_gap();
        sum += weight * gap;
        weight *= omp;  // weight of term i+1 from here on
        if (i % 2 == 0) last_even = gap;

        if (!growth_known && walker.observed_growth() > growth) {
            growth = walker.observed_growth();
            if (growth >= cap)
                throw DivergenceError("expected_detection_time: growth factor >= 1/(1-p)^2");
            target = 0;
        }
        if (target == 0)
            target = std::max(8, tail_bound_terms(p, growth, eps / (gap + 2.0 * d)));
        if (i >= target && i >= 8) {
            // Remaining tail: odd gaps equal 2d; even gaps satisfy
            // g' + 2d = (g + 2d) * growth once the alternation is steady (i >= 8).
            const double q = growth * omp * omp;  // < 1 by the divergence guard
            const double tail =
                weight * (2.0 * d / (p * (2.0 - p)) + (last_even + 2.0 * d) * growth / (1.0 - q));
            if (tail < eps) return sum;
            target = i + 8;
        }
        if (i > 100000000)
            throw NonConvergenceError("expected_detection_time: series did not settle");
    }
}

CrSample competitive_ratio_at(const Strategy& s, double p, double d) {
    const double et = expected_detection_time(s, p, d, 1e-10 * d);
    return {d, et, p * et / d};
}

SupReport competitive_ratio_sup(const Strategy& s, double p, int r_max, double delta) {
    if (r_max < 2) throw std::invalid_argument("competitive_ratio_sup: r_max must be >= 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("competitive_ratio_sup: delta must be in (0,1)");

    const SubMonotoneParams* sub = s.sub_params();
    const int intervals = sub ? sub->t + 1 : 1;

    std::function<double(int, int)> anchor;  // (round, interval) -> turning point
    if (sub) {
        anchor = [sub](int r, int i) {
            const double xr = std::pow(sub->beta, r);
            return (i == 1 ? 1.0 : sub->gammas[static_cast<size_t>(i - 2)]) * xr;
        };
    } else if (auto* g = std::get_if<Strategy::Geometric>(&s.kind())) {
        anchor = [base = g->base](int r, int) { return std::pow(base, r); };
    } else {
        anchor = [gen = std::get<Strategy::Explicit>(s.kind()).turning](int r, int) { return gen(r); };
    }

    auto ratio_at = [&](int r, int i, double off) {
        const double d = anchor(r, i) * (1.0 + off);
        return competitive_ratio_at(s, p, d).ratio;
    };

    double best = -1.0, prev_round = -1.0;
    int best_r = 0, best_i = 0;
    bool converged = false;
    for (int r = 1; r <= r_max; ++r) {
        double round_max = -1.0;
        for (int i = 1; i <= intervals; ++i) {
            if (anchor(r, i) * (1.0 + delta) < 1.0) continue;
            const double ratio = ratio_at(r, i, delta);
            if (ratio > best) {
                best = ratio;
                best_r = r;
                best_i = i;
            }
            round_max = std::max(round_max, ratio);
        }
        if (r >= 2 && prev_round >= 0.0 && std::abs(round_max - prev_round) < 1e-9) {
            converged = true;
            break;
        }
        prev_round = round_max;
    }
    if (!converged)
        throw NonConvergenceError("competitive_ratio_sup: round max still moving at r_max");

    // one-sided-limit sanity: a 10x smaller offset must give the same value
    const double check = ratio_at(best_r, best_i, delta / 10.0);
    if (std::abs(check - best) > 1e-6 * std::max(1.0, std::abs(best)))
        throw NonConvergenceError("competitive_ratio_sup: delta refinement check failed");
    return {best, best_r, best_i};
}

}  // namespace halfline
