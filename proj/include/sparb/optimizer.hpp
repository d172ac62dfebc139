#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sparb/densities.hpp"
#include "sparb/forecast.hpp"
#include "sparb/spreads.hpp"

namespace sparb {

enum class Direction { BuyThenSell, SellThenBuy };
enum class TradeMode { Single, Double };

inline const char* to_string(Direction d) {
    return d == Direction::BuyThenSell ? "buy_then_sell" : "sell_then_buy";
}

struct TradeConfig {
    double eta = 0.8;          // roundtrip efficiency, (0,1]
    double cost = 5.0;         // roundtrip transaction cost c, EUR/MWh
    int start_soc = 0;         // b, 0 or 1 (fraction of the 1 MWh capacity)
    double var_level = 0.05;   // tail probability for the VaR filter
    TradeMode mode = TradeMode::Single;
    bool allow_embedded = true;  // false restricts second legs to sequential placement
};

inline void check_config(const TradeConfig& c) {
    if (!(c.eta > 0.0) || !(c.eta <= 1.0))
        throw parameter_error("eta must lie in (0,1], got " + std::to_string(c.eta));
    if (!(c.cost >= 0.0)) throw parameter_error("cost must be >= 0");
    if (c.start_soc != 0 && c.start_soc != 1)
        throw parameter_error("start_soc must be 0 or 1");
    if (!(c.var_level > 0.0) || !(c.var_level < 0.5))
        throw parameter_error("var_level must lie in (0, 0.5)");
}

/// Outcome of the value-at-risk filter for one spread density.
/// The trade direction follows the sign of the expected spread; the quantile
/// on the loss side must clear the roundtrip cost AND share that sign, so a
/// wide density straddling zero is never declared safe.
struct VarFeasibility {
    bool feasible = false;
    Direction direction = Direction::BuyThenSell;
    double quantile = 0.0;  // the tail quantile that was examined
    double expected = 0.0;  // forecast spread mean
};

inline VarFeasibility var_feasible(const DensityParams& params, const TradeConfig& config) {
    check_config(config);
    VarFeasibility out;
    out.expected = mean(params);
    if (out.expected > 0.0) {
        out.direction = Direction::SellThenBuy;
        out.quantile = quantile(params, config.var_level);
        out.feasible = out.quantile > 0.0 && config.eta * out.quantile > config.cost;
    } else if (out.expected < 0.0) {
        out.direction = Direction::BuyThenSell;
        out.quantile = quantile(params, 1.0 - config.var_level);
        out.feasible = out.quantile < 0.0 && config.eta * -out.quantile > config.cost;
    }
    return out;
}

/// Expected payoff of one full trade of this spread, given the charge level
/// available when the leg starts: (eta*E - c)*b for sell-first spreads,
/// (eta*|E| - c)*(1-b) for buy-first spreads.
inline double expected_leg_payoff(const DensityParams& params, const TradeConfig& config,
                                  double available_charge) {
    check_config(config);
    const double expected = mean(params);
    if (expected > 0.0) return (config.eta * expected - config.cost) * available_charge;
    if (expected < 0.0) return (config.eta * -expected - config.cost) * (1.0 - available_charge);
    return 0.0;
}

struct TradeLeg {
    SpreadId spread;
    Direction direction = Direction::BuyThenSell;
    double volume = 1.0;  // MWh; always 1 at optimal plans
    double expected_payoff = 0.0;
};

/// Up to two legs; an empty leg list means no trade was put on.
struct TradePlan {
    std::vector<TradeLeg> legs;
    int start_soc = 0;
    double expected_total = 0.0;

    bool no_trade() const { return legs.empty(); }
};

struct SocTrajectory {
    std::array<double, kHoursPerDay> soc{};
};

inline int buy_hour(const TradeLeg& leg) {
    return leg.direction == Direction::BuyThenSell ? leg.spread.earlier : leg.spread.later;
}
inline int sell_hour(const TradeLeg& leg) {
    return leg.direction == Direction::BuyThenSell ? leg.spread.later : leg.spread.earlier;
}

/// SoC_h = SoC_{h-1} + buy_h - sell_h starting from b; disengaged when any
/// hour leaves [0, 1].
inline std::optional<SocTrajectory> simulate_soc(const std::vector<TradeLeg>& legs,
                                                 int start_soc) {
    std::array<double, kHoursPerDay> delta{};
    for (const auto& leg : legs) {
        delta[buy_hour(leg)] += leg.volume;
        delta[sell_hour(leg)] -= leg.volume;
    }
    SocTrajectory traj;
    double soc = static_cast<double>(start_soc);
    for (int h = 0; h < kHoursPerDay; ++h) {
        soc += delta[h];
        if (soc < 0.0 || soc > 1.0) return std::nullopt;
        traj.soc[h] = soc;
    }
    return traj;
}

inline SocTrajectory soc_trajectory(const TradePlan& plan, int start_soc) {
    auto traj = simulate_soc(plan.legs, start_soc);
    if (!traj) throw soc_error("plan drives state of charge outside [0,1]");
    return *traj;
}

/// Buy/sell indicator vectors of a plan; bs(i,j) = b_i + s_j.
struct PlanVector {
    std::array<double, kHoursPerDay> buy{};
    std::array<double, kHoursPerDay> sell{};

    double bs(int i, int j) const { return buy[i] + sell[j]; }
};

inline PlanVector plan_vector(const TradePlan& plan) {
    PlanVector v;
    for (const auto& leg : plan.legs) {
        v.buy[buy_hour(leg)] += leg.volume;
        v.sell[sell_hour(leg)] += leg.volume;
    }
    return v;
}

struct ConstraintViolation {
    int equation = 0;  // constraint number in the daily program formulation
    std::string detail;
};

struct ValidationResult {
    // Payoff under the per-leg directional convention (eta applied to the
    // whole spread once, cost per leg): the form the backtest realizes.
    double objective = 0.0;
    // Literal double-sum objective (eta/2)*Y_ij*(bs_ij - 1)*(b_i + s_j) - n*c.
    // Kept for inspection; it cross-couples legs and is negative for
    // profitable trades, so it is reported, not optimized.
    double eq1_objective = 0.0;
    std::vector<ConstraintViolation> violations;

    bool ok() const { return violations.empty(); }
};

namespace detail {

// directional payoff of one leg at a given spread value
inline double directional_payoff(double spread_value, Direction dir, const TradeConfig& cfg,
                                 double volume) {
    const double favorable = dir == Direction::BuyThenSell ? -spread_value : spread_value;
    return (cfg.eta * favorable - cfg.cost) * volume;
}

inline double full_leg_payoff(double expected, const TradeConfig& cfg) {
    return cfg.eta * std::fabs(expected) - cfg.cost;
}

// full 24x24 spread matrix value: Y(i,j) = p_i - p_j for any i,j
inline double spread_matrix_value(const SpreadVector& v, int i, int j) {
    if (i == j) return 0.0;
    return i < j ? v.at(i, j) : -v.at(j, i);
}

inline ValidationResult validate_plan_impl(const TradePlan& plan, const SpreadVector* realized,
                                           const ForecastDay* day, const TradeConfig& config) {
    check_config(config);
    ValidationResult res;
    auto violate = [&](int eq, std::string detail) {
        res.violations.push_back({eq, std::move(detail)});
    };

    if (plan.legs.size() > 2) violate(5, "more than two legs");
    const PlanVector pv = plan_vector(plan);
    const auto n = static_cast<double>(plan.legs.size());

    for (int h = 0; h < kHoursPerDay; ++h) {
        if (pv.buy[h] + pv.sell[h] > 1.0)
            violate(2, "buy and sell overlap at hour " + std::to_string(h));
        if (pv.buy[h] < 0.0 || pv.sell[h] < 0.0)
            violate(4, "negative indicator at hour " + std::to_string(h));
    }
    double total_buy = 0.0, total_sell = 0.0;
    for (int h = 0; h < kHoursPerDay; ++h) {
        total_buy += pv.buy[h];
        total_sell += pv.sell[h];
    }
    if (total_buy != n) violate(5, "sum of buy indicators != number of trades");
    if (total_sell != n) violate(6, "sum of sell indicators != number of trades");

    if (!simulate_soc(plan.legs, plan.start_soc))
        violate(8, "state of charge leaves [SoC_min, SoC_max]");

    // spread values used for the payoff: realized, or forecast means
    SpreadVector values{};
    bool all_values_known = true;
    if (realized) {
        values = *realized;
    } else {
        std::array<bool, kSpreadCount> known{};
        for (int s = 0; s < kSpreadCount; ++s) {
            if (day->entries[s]) {
                values.values[s] = mean(*day->entries[s]);
                known[s] = true;
            }
        }
        for (const auto& leg : plan.legs) {
            const int s = spread_index(leg.spread);
            if (!known[s]) {
                violate(9, "no density for leg spread " + std::to_string(s));
                all_values_known = false;
            }
        }
        for (int i = 0; i < kHoursPerDay && all_values_known; ++i)
            for (int j = i + 1; j < kHoursPerDay; ++j)
                if ((pv.buy[i] + pv.sell[i] > 0.0 || pv.buy[j] + pv.sell[j] > 0.0) &&
                    !known[spread_index(i, j)])
                    all_values_known = false;
    }

    if (day) {
        for (const auto& leg : plan.legs) {
            const auto& entry = day->entries[spread_index(leg.spread)];
            if (!entry) continue;  // already reported above
            const auto vf = var_feasible(*entry, config);
            if (!vf.feasible)
                violate(9, "leg " + std::to_string(leg.spread.earlier) + "-" +
                                std::to_string(leg.spread.later) + " fails the VaR constraint");
            else if (vf.direction != leg.direction)
                violate(9, "leg direction contradicts the forecast spread sign");
        }
    }

    double objective = 0.0;
    for (const auto& leg : plan.legs)
        objective += directional_payoff(values[spread_index(leg.spread)], leg.direction, config,
                                        leg.volume);
    res.objective = objective;

    if (day && std::fabs(objective - plan.expected_total) > 1e-9)
        violate(12, "recorded expected payoff disagrees with the payoff formula");

    if (all_values_known) {
        double eq1 = 0.0;
        for (int i = 0; i < kHoursPerDay; ++i) {
            if (pv.buy[i] == 0.0) continue;  // (bs-1)*(b+s) vanishes off active rows/cols
            for (int j = 0; j < kHoursPerDay; ++j) {
                if (pv.sell[j] == 0.0) continue;
                const double bs = pv.bs(i, j);
                eq1 += 0.5 * config.eta * spread_matrix_value(values, i, j) * (bs - 1.0) *
                       (pv.buy[i] + pv.sell[j]);
            }
        }
        res.eq1_objective = eq1 - n * config.cost;
    } else {
        res.eq1_objective = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

}  // namespace detail

/// Check a plan against the daily program: hour exclusivity, indicator
/// identities, trade counts, the SoC corridor, and (given forecasts) the VaR
/// constraint and payoff consistency. Violations carry the equation number.
inline ValidationResult validate_plan(const TradePlan& plan, const SpreadVector& realized,
                                      const TradeConfig& config) {
    return detail::validate_plan_impl(plan, &realized, nullptr, config);
}

inline ValidationResult validate_plan(const TradePlan& plan, const ForecastDay& day,
                                      const TradeConfig& config) {
    return detail::validate_plan_impl(plan, nullptr, &day, config);
}

struct CandidateSpread {
    SpreadId spread;
    Direction direction = Direction::BuyThenSell;
};

struct TurningPoints {
    std::vector<int> hours;                    // extrema, endpoints included
    std::vector<CandidateSpread> candidates;   // consecutive-extrema pairs
};

/// Extrema of the hourly curve and the trades they induce. A plateau counts
/// once, at its first hour; a constant curve has no extrema and no candidates.
inline TurningPoints turning_point_candidates(const std::array<double, kHoursPerDay>& prices) {
    for (double p : prices)
        if (!std::isfinite(p)) throw parameter_error("non-finite price");

    TurningPoints out;
    int last_sign = 0;
    int level_start = 0;  // first hour of the current price level
    for (int k = 0; k + 1 < kHoursPerDay; ++k) {
        const double d = prices[k + 1] - prices[k];
        if (d == 0.0) continue;
        const int s = d > 0.0 ? 1 : -1;
        if (last_sign == 0) {
            out.hours.push_back(0);
        } else if (s != last_sign) {
            out.hours.push_back(level_start);
        }
        last_sign = s;
        level_start = k + 1;
    }
    if (last_sign != 0) out.hours.push_back(level_start);

    for (std::size_t k = 0; k + 1 < out.hours.size(); ++k) {
        const int a = out.hours[k];
        const int b = out.hours[k + 1];
        const Direction dir =
            prices[a] < prices[b] ? Direction::BuyThenSell : Direction::SellThenBuy;
        out.candidates.push_back({SpreadId{a, b}, dir});
    }
    return out;
}

namespace detail {

struct LegCandidate {
    bool usable = false;     // var-feasible and profitable at full volume
    Direction direction = Direction::BuyThenSell;
    double expected = 0.0;
    double payoff = 0.0;     // eta*|E| - c
};

inline std::array<LegCandidate, kSpreadCount> build_candidates(const ForecastDay& day,
                                                               const TradeConfig& config) {
    std::array<LegCandidate, kSpreadCount> cands{};
    for (int s = 0; s < kSpreadCount; ++s) {
        const auto& entry = day.entries[s];
        if (!entry) continue;
        const auto vf = var_feasible(*entry, config);
        if (!vf.feasible) continue;
        const double payoff = full_leg_payoff(vf.expected, config);
        if (!(payoff > 0.0)) continue;
        cands[s] = {true, vf.direction, vf.expected, payoff};
    }
    return cands;
}

inline TradeLeg make_leg(int ordinal, const LegCandidate& cand) {
    return TradeLeg{spread_hours(ordinal), cand.direction, 1.0, cand.payoff};
}

inline bool hours_disjoint(const SpreadId& a, const SpreadId& b) {
    return a.earlier != b.earlier && a.earlier != b.later && a.later != b.earlier &&
           a.later != b.later;
}

inline bool sequential(const SpreadId& a, const SpreadId& b) {
    return a.later < b.earlier || b.later < a.earlier;
}

}  // namespace detail

/// Best single VaR-feasible trade for the day, or an empty plan. Ties go to
/// the smaller spread ordinal.
inline TradePlan optimize_single(const ForecastDay& day, const TradeConfig& config) {
    check_config(config);
    TradePlan plan;
    plan.start_soc = config.start_soc;
    const auto cands = detail::build_candidates(day, config);
    double best = 0.0;
    int best_s = -1;
    for (int s = 0; s < kSpreadCount; ++s) {
        if (!cands[s].usable) continue;
        const double payoff =
            expected_leg_payoff(*day.entries[s], config, static_cast<double>(config.start_soc));
        if (payoff > best) {
            best = payoff;
            best_s = s;
        }
    }
    if (best_s >= 0) {
        plan.legs.push_back(detail::make_leg(best_s, cands[best_s]));
        plan.expected_total = best;
    }
    return plan;
}

/// Best plan of up to two trades. Every pair must be hour-disjoint, jointly
/// SoC-feasible from the starting level, and both legs individually
/// VaR-feasible and profitable; otherwise the search degrades to the best
/// single trade. Deterministic: candidates are scanned in ordinal order and
/// only strict improvements are kept.
inline TradePlan optimize_two(const ForecastDay& day, const TradeConfig& config) {
    check_config(config);
    TradePlan best = optimize_single(day, config);
    const auto cands = detail::build_candidates(day, config);

    for (int s1 = 0; s1 < kSpreadCount; ++s1) {
        if (!cands[s1].usable) continue;
        const TradeLeg leg1 = detail::make_leg(s1, cands[s1]);
        for (int s2 = s1 + 1; s2 < kSpreadCount; ++s2) {
            if (!cands[s2].usable) continue;
            const double total = cands[s1].payoff + cands[s2].payoff;
            if (!(total > best.expected_total)) continue;
            const TradeLeg leg2 = detail::make_leg(s2, cands[s2]);
            if (!detail::hours_disjoint(leg1.spread, leg2.spread)) continue;
            if (!config.allow_embedded && !detail::sequential(leg1.spread, leg2.spread)) continue;
            if (!simulate_soc({leg1, leg2}, config.start_soc)) continue;
            best.legs = {leg1, leg2};
            best.expected_total = total;
        }
    }
    best.start_soc = config.start_soc;
    return best;
}

inline TradePlan optimize(const ForecastDay& day, const TradeConfig& config) {
    return config.mode == TradeMode::Single ? optimize_single(day, config)
                                            : optimize_two(day, config);
}

/// Exhaustive reference search. Enumerates every feasible leg and every
/// ordered leg pair with a from-scratch SoC scan; exists to cross-check the
/// optimizers, so it shares no search code with them. Agreement is on the
/// expected payoff; tie sets may differ.
inline TradePlan brute_force_oracle(const ForecastDay& day, const TradeConfig& config,
                                    int max_legs) {
    check_config(config);
    if (max_legs < 1 || max_legs > 2) throw parameter_error("max_legs must be 1 or 2");

    struct Entry {
        bool ok = false;
        Direction dir = Direction::BuyThenSell;
        double payoff = 0.0;
    };
    std::array<Entry, kSpreadCount> entries{};
    for (int s = 0; s < kSpreadCount; ++s) {
        if (!day.entries[s]) continue;
        const auto vf = var_feasible(*day.entries[s], config);
        if (!vf.feasible) continue;
        const double payoff = config.eta * std::fabs(vf.expected) - config.cost;
        if (payoff <= 0.0) continue;
        entries[s] = {true, vf.direction, payoff};
    }

    TradePlan best;
    best.start_soc = config.start_soc;

    auto feasible_set = [&](const std::vector<TradeLeg>& legs) {
        std::array<int, kHoursPerDay> buys{}, sells{};
        for (const auto& leg : legs) {
            ++buys[buy_hour(leg)];
            ++sells[sell_hour(leg)];
        }
        int soc = config.start_soc;
        for (int h = 0; h < kHoursPerDay; ++h) {
            if (buys[h] + sells[h] > 1) return false;  // one action per hour
            soc += buys[h] - sells[h];
            if (soc < 0 || soc > 1) return false;
        }
        return true;
    };

    for (int s = 0; s < kSpreadCount; ++s) {
        if (!entries[s].ok) continue;
        const TradeLeg leg{spread_hours(s), entries[s].dir, 1.0, entries[s].payoff};
        if (!feasible_set({leg})) continue;
        if (entries[s].payoff > best.expected_total) {
            best.legs = {leg};
            best.expected_total = entries[s].payoff;
        }
    }
    if (max_legs >= 2) {
        for (int s1 = 0; s1 < kSpreadCount; ++s1) {
            if (!entries[s1].ok) continue;
            for (int s2 = 0; s2 < kSpreadCount; ++s2) {
                if (s2 == s1 || !entries[s2].ok) continue;
                const TradeLeg a{spread_hours(s1), entries[s1].dir, 1.0, entries[s1].payoff};
                const TradeLeg b{spread_hours(s2), entries[s2].dir, 1.0, entries[s2].payoff};
                if (!config.allow_embedded && !detail::sequential(a.spread, b.spread)) continue;
                if (!feasible_set({a, b})) continue;
                const double total = entries[s1].payoff + entries[s2].payoff;
                if (total > best.expected_total) {
                    best.legs = {a, b};
                    best.expected_total = total;
                }
            }
        }
    }
    return best;
}

/// Oracle over known spread values: each value acts as a point-mass forecast,
/// so feasibility reduces to eta*|y| > c.
inline TradePlan brute_force_oracle(const SpreadVector& spreads, const TradeConfig& config,
                                    int max_legs) {
    ForecastDay day;
    for (int s = 0; s < kSpreadCount; ++s) {
        const double y = spreads[s];
        if (y == 0.0) continue;
        day.entries[s] = normal_params(y, 1e-9);
    }
    return brute_force_oracle(day, config, max_legs);
}

}  // namespace sparb
