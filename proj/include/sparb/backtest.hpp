#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sparb/forecast.hpp"
#include "sparb/optimizer.hpp"
#include "sparb/spreads.hpp"

namespace sparb {

/// Realized daily strategy payoffs plus the per-day trade count (0, 1 or 2).
struct PayoffVector {
    std::vector<double> payoffs;
    std::vector<int> leg_counts;
};

struct SummaryStats {
    double pi_total = 0.0;
    double pi_mean = 0.0;
    double std_error = 0.0;               // sd_{n-1} / sqrt(T)
    int n_loss = 0;                       // days with payoff < 0
    double loss_total = 0.0;
    std::optional<double> loss_mean;      // absent when n_loss == 0
    int n_one_trade = 0;
    int n_two_trade = 0;
    int n_no_trade = 0;
    bool single_observation = false;      // std_error degenerate at T == 1
};

/// Payoff of one committed leg at the realized spread. The plan commits
/// before prices are revealed, so an adverse realization goes negative.
inline double realized_leg_payoff(double realized_spread, const TradeConfig& config,
                                  Direction direction, double available_charge) {
    check_config(config);
    const double favorable =
        direction == Direction::BuyThenSell ? -realized_spread : realized_spread;
    return (config.eta * favorable - config.cost) * available_charge;
}

struct DayResult {
    Date date;
    TradePlan plan;
    std::vector<double> leg_realized;  // realized payoff per leg
    double realized_payoff = 0.0;
};

struct BacktestResult {
    std::vector<DayResult> days;

    PayoffVector payoff_vector() const {
        PayoffVector v;
        v.payoffs.reserve(days.size());
        v.leg_counts.reserve(days.size());
        for (const auto& d : days) {
            v.payoffs.push_back(d.realized_payoff);
            v.leg_counts.push_back(static_cast<int>(d.plan.legs.size()));
        }
        return v;
    }
};

/// Plan each day on forecasts alone, then score the committed legs against
/// the realized spreads. Forecast days and price days must line up one-to-one.
inline BacktestResult run_backtest(const ForecastSet& forecasts,
                                   const std::vector<HourlyPriceDay>& actual_prices,
                                   const TradeConfig& config) {
    check_config(config);
    if (forecasts.days.size() != actual_prices.size())
        throw alignment_error("forecast days (" + std::to_string(forecasts.days.size()) +
                              ") != price days (" + std::to_string(actual_prices.size()) + ")");
    for (std::size_t t = 0; t < actual_prices.size(); ++t)
        if (forecasts.days[t].date != actual_prices[t].date)
            throw alignment_error("date mismatch at index " + std::to_string(t) + ": forecast " +
                                  format_date(forecasts.days[t].date) + " vs prices " +
                                  format_date(actual_prices[t].date));
    check_forecast_set(forecasts);

    BacktestResult result;
    result.days.reserve(actual_prices.size());
    for (std::size_t t = 0; t < actual_prices.size(); ++t) {
        DayResult day;
        day.date = actual_prices[t].date;
        day.plan = optimize(forecasts.days[t], config);
        const SpreadVector realized = compute_spreads(actual_prices[t]);
        double total = 0.0;
        for (const auto& leg : day.plan.legs) {
            const double pay = realized_leg_payoff(realized[spread_index(leg.spread)], config,
                                                   leg.direction, leg.volume);
            day.leg_realized.push_back(pay);
            total += pay;
        }
        day.realized_payoff = total;
        result.days.push_back(std::move(day));
    }
    return result;
}

/// Summary statistics over a realized payoff vector. Sums run left to right
/// so repeated runs reproduce bit-identical figures.
inline SummaryStats summarize(const PayoffVector& payoffs) {
    const auto& pi = payoffs.payoffs;
    if (pi.empty()) throw parameter_error("cannot summarize an empty payoff vector");
    if (!payoffs.leg_counts.empty() && payoffs.leg_counts.size() != pi.size())
        throw parameter_error("leg counts and payoffs disagree in length");

    SummaryStats st;
    const auto T = static_cast<double>(pi.size());
    for (double p : pi) st.pi_total += p;
    st.pi_mean = st.pi_total / T;

    if (pi.size() == 1) {
        st.std_error = 0.0;
        st.single_observation = true;
    } else {
        double ss = 0.0;
        for (double p : pi) {
            const double d = p - st.pi_mean;
            ss += d * d;
        }
        st.std_error = std::sqrt(ss / (T - 1.0)) / std::sqrt(T);
    }

    for (double p : pi) {
        if (p < 0.0) {
            ++st.n_loss;
            st.loss_total += p;
        }
    }
    if (st.n_loss > 0) st.loss_mean = st.loss_total / st.n_loss;

    for (int c : payoffs.leg_counts) {
        if (c == 0)
            ++st.n_no_trade;
        else if (c == 1)
            ++st.n_one_trade;
        else
            ++st.n_two_trade;
    }
    return st;
}

}  // namespace sparb
