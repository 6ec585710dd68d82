#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ut/estimation.hpp"

namespace ut {

struct StudyConfig {
    std::vector<double> thetas;
    std::vector<int> ns;
    int replications = 1000;
    std::uint64_t base_seed = 2024;
    std::vector<Method> methods;  // empty = all nine
    int workers = 1;
};

struct MetricRow {
    double theta;
    int n;
    std::vector<Method> methods;
    std::vector<double> bias, mse, mre;  // aligned with methods
    std::vector<long> failures;
};

struct RankTable {
    struct Cell {
        double theta;
        int n;
        std::vector<double> rank_bias, rank_mse, rank_mre;
        std::vector<double> sum_ranks;  // rank_bias + rank_mse + rank_mre
        std::vector<double> partial;    // re-rank of sum_ranks
    };
    std::vector<Method> methods;
    std::vector<Cell> cells;
    std::vector<double> theta_totals;   // flattened per (theta block, method): sum of partials
    std::vector<double> thetas;         // block order for theta_totals
    std::vector<double> total;          // grand total of partial ranks per method
    std::vector<double> overall_rank;   // rank of total
};

std::vector<MetricRow> run_study(const StudyConfig& cfg);

// Ascending ranks 1..k with ties averaged; non-finite entries rank last and
// set *nonfinite_flag when provided.
std::vector<double> rank_row(const std::vector<double>& values,
                             bool* nonfinite_flag = nullptr);

RankTable aggregate_ranks(const std::vector<MetricRow>& rows);

std::string study_csv(const std::vector<MetricRow>& rows);
std::string study_markdown(const std::vector<MetricRow>& rows);
std::string rank_table_markdown(const RankTable& t);

}  // namespace ut
