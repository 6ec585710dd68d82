#include "ut/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ut/distribution.hpp"

namespace ut {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t rep_seed(std::uint64_t base, std::size_t ti, std::size_t ni, int r) {
    const std::uint64_t g = 0x9E3779B97F4A7C15ULL;
    std::uint64_t s = detail::mix64(base + g * (ti + 1));
    s = detail::mix64(s + g * (ni + 1));
    s = detail::mix64(s + g * (static_cast<std::uint64_t>(r) + 1));
    return s;
}

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fixed5(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5f", v);
    return buf;
}

}  // namespace

std::vector<MetricRow> run_study(const StudyConfig& cfg_in) {
    StudyConfig cfg = cfg_in;
    if (cfg.methods.empty())
        cfg.methods.assign(kAllMethods.begin(), kAllMethods.end());
    if (cfg.replications < 1)
        throw std::invalid_argument("run_study: replications must be >= 1");
    if (cfg.thetas.empty() || cfg.ns.empty())
        throw std::invalid_argument("run_study: empty theta or n grid");
    for (double th : cfg.thetas)
        if (!std::isfinite(th) || !(th > 0.0))
            throw std::invalid_argument("run_study: thetas must be positive");
    for (int n : cfg.ns)
        if (n < 2) throw std::invalid_argument("run_study: every n must be >= 2");

    struct CellSpec {
        double theta;
        int n;
        std::size_t ti, ni;
    };
    std::vector<CellSpec> cells;
    for (std::size_t ti = 0; ti < cfg.thetas.size(); ++ti)
        for (std::size_t ni = 0; ni < cfg.ns.size(); ++ni)
            cells.push_back({cfg.thetas[ti], cfg.ns[ni], ti, ni});

    const std::size_t M = cfg.methods.size();
    const int N = cfg.replications;
    std::vector<std::vector<double>> est(cells.size());
    for (auto& e : est) e.assign(static_cast<std::size_t>(N) * M, kNan);

    struct Task {
        std::size_t cell;
        int r;
    };
    std::vector<Task> tasks;
    tasks.reserve(cells.size() * static_cast<std::size_t>(N));
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (int r = 0; r < N; ++r) tasks.push_back({c, r});

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) break;
            const CellSpec& cs = cells[tasks[t].cell];
            int r = tasks[t].r;
            UnitTeissier d(cs.theta);
            Sample s(sample(d, cs.n, rep_seed(cfg.base_seed, cs.ti, cs.ni, r)));
            double* slot = est[tasks[t].cell].data() + static_cast<std::size_t>(r) * M;
            for (std::size_t m = 0; m < M; ++m) {
                try {
                    FitResult fr = fit(cfg.methods[m], s);
                    if (fr.converged) slot[m] = fr.theta_hat;
                } catch (const std::exception&) {
                    // counted as a failure below
                }
            }
        }
    };
    int w = std::max(1, cfg.workers);
    if (w == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (int i = 0; i < w; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // reduction in fixed replication order so worker count cannot perturb sums
    std::vector<MetricRow> rows;
    rows.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        MetricRow row;
        row.theta = cells[c].theta;
        row.n = cells[c].n;
        row.methods = cfg.methods;
        row.bias.resize(M);
        row.mse.resize(M);
        row.mre.resize(M);
        row.failures.resize(M);
        for (std::size_t m = 0; m < M; ++m) {
            double sum_abs = 0.0, sum_sq = 0.0;
            long fail = 0;
            for (int r = 0; r < N; ++r) {
                double th = est[c][static_cast<std::size_t>(r) * M + m];
                if (!std::isfinite(th)) {
                    ++fail;
                    continue;
                }
                double dev = th - row.theta;
                sum_abs += std::fabs(dev);
                sum_sq += dev * dev;
            }
            long cnt = N - fail;
            row.failures[m] = fail;
            row.bias[m] = cnt > 0 ? sum_abs / cnt : kNan;
            row.mse[m] = cnt > 0 ? sum_sq / cnt : kNan;
            row.mre[m] = row.bias[m] / row.theta;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> rank_row(const std::vector<double>& values, bool* nonfinite_flag) {
    if (values.empty()) throw std::invalid_argument("rank_row: empty row");
    if (nonfinite_flag) *nonfinite_flag = false;
    std::vector<double> v = values;
    for (double& x : v)
        if (!std::isfinite(x)) {
            x = std::numeric_limits<double>::infinity();
            if (nonfinite_flag) *nonfinite_flag = true;
        }
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        double avg = (i + j + 2.0) / 2.0;  // mean of 1-based positions i+1..j+1
        for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

RankTable aggregate_ranks(const std::vector<MetricRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("aggregate_ranks: no rows");
    const std::vector<Method>& methods = rows.front().methods;
    const std::size_t M = methods.size();
    for (const MetricRow& r : rows)
        if (r.methods != methods)
            throw std::invalid_argument("aggregate_ranks: rows disagree on the method set");

    std::vector<double> thetas;
    std::vector<int> ns;
    std::map<std::pair<double, int>, std::size_t> where;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::find(thetas.begin(), thetas.end(), rows[i].theta) == thetas.end())
            thetas.push_back(rows[i].theta);
        if (std::find(ns.begin(), ns.end(), rows[i].n) == ns.end())
            ns.push_back(rows[i].n);
        auto key = std::make_pair(rows[i].theta, rows[i].n);
        if (where.count(key))
            throw std::invalid_argument("aggregate_ranks: duplicate cell in input");
        where[key] = i;
    }
    std::string missing;
    for (double th : thetas)
        for (int n : ns)
            if (!where.count({th, n}))
                missing += " (theta=" + shortest(th) + ", n=" + std::to_string(n) + ")";
    if (!missing.empty())
        throw std::invalid_argument("aggregate_ranks: incomplete grid; missing cells:" + missing);

    RankTable t;
    t.methods = methods;
    t.thetas = thetas;
    t.theta_totals.assign(thetas.size() * M, 0.0);
    t.total.assign(M, 0.0);
    for (std::size_t tb = 0; tb < thetas.size(); ++tb) {
        for (int n : ns) {
            const MetricRow& row = rows[where[{thetas[tb], n}]];
            RankTable::Cell cell;
            cell.theta = row.theta;
            cell.n = row.n;
            cell.rank_bias = rank_row(row.bias);
            cell.rank_mse = rank_row(row.mse);
            cell.rank_mre = rank_row(row.mre);
            cell.sum_ranks.resize(M);
            for (std::size_t m = 0; m < M; ++m)
                cell.sum_ranks[m] = cell.rank_bias[m] + cell.rank_mse[m] + cell.rank_mre[m];
            cell.partial = rank_row(cell.sum_ranks);
            for (std::size_t m = 0; m < M; ++m) {
                t.theta_totals[tb * M + m] += cell.partial[m];
                t.total[m] += cell.partial[m];
            }
            t.cells.push_back(std::move(cell));
        }
    }
    t.overall_rank = rank_row(t.total);
    return t;
}

std::string study_csv(const std::vector<MetricRow>& rows) {
    std::string out =
        "theta,n,method,bias,mse,mre,rank_bias,rank_mse,rank_mre,sum_ranks,failures\n";
    for (const MetricRow& row : rows) {
        std::vector<double> rb = rank_row(row.bias);
        std::vector<double> rm = rank_row(row.mse);
        std::vector<double> rr = rank_row(row.mre);
        for (std::size_t m = 0; m < row.methods.size(); ++m) {
            out += shortest(row.theta);
            out += ',' + std::to_string(row.n);
            out += ',';
            out += method_name(row.methods[m]);
            out += ',' + shortest(row.bias[m]);
            out += ',' + shortest(row.mse[m]);
            out += ',' + shortest(row.mre[m]);
            out += ',' + shortest(rb[m]);
            out += ',' + shortest(rm[m]);
            out += ',' + shortest(rr[m]);
            out += ',' + shortest(rb[m] + rm[m] + rr[m]);
            out += ',' + std::to_string(row.failures[m]);
            out += '\n';
        }
    }
    return out;
}

std::string study_markdown(const std::vector<MetricRow>& rows) {
    std::ostringstream os;
    for (const MetricRow& row : rows) {
        os << "### theta=" << shortest(row.theta) << ", n=" << row.n << "\n\n";
        os << "| metric |";
        for (Method m : row.methods) os << ' ' << method_name(m) << " |";
        os << "\n|---|";
        for (std::size_t m = 0; m < row.methods.size(); ++m) os << "---|";
        os << '\n';
        std::vector<double> rb = rank_row(row.bias);
        std::vector<double> rm = rank_row(row.mse);
        std::vector<double> rr = rank_row(row.mre);
        auto line = [&](const char* name, const std::vector<double>& v,
                        const std::vector<double>& rk) {
            os << "| " << name << " |";
            for (std::size_t m = 0; m < v.size(); ++m)
                os << ' ' << fixed5(v[m]) << " {" << shortest(rk[m]) << "} |";
            os << '\n';
        };
        line("BIAS", row.bias, rb);
        line("MSE", row.mse, rm);
        line("MRE", row.mre, rr);
        os << "| SumRanks |";
        for (std::size_t m = 0; m < row.methods.size(); ++m)
            os << ' ' << shortest(rb[m] + rm[m] + rr[m]) << " |";
        os << '\n';
        bool any_fail = false;
        for (long f : row.failures) any_fail |= f != 0;
        if (any_fail) {
            os << "| failures |";
            for (long f : row.failures) os << ' ' << f << " |";
            os << '\n';
        }
        os << '\n';
    }
    return os.str();
}

std::string rank_table_markdown(const RankTable& t) {
    std::ostringstream os;
    const std::size_t M = t.methods.size();
    os << "| theta | n |";
    for (Method m : t.methods) os << ' ' << method_name(m) << " |";
    os << "\n|---|---|";
    for (std::size_t m = 0; m < M; ++m) os << "---|";
    os << '\n';
    std::size_t ci = 0;
    for (std::size_t tb = 0; tb < t.thetas.size(); ++tb) {
        while (ci < t.cells.size() && t.cells[ci].theta == t.thetas[tb]) {
            os << "| " << shortest(t.cells[ci].theta) << " | " << t.cells[ci].n << " |";
            for (double p : t.cells[ci].partial) os << ' ' << shortest(p) << " |";
            os << '\n';
            ++ci;
        }
        os << "| " << shortest(t.thetas[tb]) << " | total |";
        for (std::size_t m = 0; m < M; ++m)
            os << ' ' << shortest(t.theta_totals[tb * M + m]) << " |";
        os << '\n';
    }
    os << "| SumRanks | |";
    for (double v : t.total) os << ' ' << shortest(v) << " |";
    os << "\n| Overall | |";
    for (double v : t.overall_rank) os << ' ' << shortest(v) << " |";
    os << '\n';
    return os.str();
}

}  // namespace ut
