#include "ut/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ut/characterization.hpp"
#include "ut/dataset.hpp"
#include "ut/distribution.hpp"
#include "ut/estimation.hpp"
#include "ut/gof.hpp"
#include "ut/moments.hpp"
#include "ut/simulation.hpp"

namespace ut {
namespace {

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fixed(double v, int places) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", places, v);
    return buf;
}

nlohmann::json fit_json(const FitResult& fr) {
    nlohmann::json j{{"method", method_name(fr.method)},
                     {"theta_hat", fr.theta_hat},
                     {"objective_at_opt", fr.objective_at_opt},
                     {"converged", fr.converged},
                     {"iterations", fr.iterations}};
    if (fr.std_error)
        j["std_error"] = *fr.std_error;
    else
        j["std_error"] = nullptr;
    return j;
}

struct DistArgs {
    double theta = 1.0;
    bool want_pdf = false, want_cdf = false, want_q = false, want_h = false;
    std::vector<double> values;
    bool json = false;
};

int run_dist(const DistArgs& a) {
    int picked = a.want_pdf + a.want_cdf + a.want_q + a.want_h;
    if (picked != 1) {
        std::cerr << "dist: pick exactly one of --pdf/--cdf/--quantile/--hazard\n";
        return 1;
    }
    UnitTeissier d(a.theta);
    const char* op = a.want_pdf ? "pdf" : a.want_cdf ? "cdf" : a.want_q ? "quantile" : "hazard";
    std::vector<double> outs;
    for (double v : a.values) {
        if (a.want_pdf) outs.push_back(pdf(d, v));
        else if (a.want_cdf) outs.push_back(cdf(d, v));
        else if (a.want_q) outs.push_back(quantile(d, v));
        else outs.push_back(hazard(d, v));
    }
    if (a.json) {
        nlohmann::json j{{"theta", a.theta}, {"op", op}, {"inputs", a.values}, {"outputs", outs}};
        std::cout << j.dump() << "\n";
    } else {
        for (double o : outs) std::cout << fixed(o, 8) << "\n";
    }
    return 0;
}

struct SampleArgs {
    double theta = 1.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_sample(const SampleArgs& a) {
    UnitTeissier d(a.theta);
    std::vector<double> xs = sample(d, a.n, a.seed);
    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) {
            std::cerr << "sample: cannot open " << a.out << "\n";
            return 1;
        }
    }
    std::ostream& os = a.out.empty() ? std::cout : file;
    for (double x : xs) os << shortest(x) << "\n";
    return 0;
}

struct MomentArgs {
    double theta = 1.0;
    int order_stats = 0;
    bool lmoms = false;
    std::string format = "md";
};

int run_moments(const MomentArgs& a) {
    UnitTeissier d(a.theta);
    bool md = a.format == "md", csv = a.format == "csv";
    nlohmann::json j;
    j["theta"] = a.theta;

    double m1 = raw_moment(d, 1), m2 = raw_moment(d, 2);
    double var = m2 - m1 * m1;
    if (md) {
        std::cout << "| theta | E(X) | E(X^2) | Var |\n|---|---|---|---|\n| "
                  << shortest(a.theta) << " | " << fixed(m1, 5) << " | "
                  << fixed(m2, 5) << " | " << fixed(var, 5) << " |\n\n";
    } else if (csv) {
        std::cout << "theta,mean,second_moment,variance\n"
                  << shortest(a.theta) << ',' << shortest(m1) << ','
                  << shortest(m2) << ',' << shortest(var) << "\n";
    } else {
        j["mean"] = m1;
        j["second_moment"] = m2;
        j["variance"] = var;
    }

    if (a.order_stats > 0) {
        if (md) {
            std::cout << "| n | r | mean | second | variance |\n|---|---|---|---|---|\n";
        } else if (csv) {
            std::cout << "n,r,mean,second,variance\n";
        }
        nlohmann::json rows = nlohmann::json::array();
        for (int n = 1; n <= a.order_stats; ++n)
            for (int r = 1; r <= n; ++r) {
                double om1 = os_moment_t21(d, {n, r, 1});
                double om2 = os_moment_t21(d, {n, r, 2});
                double ov = os_variance(d, {n, r, 1});
                if (md)
                    std::cout << "| " << n << " | " << r << " | " << fixed(om1, 5)
                              << " | " << fixed(om2, 5) << " | " << fixed(ov, 5) << " |\n";
                else if (csv)
                    std::cout << n << ',' << r << ',' << shortest(om1) << ','
                              << shortest(om2) << ',' << shortest(ov) << "\n";
                else
                    rows.push_back({{"n", n}, {"r", r}, {"mean", om1},
                                    {"second", om2}, {"variance", ov}});
            }
        if (md) std::cout << "\n";
        if (!md && !csv) j["order_stats"] = rows;
    }

    if (a.lmoms) {
        LMomentSet lm = l_moments(d);
        if (md) {
            std::cout << "| lambda1 | lambda2 | lambda3 | lambda4 | L-CV | tau3 | tau4 |\n"
                      << "|---|---|---|---|---|---|---|\n| " << fixed(lm.lambda1, 5)
                      << " | " << fixed(lm.lambda2, 5) << " | " << fixed(lm.lambda3, 5)
                      << " | " << fixed(lm.lambda4, 5) << " | " << fixed(lm.l_cv, 5)
                      << " | " << fixed(lm.tau3, 5) << " | " << fixed(lm.tau4, 5) << " |\n";
        } else if (csv) {
            std::cout << "lambda1,lambda2,lambda3,lambda4,l_cv,tau3,tau4\n"
                      << shortest(lm.lambda1) << ',' << shortest(lm.lambda2) << ','
                      << shortest(lm.lambda3) << ',' << shortest(lm.lambda4) << ','
                      << shortest(lm.l_cv) << ',' << shortest(lm.tau3) << ','
                      << shortest(lm.tau4) << "\n";
        } else {
            j["l_moments"] = {{"lambda1", lm.lambda1}, {"lambda2", lm.lambda2},
                              {"lambda3", lm.lambda3}, {"lambda4", lm.lambda4},
                              {"l_cv", lm.l_cv},       {"tau3", lm.tau3},
                              {"tau4", lm.tau4}};
        }
    }
    if (!md && !csv) std::cout << j.dump() << "\n";
    return 0;
}

struct FitArgs {
    std::string data;
    std::string method = "all";
    bool json = false;
};

int run_fit(const FitArgs& a) {
    DatasetFile df = parse_dataset(a.data);
    Sample s(df.values);
    std::vector<Method> methods;
    if (a.method == "all")
        methods.assign(kAllMethods.begin(), kAllMethods.end());
    else
        methods.push_back(method_from_string(a.method));

    std::vector<FitResult> fits;
    fits.reserve(methods.size());
    for (Method m : methods) fits.push_back(fit(m, s));

    bool any_bad = false;
    const FitResult* mle = nullptr;
    for (const FitResult& fr : fits) {
        any_bad |= !fr.converged;
        if (fr.method == Method::MLE) mle = &fr;
    }

    if (a.json) {
        nlohmann::json j;
        j["data"] = df.path;
        j["n"] = s.n;
        j["fits"] = nlohmann::json::array();
        for (const FitResult& fr : fits) j["fits"].push_back(fit_json(fr));
        if (mle && mle->converged) {
            GofReport rep = gof_report(s, mle->theta_hat);
            j["gof"] = nlohmann::json::parse(to_json(rep));
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "data: " << df.path << " (n=" << s.n << ")\n";
        std::cout << "method   theta_hat  std_error  objective     converged  iterations\n";
        for (const FitResult& fr : fits) {
            char line[160];
            std::snprintf(line, sizeof(line), "%-8s %9.4f  %9s  %12.6f  %-9s  %d\n",
                          method_name(fr.method), fr.theta_hat,
                          fr.std_error ? fixed(*fr.std_error, 4).c_str() : "-",
                          fr.objective_at_opt, fr.converged ? "yes" : "NO",
                          fr.iterations);
            std::cout << line;
        }
        if (mle && mle->converged) {
            std::cout << "\ngoodness of fit at the MLE:\n"
                      << to_text(gof_report(s, mle->theta_hat));
        }
    }
    return any_bad ? 2 : 0;
}

struct GofArgs {
    std::string data;
    double theta = 1.0;
    bool json = false;
};

int run_gof(const GofArgs& a) {
    DatasetFile df = parse_dataset(a.data);
    Sample s(df.values);
    GofReport rep = gof_report(s, a.theta);
    std::cout << (a.json ? to_json(rep) + "\n" : to_text(rep));
    return 0;
}

struct VerifyArgs {
    double theta = 1.0;
    int points = 50;
};

int run_verify(const VerifyArgs& a) {
    UnitTeissier d(a.theta);
    std::vector<double> grid;
    for (int i = 0; i < a.points; ++i)
        grid.push_back(0.02 + (0.98 - 0.02) * i / (a.points - 1.0));
    std::vector<TruncatedMomentCheck> checks = verify_characterization(d, grid);
    double lower = 0.0, upper = 0.0, decomp = 0.0;
    double ex = raw_moment(d, 1);
    for (std::size_t i = 0; i < checks.size(); i += 2) {
        lower = std::fmax(lower, checks[i].abs_gap);
        upper = std::fmax(upper, checks[i + 1].abs_gap);
        decomp = std::fmax(decomp, std::fabs(checks[i].lhs + checks[i + 1].lhs - ex));
    }
    std::cout << "characterization checks, theta=" << shortest(a.theta) << ", "
              << a.points << " grid points\n";
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "max |g*f - integral(0,x)|  %.3e\n"
                  "max |h*f - integral(x,1)|  %.3e\n"
                  "max decomposition gap      %.3e\n",
                  lower, upper, decomp);
    std::cout << buf;
    return 0;
}

struct SimArgs {
    std::string config;
    bool paper_grid = false;
    int replications = -1;
    std::int64_t seed = -1;
    std::string out;
    int workers = 1;
};

int run_simulate(const SimArgs& a) {
    StudyConfig cfg;
    if (a.paper_grid != a.config.empty()) {
        std::cerr << "simulate: pass exactly one of --config FILE or --paper-grid\n";
        return 1;
    }
    if (a.paper_grid) {
        cfg.thetas = {0.26, 0.35, 0.5, 1.0, 1.25, 1.75, 2.0, 2.5, 3.0, 3.2};
        cfg.ns = {30, 50, 100, 250, 500};
        cfg.replications = 1000;
    } else {
        std::ifstream in(a.config);
        if (!in) {
            std::cerr << "simulate: cannot open " << a.config << "\n";
            return 1;
        }
        nlohmann::json j = nlohmann::json::parse(in);
        cfg.thetas = j.at("thetas").get<std::vector<double>>();
        cfg.ns = j.at("ns").get<std::vector<int>>();
        if (j.contains("replications")) cfg.replications = j["replications"].get<int>();
        if (j.contains("base_seed")) cfg.base_seed = j["base_seed"].get<std::uint64_t>();
        if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
        if (j.contains("methods"))
            for (const auto& name : j["methods"])
                cfg.methods.push_back(method_from_string(name.get<std::string>()));
    }
    if (a.replications > 0) cfg.replications = a.replications;
    if (a.seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(a.seed);
    cfg.workers = std::max(cfg.workers, a.workers);

    std::vector<MetricRow> rows = run_study(cfg);
    std::cout << study_markdown(rows);
    std::cout << rank_table_markdown(aggregate_ranks(rows));
    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f) {
            std::cerr << "simulate: cannot open " << a.out << "\n";
            return 1;
        }
        f << study_csv(rows);
    }
    return 0;
}

int run_tables(int which) {
    if (which == 1) {
        std::cout << "means\n| n | r | theta=1 | theta=2 | theta=3 | theta=4 |\n"
                  << "|---|---|---|---|---|---|\n";
        for (int pass = 0; pass < 3; ++pass) {
            if (pass == 1)
                std::cout << "\nsecond moments\n| n | r | theta=1 | theta=2 | theta=3 | theta=4 |\n"
                          << "|---|---|---|---|---|---|\n";
            if (pass == 2)
                std::cout << "\nvariances\n| n | r | theta=1 | theta=2 | theta=3 | theta=4 |\n"
                          << "|---|---|---|---|---|---|\n";
            for (int n = 1; n <= 5; ++n)
                for (int r = 1; r <= n; ++r) {
                    std::cout << "| " << n << " | " << r << " |";
                    for (int th = 1; th <= 4; ++th) {
                        UnitTeissier d(th);
                        double v = pass == 0 ? os_moment_t21(d, {n, r, 1})
                                 : pass == 1 ? os_moment_t21(d, {n, r, 2})
                                             : os_variance(d, {n, r, 1});
                        std::cout << ' ' << fixed(v, 5) << " |";
                    }
                    std::cout << "\n";
                }
        }
        return 0;
    }
    if (which == 2) {
        std::cout << "| quantity | theta=1 | theta=2 | theta=3 | theta=4 |\n"
                  << "|---|---|---|---|---|\n";
        const char* names[7] = {"lambda1", "lambda2", "lambda3", "lambda4",
                                "L-CV", "tau3", "tau4"};
        double vals[7][4];
        for (int th = 1; th <= 4; ++th) {
            LMomentSet lm = l_moments(UnitTeissier(th));
            double v[7] = {lm.lambda1, lm.lambda2, lm.lambda3, lm.lambda4,
                           lm.l_cv, lm.tau3, lm.tau4};
            for (int q = 0; q < 7; ++q) vals[q][th - 1] = v[q];
        }
        for (int q = 0; q < 7; ++q) {
            std::cout << "| " << names[q] << " |";
            for (int th = 0; th < 4; ++th) std::cout << ' ' << fixed(vals[q][th], 5) << " |";
            std::cout << "\n";
        }
        return 0;
    }
    if (which == 12) {
        DatasetFile df = parse_dataset("risk73");
        Sample s(df.values);
        FitResult fr = fit(Method::MLE, s);
        GofReport rep = gof_report(s, fr.theta_hat);
        std::cout << "UT row, insurance-risk data (n=" << s.n << ")\n"
                  << "theta_hat (SE)  " << fixed(fr.theta_hat, 4) << " ("
                  << (fr.std_error ? fixed(*fr.std_error, 4) : std::string("-")) << ")\n"
                  << to_text(rep);
        return fr.converged ? 0 : 2;
    }
    std::cerr << "tables: --which must be 1, 2, or 12\n";
    return 1;
}

}  // namespace

int cmd_dispatch(const std::vector<std::string>& args) {
    CLI::App app{"unit Teissier distribution toolkit"};
    app.name("ut");
    app.require_subcommand(1);

    DistArgs da;
    CLI::App* dist_cmd = app.add_subcommand("dist", "evaluate pdf/cdf/quantile/hazard");
    dist_cmd->add_option("--theta", da.theta, "shape parameter")->required();
    dist_cmd->add_flag("--pdf", da.want_pdf);
    dist_cmd->add_flag("--cdf", da.want_cdf);
    dist_cmd->add_flag("--quantile", da.want_q);
    dist_cmd->add_flag("--hazard", da.want_h);
    dist_cmd->add_option("values", da.values, "evaluation points")->required();
    dist_cmd->add_flag("--json", da.json);

    SampleArgs sa;
    CLI::App* sample_cmd = app.add_subcommand("sample", "draw inverse-transform samples");
    sample_cmd->add_option("--theta", sa.theta)->required();
    sample_cmd->add_option("-n,--n", sa.n)->required();
    sample_cmd->add_option("--seed", sa.seed)->required();
    sample_cmd->add_option("--out", sa.out, "write one value per line here");

    MomentArgs ma;
    CLI::App* mom_cmd = app.add_subcommand("moments", "raw/order-statistic/L-moments");
    mom_cmd->add_option("--theta", ma.theta)->required();
    mom_cmd->add_option("--order-stats", ma.order_stats, "max n for the order-statistic block");
    mom_cmd->add_flag("--l-moments", ma.lmoms);
    mom_cmd->add_option("--format", ma.format)->check(CLI::IsMember({"csv", "md", "json"}));

    FitArgs fa;
    CLI::App* fit_cmd = app.add_subcommand("fit", "estimate theta from data");
    fit_cmd->add_option("--data", fa.data, "file path or the tag risk73")->required();
    fit_cmd->add_option("--method", fa.method, "all or one of the nine estimators");
    fit_cmd->add_flag("--json", fa.json);

    GofArgs ga;
    CLI::App* gof_cmd = app.add_subcommand("gof", "goodness-of-fit report at a given theta");
    gof_cmd->add_option("--data", ga.data)->required();
    gof_cmd->add_option("--theta", ga.theta)->required();
    gof_cmd->add_flag("--json", ga.json);

    VerifyArgs va;
    CLI::App* ver_cmd = app.add_subcommand("verify", "truncated-moment characterization checks");
    ver_cmd->add_option("--theta", va.theta)->required();
    ver_cmd->add_option("--grid-points", va.points)->check(CLI::Range(2, 100000));

    SimArgs sma;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimator comparison");
    sim_cmd->add_option("--config", sma.config, "JSON study config");
    sim_cmd->add_flag("--paper-grid", sma.paper_grid, "full 10-theta x 5-n grid, N=1000 (slow)");
    sim_cmd->add_option("--replications", sma.replications);
    sim_cmd->add_option("--seed", sma.seed);
    sim_cmd->add_option("--out", sma.out, "CSV output path");
    sim_cmd->add_option("--workers", sma.workers)->check(CLI::Range(1, 256));

    int which = 0;
    CLI::App* tab_cmd = app.add_subcommand("tables", "regenerate the golden tables");
    tab_cmd->add_option("--which", which)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (dist_cmd->parsed()) return run_dist(da);
        if (sample_cmd->parsed()) return run_sample(sa);
        if (mom_cmd->parsed()) return run_moments(ma);
        if (fit_cmd->parsed()) return run_fit(fa);
        if (gof_cmd->parsed()) return run_gof(ga);
        if (ver_cmd->parsed()) return run_verify(va);
        if (sim_cmd->parsed()) return run_simulate(sma);
        if (tab_cmd->parsed()) return run_tables(which);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 1;
}

int cmd_dispatch(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cmd_dispatch(args);
}

}  // namespace ut
