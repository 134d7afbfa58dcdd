#pragma once

// Command-line driver. Requires the vendored CLI11 and nlohmann/json headers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "carlitz/asymptotics.hpp"
#include "carlitz/core.hpp"
#include "carlitz/roots.hpp"
#include "carlitz/rouche.hpp"
#include "carlitz/sampler.hpp"
#include "carlitz/series.hpp"
#include "carlitz/types.hpp"

#ifndef CARLITZ_VERSION
#define CARLITZ_VERSION "dev"
#endif

namespace carlitz::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kVerificationFailed = 3, kResourceGuard = 4 };

struct Settings {
    std::string format = "json";
    int digits = 30;
    unsigned prec_bits = 256;
    std::size_t order = kDefaultSeriesOrder;
    unsigned fourier_cutoff = kDefaultFourierCutoff;
    std::size_t enum_cap = kDefaultEnumerationCap;
    bool verbose = false;
};

// One OutputRecord: JSON carries everything, CSV carries `header` + `rows`.
struct Output {
    std::string command;
    json inputs = json::object();
    json values = json::object();
    std::optional<std::uint64_t> seed;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int exit_code = kOk;
};

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

inline std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    return line + "\n";
}

inline void emit(const Output& o, const Settings& s, std::ostream& out) {
    if (s.format == "csv") {
        std::vector<std::string> header = o.header;
        std::vector<std::vector<std::string>> rows = o.rows;
        if (header.empty()) {
            std::vector<std::string> row;
            for (const auto& [k, v] : o.values.items()) {
                header.push_back(k);
                row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            }
            rows.push_back(std::move(row));
        }
        out << csv_line(header);
        for (const auto& r : rows) out << csv_line(r);
        return;
    }
    json rec;
    rec["command"] = o.command;
    rec["inputs"] = o.inputs;
    rec["values"] = o.values;
    rec["meta"] = {{"tool", "carlitz"},
                   {"version", CARLITZ_VERSION},
                   {"precision_bits", s.prec_bits},
                   {"truncation_order", s.order},
                   {"fourier_cutoff", s.fourier_cutoff},
                   {"digits", s.digits},
                   {"seed", o.seed ? json(*o.seed) : json(nullptr)}};
    out << rec.dump(2) << "\n";
}

namespace detail {

inline std::string dec(const Real& x, const Settings& s) { return to_decimal(x, s.digits); }

inline std::string dbl(double x, int digits = 17) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

inline json rouche_json(const RoucheReport& r) {
    json j;
    j["radius"] = dbl(r.radius);
    j["split_terms"] = r.split_terms;
    j["j_range"] = r.j_range();
    j["certified_min_f"] = dbl(r.certified_min_f);
    j["observed_min_f"] = dbl(r.observed_min_f);
    j["observed_min_at"] = {dbl(r.observed_min_at.real()), dbl(r.observed_min_at.imag())};
    j["max_g_bound"] = dbl(r.max_g_bound);
    j["margin"] = dbl(r.margin());
    j["grid_points"] = r.grid_points;
    j["grid_step"] = dbl(r.grid_step);
    j["lipschitz_bound"] = dbl(r.lipschitz_bound);
    j["f_root_count"] = r.f_root_count;
    j["required_step"] = r.required_step ? json(dbl(*r.required_step)) : json(nullptr);
    j["passed"] = r.passed;
    return j;
}

}  // namespace detail

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Distinct part sizes in random Carlitz compositions", "carlitz"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", s.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("CARLITZ_FORMAT");
    app.add_option("--digits", s.digits, "Decimal digits for reals")
        ->check(CLI::Range(1, 100000))
        ->envname("CARLITZ_DIGITS");
    app.add_option("--prec-bits", s.prec_bits, "Working precision in bits")
        ->check(CLI::Range(64u, 1u << 20))
        ->envname("CARLITZ_PREC_BITS");
    app.add_option("--order", s.order, "Series truncation order")->envname("CARLITZ_ORDER");
    app.add_option("--fourier-cutoff", s.fourier_cutoff, "Largest |l| in the h0 partial sums")
        ->check(CLI::Range(1u, 1000u))
        ->envname("CARLITZ_FOURIER_CUTOFF");
    app.add_option("--enum-cap", s.enum_cap, "Largest n accepted by enumerate")->envname("CARLITZ_ENUM_CAP");
    app.add_flag("--verbose", s.verbose, "Log progress to stderr");

    Output o;
    std::function<void()> action;
    auto log = [&](const std::string& msg) {
        if (s.verbose) err << "[carlitz] " << msg << "\n";
    };
    auto ctx = [&] { return PrecisionContext(s.prec_bits, std::max(1e-50, std::ldexp(1.0, 16 - int(s.prec_bits)))); };

    // count
    std::size_t count_n = 0;
    std::optional<std::size_t> count_avoid;
    auto* count = app.add_subcommand("count", "Number of Carlitz compositions a_n (or a_{n,j})");
    count->add_option("--n", count_n, "Composed total")->required();
    count->add_option("--avoid", count_avoid, "Forbidden part size j")->check(CLI::PositiveNumber);
    count->callback([&] {
        action = [&] {
            o.command = "count";
            o.inputs = {{"n", count_n}, {"avoid", count_avoid ? json(*count_avoid) : json(nullptr)}};
            const BigInt c = count_avoid ? count_carlitz_avoiding(count_n, *count_avoid) : count_carlitz(count_n);
            o.values = {{"count", to_string(c)}};
        };
    });

    // expected
    std::size_t exp_n = 0;
    bool exp_exact = false, exp_asym = false, exp_series = false, exp_all = false;
    auto* expected = app.add_subcommand("expected", "Expected number of distinct part sizes E[D_n]");
    expected->add_option("--n", exp_n, "Composed total")->required()->check(CLI::PositiveNumber);
    expected->add_flag("--exact", exp_exact, "Exact rational from the count tables");
    expected->add_flag("--asym", exp_asym, "Asymptotic expansion with the h0 fluctuation");
    expected->add_flag("--series", exp_series, "Exact rational from generating-function coefficients");
    expected->add_flag("--all", exp_all, "All pipelines");
    expected->callback([&] {
        action = [&] {
            o.command = "expected";
            if (exp_all) exp_exact = exp_asym = exp_series = true;
            if (!exp_exact && !exp_asym && !exp_series) exp_exact = true;
            o.inputs = {{"n", exp_n}};
            const PrecisionContext c = ctx();
            PrecisionGuard guard(c);
            o.header = {"n", "pipeline", "value", "decimal"};
            if (exp_exact) {
                log("exact pass over " + std::to_string(exp_n) + " count tables");
                const auto e = expected_distinct_exact(exp_n);
                o.values["exact"] = to_string(e.value);
                o.values["exact_decimal"] = detail::dec(to_real(e.value), s);
                o.rows.push_back({std::to_string(exp_n), "exact", to_string(e.value), detail::dec(to_real(e.value), s)});
            }
            if (exp_series) {
                if (exp_n > s.order)
                    throw std::invalid_argument("--series needs n <= --order (" + std::to_string(s.order) + ")");
                const Rational v = expected_distinct_series(exp_n);
                o.values["series"] = to_string(v);
                o.rows.push_back({std::to_string(exp_n), "series", to_string(v), detail::dec(to_real(v), s)});
            }
            if (exp_asym) {
                const auto p = make_asymptotic_params(c, s.fourier_cutoff);
                const Real v = expected_distinct_asymptotic(exp_n, p);
                o.values["asymptotic"] = detail::dec(v, s);
                o.rows.push_back({std::to_string(exp_n), "asymptotic", "", detail::dec(v, s)});
            }
        };
    });

    // rho
    std::optional<std::size_t> rho_j;
    auto* rho = app.add_subcommand("rho", "Dominant singularity rho, or rho_j with its residue A_j");
    rho->add_option("--j", rho_j, "Avoided part size j (>= 2)");
    rho->callback([&] {
        action = [&] {
            o.command = "rho";
            o.inputs = {{"j", rho_j ? json(*rho_j) : json(nullptr)}};
            const PrecisionContext c = ctx();
            PrecisionGuard guard(c);
            const Real r = find_rho(c);
            if (!rho_j) {
                o.values = {{"rho", detail::dec(r, s)}};
                return;
            }
            const Real rj = find_rho_j(*rho_j, c, r);
            o.values = {{"rho_j", detail::dec(rj, s)}, {"residue_A_j", detail::dec(residue_Aj(*rho_j, c, rj), s)}};
        };
    });

    // constants
    auto* cons = app.add_subcommand("constants", "C1, C2, fluctuation amplitude, sigma'(rho), alpha");
    cons->callback([&] {
        action = [&] {
            o.command = "constants";
            const PrecisionContext c = ctx();
            PrecisionGuard guard(c);
            const auto p = make_asymptotic_params(c, s.fourier_cutoff);
            const auto k = constants(p);
            o.values = {{"C1", detail::dec(k.C1, s)},
                        {"C2", detail::dec(k.C2, s)},
                        {"C2_gamma_flipped", detail::dec(k.C2_gamma_flipped, s)},
                        {"amplitude_bound", detail::dec(k.amplitude_bound, s)},
                        {"sigma_prime_rho", detail::dec(p.sigma_prime_rho, s)},
                        {"alpha", detail::dec(p.alpha, s)},
                        {"rho", detail::dec(p.rho, s)},
                        {"L", detail::dec(p.L, s)},
                        {"euler_gamma", detail::dec(p.euler_gamma, s)}};
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Certified checks on circles");
    verify->require_subcommand(1);
    std::string preset;
    double grid_step = 0.0;
    auto* vr = verify->add_subcommand("rouche", "Rouche splitting certificate");
    vr->add_option("--preset", preset, "j6 | j2 | j345")->required()->check(CLI::IsMember({"j6", "j2", "j345"}));
    vr->add_option("--grid-step", grid_step, "Arc length between samples (0 = automatic)");
    vr->callback([&] {
        action = [&] {
            o.command = "verify rouche";
            o.inputs = {{"preset", preset}, {"grid_step", detail::dbl(grid_step)}};
            log("sampling preset " + preset);
            const auto reports = rouche_verify_preset(parse_rouche_preset(preset), grid_step);
            bool all = true;
            json arr = json::array();
            o.header = {"radius", "split_terms", "j_range", "certified_min_f", "observed_min_f", "max_g_bound",
                        "grid_points", "lipschitz_bound", "f_root_count", "passed"};
            for (const auto& r : reports) {
                all = all && r.passed;
                arr.push_back(detail::rouche_json(r));
                o.rows.push_back({detail::dbl(r.radius), std::to_string(r.split_terms), r.j_range(),
                                  detail::dbl(r.certified_min_f), detail::dbl(r.observed_min_f),
                                  detail::dbl(r.max_g_bound), std::to_string(r.grid_points),
                                  detail::dbl(r.lipschitz_bound), std::to_string(r.f_root_count),
                                  r.passed ? "true" : "false"});
            }
            o.values = {{"reports", arr}, {"passed", all}};
            if (!all) o.exit_code = kVerificationFailed;
        };
    });
    unsigned roots_j = 0;
    double roots_radius = 0;
    auto* vroots = verify->add_subcommand("roots", "Roots of sigma_j(z) = 1 inside |z| < radius");
    vroots->add_option("--j", roots_j, "Avoided part size j")->required()->check(CLI::PositiveNumber);
    vroots->add_option("--radius", roots_radius, "Circle radius in (0, 1)")->required()->check(CLI::Range(0.0, 1.0));
    vroots->callback([&] {
        action = [&] {
            o.command = "verify roots";
            o.inputs = {{"j", roots_j}, {"radius", detail::dbl(roots_radius)}};
            const auto r = count_roots_in_disc(roots_j, roots_radius);
            o.values = {{"roots", std::to_string(r.roots)},
                        {"min_modulus", detail::dbl(r.min_modulus)},
                        {"lipschitz_bound", detail::dbl(r.lipschitz_bound)},
                        {"grid_points", std::to_string(r.grid_points)}};
        };
    });

    // compare
    std::vector<std::size_t> n_list;
    auto* compare = app.add_subcommand("compare", "Exact vs tail series vs theorem asymptotic");
    compare->add_option("--n-list", n_list, "Comma separated n values (each >= 2)")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    compare->callback([&] {
        action = [&] {
            o.command = "compare";
            o.inputs = {{"n_list", n_list}};
            const PrecisionContext c = ctx();
            PrecisionGuard guard(c);
            const auto p = make_asymptotic_params(c, s.fourier_cutoff);
            const Fluctuation h(p);
            o.header = {"n", "exact", "tail_series", "theorem", "err_tail", "err_theorem"};
            json rows = json::array();
            for (std::size_t n : n_list) {
                log("n = " + std::to_string(n));
                const Real exact = to_real(expected_distinct_exact(n).value);
                const Real tail = tail_series_value(n, p);
                const Real thm = expected_distinct_asymptotic(n, p, h);
                const Real et = boost::multiprecision::abs(Real(exact - tail));
                const Real eh = boost::multiprecision::abs(Real(exact - thm));
                std::vector<std::string> row{std::to_string(n), detail::dec(exact, s), detail::dec(tail, s),
                                             detail::dec(thm, s), detail::dec(et, s), detail::dec(eh, s)};
                json r;
                for (std::size_t i = 0; i < row.size(); ++i) r[o.header[i]] = row[i];
                rows.push_back(r);
                o.rows.push_back(std::move(row));
            }
            o.values = {{"rows", rows}};
        };
    });

    // sample
    std::size_t sample_n = 0;
    std::uint64_t trials = 0, seed = 0;
    unsigned workers = 1;
    std::string estimator = "distinct";
    auto* sample = app.add_subcommand("sample", "Monte Carlo estimates");
    sample->add_option("--n", sample_n, "Composed total")->required()->check(CLI::PositiveNumber);
    sample->add_option("--trials", trials, "Number of draws (>= 100)")->required();
    sample->add_option("--seed", seed, "RNG seed")->required();
    sample->add_option("--workers", workers, "Parallel streams")->check(CLI::Range(1u, 1024u));
    sample->add_option("--estimator", estimator, "distinct | avoid1 | acceptance | parts")
        ->check(CLI::IsMember({"distinct", "avoid1", "acceptance", "parts"}));
    sample->callback([&] {
        action = [&] {
            o.command = "sample";
            o.seed = seed;
            o.inputs = {{"n", sample_n}, {"trials", trials}, {"seed", seed}, {"workers", workers},
                        {"estimator", estimator}};
            SampleStats st;
            std::optional<Rational> reference;
            if (estimator == "distinct") {
                st = estimate_expected_distinct(sample_n, trials, seed, workers);
                if (sample_n <= 200) reference = expected_distinct_exact(sample_n).value;
            } else if (estimator == "avoid1") {
                st = estimate_avoid1_prob(sample_n, trials, seed, workers);
                reference = Rational(count_compositions_avoiding_one(sample_n), BigInt(1) << (sample_n - 1));
            } else if (estimator == "acceptance") {
                st = estimate_acceptance_rate(sample_n, trials, seed, workers);
                reference = Rational(count_carlitz(sample_n), BigInt(1) << (sample_n - 1));
            } else {
                st = estimate_part_count(sample_n, trials, seed, workers);
                reference = Rational(BigInt(sample_n + 1), BigInt(2));
            }
            o.values = {{"trials", std::to_string(st.trials)},
                        {"mean", detail::dbl(st.mean)},
                        {"std_error", detail::dbl(st.std_error)}};
            if (reference) {
                o.values["reference"] = to_string(*reference);
                const double ref = static_cast<double>(*reference);
                o.values["z_score"] = detail::dbl(st.std_error > 0 ? (st.mean - ref) / st.std_error : 0.0, 6);
            }
        };
    });

    // enumerate
    std::size_t enum_n = 0;
    auto* enumerate = app.add_subcommand("enumerate", "List the Carlitz compositions of n");
    enumerate->add_option("--n", enum_n, "Composed total")->required();
    enumerate->callback([&] {
        action = [&] {
            o.command = "enumerate";
            o.inputs = {{"n", enum_n}, {"cap", s.enum_cap}};
            const auto list = enumerate_carlitz(enum_n, s.enum_cap);
            json arr = json::array();
            o.header = {"index", "composition", "parts", "distinct_sizes"};
            for (std::size_t i = 0; i < list.size(); ++i) {
                arr.push_back(to_string(list[i]));
                o.rows.push_back({std::to_string(i), to_string(list[i]), std::to_string(list[i].size()),
                                  std::to_string(distinct_sizes(list[i]))});
            }
            o.values = {{"count", std::to_string(list.size())}, {"compositions", arr}};
        };
    });

    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (!action) throw std::invalid_argument("no subcommand given");
        action();
    } catch (const ResourceGuardError& e) {
        err << "resource guard: " << e.what() << "\n";
        return kResourceGuard;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    emit(o, s, out);
    if (o.exit_code == kVerificationFailed) err << "verification failed\n";
    return o.exit_code;
}

}  // namespace carlitz::cli
