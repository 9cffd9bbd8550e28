// Command-line front end: exact polynomial family, substitution sequences,
// degree formulas, enumeration/sampling oracle, tower simulator, and the
// self-verification battery.  All output is deterministic for a fixed
// (arguments, seed) pair; rationals print in lowest terms.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or argument error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chacon/chacon.hpp"

namespace {

using chacon::BigRational;
using chacon::OmegaSpec;
using nlohmann::json;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CHACON_SEED")) return std::strtoull(env, nullptr, 10);
    return 42;
}

OmegaSpec omega_from_option(int p, const std::string& csv) {
    if (csv.empty()) return OmegaSpec::classic(p);
    std::vector<long long> values;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) values.push_back(std::stoll(item));
    return OmegaSpec(p, std::move(values));
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stoi(item));
    return out;
}

int run_poly(int p, long long m, bool symmetric, const std::string& format) {
    chacon::PolyFamily fam(p);
    const chacon::SparsePoly f = symmetric ? fam.symmetric(m) : fam.poly(m);
    if (format == "csv")
        std::cout << chacon::poly_to_csv(f);
    else
        std::cout << chacon::poly_to_json(f, symmetric ? 2 : 1).dump() << "\n";
    return 0;
}

int run_seq(int p, const std::string& kind_name, long long count, int tier, const std::string& format) {
    const chacon::SeqKind kind = kind_name == "lower" ? chacon::SeqKind::lower : chacon::SeqKind::upper;
    std::vector<int> values;
    if (tier >= 0) {
        values = chacon::sequence_tier(p, tier, kind);
    } else {
        values.reserve(static_cast<std::size_t>(count));
        for (long long j = 0; j < count; ++j)
            values.push_back(kind == chacon::SeqKind::upper ? chacon::degree_step(p, j)
                                                            : chacon::lower_degree_step(p, j));
    }
    if (format == "csv") {
        for (std::size_t j = 0; j < values.size(); ++j) std::cout << j << "," << values[j] << "\n";
    } else {
        for (int v : values) std::cout << v << "\n";
    }
    return 0;
}

int run_degrees(int p, long long m, long long m_max, const std::string& format) {
    const long long lo = m_max >= 0 ? 0 : m;
    const long long hi = m_max >= 0 ? m_max : m;
    if (format == "csv") {
        for (long long i = lo; i <= hi; ++i) {
            const BigRational mid = chacon::mid_degree(p, i);
            std::cout << i << "," << chacon::poly_degree(p, i) << "," << chacon::poly_lower_degree(p, i) << ","
                      << mid.numerator().str() << "," << mid.denominator().str() << "\n";
        }
    } else {
        json rows = json::array();
        for (long long i = lo; i <= hi; ++i)
            rows.push_back(json{{"m", i},
                                {"degree", chacon::poly_degree(p, i)},
                                {"lower_degree", chacon::poly_lower_degree(p, i)},
                                {"mid_degree", chacon::mid_degree(p, i).to_string()}});
        json out{{"p", p}, {"rows", rows}};
        std::cout << out.dump() << "\n";
    }
    return 0;
}

int run_oracle(int p, long long m, int K, const std::string& omega_csv, long long mc, std::uint64_t seed,
               const std::string& format) {
    const OmegaSpec omega = omega_from_option(p, omega_csv);
    if (K <= 0) K = chacon::default_enumeration_window(p, m);
    const chacon::PiDistribution dist = chacon::enumerate_pi(p, omega, m, K);
    if (format == "csv") {
        std::cout << chacon::pi_to_csv(dist);
        if (mc > 0)
            for (const auto& [v, c] : chacon::sample_pi(p, omega, m, mc, seed).counts)
                std::cout << "mc," << v << "," << c << "\n";
    } else {
        json out = chacon::pi_to_json(dist);
        if (mc > 0) {
            const auto emp = chacon::sample_pi(p, omega, m, mc, seed);
            json counts = json::array();
            for (const auto& [v, c] : emp.counts) counts.push_back(json{v, c});
            out["mc_n"] = emp.sample_count;
            out["mc_counts"] = counts;
        }
        std::cout << out.dump() << "\n";
    }
    return 0;
}

int run_sim(int p, int n, long long steps, long long samples, std::uint64_t seed, const std::string& check,
            const std::string& omega_csv, bool paper_normalizer) {
    const OmegaSpec omega = omega_csv.empty() ? chacon::lift_roof(p) : omega_from_option(p, omega_csv);
    json checks = json::array();
    json failures = json::array();
    bool pass = true;

    if (check == "conjugacy" || check == "all") {
        const auto report = chacon::check_conjugacy(p, n, samples, seed, omega);
        checks.push_back(json{{"name", "conjugacy"},
                              {"samples", report.samples},
                              {"failures", report.failures},
                              {"pass", report.failures == 0}});
        for (const auto& w : report.witnesses) failures.push_back(w);
        pass = pass && report.failures == 0;
    }
    if (check == "measure" || check == "all") {
        const auto bracket = chacon::measure_of_level(p, n, 0, 8, omega, paper_normalizer);
        const long long visits = chacon::count_floor_visits(p, n, steps, seed, omega, 0);
        const double freq = static_cast<double>(visits) / static_cast<double>(steps);
        const double q = ((bracket.lower + bracket.upper) / BigRational(2)).to_double();
        const double tol = 4.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(steps)) +
                           (bracket.upper - bracket.lower).to_double();
        const bool ok = std::abs(freq - q) <= tol + 1.0 / static_cast<double>(steps);
        checks.push_back(json{{"name", "measure"},
                              {"floor", 0},
                              {"measure_lower", bracket.lower.to_string()},
                              {"measure_upper", bracket.upper.to_string()},
                              {"steps", steps},
                              {"visits", visits},
                              {"frequency", freq},
                              {"pass", ok}});
        if (!ok) failures.push_back("measure: frequency " + std::to_string(freq) + " outside tolerance");
        pass = pass && ok;
    }
    if (check == "towers" || check == "all") {
        const long long hn = chacon::heights(p, n);
        long long bad = 0;
        for (long long s = 0; s < samples; ++s) {
            const auto x = chacon::DigitStream::sampled(p, chacon::sample_stream_seed(seed, s));
            const long long f = *chacon::eval_functional(x, omega);
            const long long i =
                static_cast<long long>(chacon::mix64(seed ^ static_cast<std::uint64_t>(s)) %
                                       static_cast<std::uint64_t>(hn + f));
            const auto lifted = chacon::lift_point(chacon::TowerPoint{n, x, i});
            const int x0 = *x.digit(0);
            const long long expected = x0 <= p - 2 ? x0 * hn + i : (p - 1) * hn + i + 1;
            if (lifted.index != expected) {
                ++bad;
                if (failures.size() < 8)
                    failures.push_back("towers: x0=" + std::to_string(x0) + " i=" + std::to_string(i));
            }
        }
        checks.push_back(json{{"name", "towers"}, {"samples", samples}, {"failures", bad}, {"pass", bad == 0}});
        pass = pass && bad == 0;
    }

    std::cout << json{{"p", p}, {"n", n}, {"checks", checks}, {"failures", failures}}.dump() << "\n";
    return pass ? 0 : 1;
}

int run_verify(const std::string& p_list_csv, long long m_max, std::uint64_t seed, long long oracle_m_max,
               long long mc_samples, long long conjugacy_samples) {
    chacon::VerifyOptions opt;
    opt.p_list = parse_int_list(p_list_csv);
    opt.m_max = m_max;
    opt.seed = seed;
    opt.oracle_m_max = oracle_m_max;
    opt.mc_samples = mc_samples;
    opt.conjugacy_samples = conjugacy_samples;
    const chacon::VerifyReport report = chacon::run_verification(opt);

    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    std::cout << json{{"checks", checks}, {"rational_ops", report.rational_ops}, {"all_pass", report.all_pass()}}
                     .dump()
              << "\n";
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations for a generalized Chacon polynomial family"};
    app.require_subcommand(1);

    int p = 3;
    long long m = 0;
    long long m_max = -1;
    bool symmetric = false;
    std::string format = "json";
    std::string kind = "upper";
    long long count = 16;
    int tier = -1;
    int K = 0;
    std::string omega_csv;
    long long mc = 0;
    std::uint64_t seed = default_seed();
    int n = 0;
    long long steps = 100'000;
    long long samples = 10'000;
    std::string check = "conjugacy";
    bool paper_normalizer = false;
    std::string p_list = "3,4,5";
    long long verify_m_max = 50;
    long long oracle_m_max = 20;
    long long mc_samples = 200'000;
    long long conjugacy_samples = 2'000;

    const auto add_p = [&p](CLI::App* cmd) {
        cmd->add_option("--p", p, "base parameter, at least 3")->check(CLI::Range(3, 1'000));
    };
    const auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* poly_cmd = app.add_subcommand("poly", "print a family polynomial");
    add_p(poly_cmd);
    poly_cmd->add_option("--m", m, "index of the polynomial")->check(CLI::NonNegativeNumber);
    poly_cmd->add_flag("--symmetric", symmetric, "emit the symmetric form (doubled exponents)");
    add_format(poly_cmd);

    CLI::App* seq_cmd = app.add_subcommand("seq", "print a substitution sequence");
    add_p(seq_cmd);
    seq_cmd->add_option("--kind", kind, "which sequence")->check(CLI::IsMember({"upper", "lower"}));
    seq_cmd->add_option("--count", count, "number of leading terms")->check(CLI::PositiveNumber);
    seq_cmd->add_option("--tier", tier, "print the whole tier of this level instead");
    add_format(seq_cmd);

    CLI::App* degrees_cmd = app.add_subcommand("degrees", "degree, lower degree and mid-degree");
    add_p(degrees_cmd);
    degrees_cmd->add_option("--m", m, "single index")->check(CLI::NonNegativeNumber);
    degrees_cmd->add_option("--m-max", m_max, "print all indices 0..m-max")->check(CLI::NonNegativeNumber);
    add_format(degrees_cmd);

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "enumeration oracle for the sum distribution");
    add_p(oracle_cmd);
    oracle_cmd->add_option("--m", m, "number of steps")->check(CLI::NonNegativeNumber);
    oracle_cmd->add_option("--K", K, "enumeration window (digits); default ceil(log_p m) + 6");
    oracle_cmd->add_option("--omega", omega_csv, "table override, comma separated, length p-1");
    oracle_cmd->add_option("--mc", mc, "also draw this many Monte Carlo samples");
    oracle_cmd->add_option("--seed", seed, "seed for Monte Carlo sampling");
    add_format(oracle_cmd);

    CLI::App* sim_cmd = app.add_subcommand("sim", "tower simulator checks");
    add_p(sim_cmd);
    sim_cmd->add_option("--n", n, "tower level")->check(CLI::Range(0, 12));
    sim_cmd->add_option("--steps", steps, "orbit length for the measure check")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--samples", samples, "sampled points for pointwise checks")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", seed, "sampling seed");
    sim_cmd->add_option("--check", check, "which check to run")
        ->check(CLI::IsMember({"conjugacy", "measure", "towers", "all"}));
    sim_cmd->add_option("--omega", omega_csv, "roof table override; default has one spacer over column p-2");
    sim_cmd->add_flag("--paper-normalizer", paper_normalizer, "normalize the measure by h_n + 1/2");

    int verify_p = 0;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification battery");
    verify_cmd->add_option("--p", verify_p, "single base (shorthand for --p-list)")->check(CLI::Range(3, 1'000));
    verify_cmd->add_option("--p-list", p_list, "comma separated bases");
    verify_cmd->add_option("--m-max", verify_m_max, "largest polynomial index")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--seed", seed, "seed for stochastic checks");
    verify_cmd->add_option("--oracle-m-max", oracle_m_max, "largest index for enumeration brackets");
    verify_cmd->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
    verify_cmd->add_option("--conjugacy-samples", conjugacy_samples, "points per conjugacy check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(poly_cmd)) return run_poly(p, m, symmetric, format);
        if (app.got_subcommand(seq_cmd)) return run_seq(p, kind, count, tier, format);
        if (app.got_subcommand(degrees_cmd)) return run_degrees(p, m, m_max, format);
        if (app.got_subcommand(oracle_cmd)) return run_oracle(p, m, K, omega_csv, mc, seed, format);
        if (app.got_subcommand(sim_cmd)) return run_sim(p, n, steps, samples, seed, check, omega_csv, paper_normalizer);
        if (app.got_subcommand(verify_cmd))
            return run_verify(verify_p >= 3 ? std::to_string(verify_p) : p_list, verify_m_max, seed, oracle_m_max,
                              mc_samples, conjugacy_samples);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
