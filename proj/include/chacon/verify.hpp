#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chacon/digit_stream.hpp"
#include "chacon/odometer.hpp"
#include "chacon/oracle.hpp"
#include "chacon/poly_family.hpp"
#include "chacon/rational.hpp"
#include "chacon/sparse_poly.hpp"
#include "chacon/substitution.hpp"

namespace chacon {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string witness;  // first counterexample, empty when passing

    static CheckResult ok(std::string name) { return {std::move(name), true, {}}; }
    static CheckResult fail(std::string name, std::string witness) {
        return {std::move(name), false, std::move(witness)};
    }
};

using DegreeFn = std::function<long long(int, long long)>;

namespace checks {

inline CheckResult base_cases(const std::vector<int>& p_list) {
    for (int p : p_list) {
        PolyFamily fam(p);
        if (fam.poly(0) != SparsePoly::constant(BigRational(1)))
            return CheckResult::fail("base_cases", "p=" + std::to_string(p) + ": index 0 is not 1");
        const SparsePoly expected = scale_shift(geometric_sum(1, p - 1), BigRational(1, p - 1), 0);
        if (fam.poly(1) != expected)
            return CheckResult::fail("base_cases", "p=" + std::to_string(p) + ": wrong index-1 polynomial");
    }
    return CheckResult::ok("base_cases");
}

inline CheckResult palindromicity(const std::vector<int>& p_list, long long m_max) {
    for (int p : p_list) {
        PolyFamily fam(p);
        for (long long m = 0; m <= m_max; ++m)
            if (!is_palindromic(fam.poly(m)))
                return CheckResult::fail("palindromicity",
                                         "p=" + std::to_string(p) + " m=" + std::to_string(m));
    }
    return CheckResult::ok("palindromicity");
}

// deg/lowdeg of the computed polynomials vs the degree recursions vs the
// prefix sums of the substitution sequences; plus the mid-degree identity.
// The degree functions are injectable so a corrupted implementation can be
// shown to produce a witness.
inline CheckResult degree_agreement(const std::vector<int>& p_list, long long m_max,
                                    const DegreeFn& upper = [](int p, long long m) { return poly_degree(p, m); },
                                    const DegreeFn& lower = [](int p, long long m) {
                                        return poly_lower_degree(p, m);
                                    }) {
    for (int p : p_list) {
        PolyFamily fam(p);
        long long sum_upper = 0;
        long long sum_lower = 0;
        for (long long m = 0; m <= m_max; ++m) {
            const SparsePoly& f = fam.poly(m);
            const long long d_rec = upper(p, m);
            const long long l_rec = lower(p, m);
            std::ostringstream w;
            if (f.deg() != d_rec) {
                w << "p=" << p << " m=" << m << ": deg " << f.deg() << " != recursion " << d_rec;
                return CheckResult::fail("degree_agreement", w.str());
            }
            if (f.lowdeg() != l_rec) {
                w << "p=" << p << " m=" << m << ": lowdeg " << f.lowdeg() << " != recursion " << l_rec;
                return CheckResult::fail("degree_agreement", w.str());
            }
            if (d_rec != sum_upper || l_rec != sum_lower) {
                w << "p=" << p << " m=" << m << ": recursion vs prefix sum mismatch";
                return CheckResult::fail("degree_agreement", w.str());
            }
            if (mid_degree(p, m) != BigRational(static_cast<long long>(p - 2) * m, 2)) {
                w << "p=" << p << " m=" << m << ": mid-degree != (p-2)m/2";
                return CheckResult::fail("degree_agreement", w.str());
            }
            sum_upper += degree_step(p, m);
            sum_lower += lower_degree_step(p, m);
        }
    }
    return CheckResult::ok("degree_agreement");
}

inline CheckResult scale_identity(const std::vector<int>& p_list, long long m_max) {
    for (int p : p_list) {
        PolyFamily fam(p);
        for (long long m = 0; m <= m_max; ++m) {
            const SparsePoly expected = scale_shift(fam.poly(m), BigRational(1), m * triangle(p - 2));
            if (fam.poly(p * m) != expected)
                return CheckResult::fail("scale_identity", "p=" + std::to_string(p) + " m=" + std::to_string(m));
        }
    }
    return CheckResult::ok("scale_identity");
}

inline CheckResult symmetric_recurrence(const std::vector<int>& p_list, long long m_max) {
    for (int p : p_list) {
        PolyFamily fam(p);
        for (long long m = 0; m <= m_max; ++m) {
            if (fam.symmetric(p * m) != fam.symmetric(m))
                return CheckResult::fail("symmetric_recurrence",
                                         "p=" + std::to_string(p) + " m=" + std::to_string(m) + " k=0");
            for (int k = 1; k < p; ++k)
                if (!check_symmetric_recurrence(fam, m, k))
                    return CheckResult::fail("symmetric_recurrence", "p=" + std::to_string(p) + " m=" +
                                                                         std::to_string(m) + " k=" + std::to_string(k));
        }
    }
    return CheckResult::ok("symmetric_recurrence");
}

inline CheckResult substitution_laws(const std::vector<int>& p_list, long long j_max, long long m_char_max) {
    for (int p : p_list) {
        for (long long j = 0; j <= j_max; ++j) {
            const int s = degree_step(p, j);
            const int l = lower_degree_step(p, j);
            std::ostringstream w;
            w << "p=" << p << " j=" << j;
            if (s < 0 || s > p - 2 || l < 0 || l > p - 2)
                return CheckResult::fail("substitution_range", w.str());
            if (s + l != p - 2) return CheckResult::fail("substitution_complement", w.str());
        }
        for (long long j = 0; j <= std::min<long long>(j_max, 10'000); ++j)
            if (degree_step(p, j) != degree_step(p, p - 1 - degree_step(p, j)))
                return CheckResult::fail("substitution_fixed_point", "p=" + std::to_string(p) + " j=" + std::to_string(j));
        for (long long m = 1; m <= m_char_max; ++m)
            for (int j = 0; j < p; ++j) {
                const long long lhs = degree_step(p, p * m + j);
                const long long rhs = degree_step(p, p * (p - 1 - degree_step(p, m)) + j);
                if (lhs != rhs)
                    return CheckResult::fail("substitution_characteristic",
                                             "p=" + std::to_string(p) + " m=" + std::to_string(m) + " j=" + std::to_string(j));
            }
        // Increment recursion on degree differences:
        //   step(p*m + k) = p-k-1 - [step(m) < p-1-k]
        for (long long m = 0; m <= std::min<long long>(m_char_max, 1000); ++m)
            for (int k = 0; k < p; ++k) {
                const long long diff = poly_degree(p, p * m + k + 1) - poly_degree(p, p * m + k);
                const long long expect = (p - k - 1) - (degree_step(p, m) < p - 1 - k ? 1 : 0);
                if (diff != expect)
                    return CheckResult::fail("substitution_increment_recursion",
                                             "p=" + std::to_string(p) + " m=" + std::to_string(m) + " k=" + std::to_string(k));
                if (degree_step(p, m + 1) != poly_degree(p, m + 2) - poly_degree(p, m + 1))
                    return CheckResult::fail("substitution_equals_degree_diff",
                                             "p=" + std::to_string(p) + " m=" + std::to_string(m));
            }
    }
    return CheckResult::ok("substitution_laws");
}

inline CheckResult oracle_brackets(const std::vector<int>& p_list, long long m_max) {
    for (int p : p_list) {
        if (p > 5) continue;  // enumeration guard: larger p only at small K
        PolyFamily fam(p);
        const OmegaSpec omega = OmegaSpec::classic(p);
        for (long long m = 0; m <= m_max; ++m) {
            const PiDistribution d = enumerate_pi(p, omega, m, default_enumeration_window(p, m));
            std::ostringstream w;
            w << "p=" << p << " m=" << m;
            if (!(d.unresolved < BigRational(1, 1000)))
                return CheckResult::fail("oracle_unresolved_mass", w.str());
            if (d.total() != BigRational(1)) return CheckResult::fail("oracle_total_mass", w.str());
            const SparsePoly& f = fam.poly(m);
            for (const auto& [e, c] : f.terms())
                if (c < d.lower(e) || c > d.upper(e)) {
                    w << " value=" << e;
                    return CheckResult::fail("oracle_brackets", w.str());
                }
            // No resolved mass may sit outside the polynomial support.
            for (const auto& [v, c] : d.mass)
                if (f.coeff(v).is_zero() && !c.is_zero()) {
                    w << " stray value=" << v;
                    return CheckResult::fail("oracle_brackets", w.str());
                }
        }
    }
    return CheckResult::ok("oracle_brackets");
}

inline CheckResult monte_carlo(const std::vector<int>& p_list, long long m, long long n, std::uint64_t seed) {
    for (int p : p_list) {
        PolyFamily fam(p);
        const SparsePoly& f = fam.poly(m);
        const EmpiricalDistribution emp = sample_pi(p, OmegaSpec::classic(p), m, n, seed);
        for (const auto& [v, c] : emp.counts)
            if (f.coeff(v).is_zero())
                return CheckResult::fail("monte_carlo", "p=" + std::to_string(p) + ": sample outside support");
        for (const auto& [e, c] : f.terms()) {
            const double q = c.to_double();
            const double sigma = std::sqrt(q * (1.0 - q) / static_cast<double>(n));
            if (std::abs(emp.frequency(e) - q) > 4.0 * sigma) {
                std::ostringstream w;
                w << "p=" << p << " m=" << m << " value=" << e << " freq=" << emp.frequency(e) << " exact=" << q;
                return CheckResult::fail("monte_carlo", w.str());
            }
        }
    }
    return CheckResult::ok("monte_carlo");
}

inline CheckResult conjugacy(const std::vector<int>& p_list, int n_max, long long samples, std::uint64_t seed,
                             LiftVariant variant = LiftVariant::standard) {
    for (int p : p_list)
        for (int n = 0; n <= n_max; ++n) {
            const ConjugacyReport rep = check_conjugacy(p, n, samples, seed, lift_roof(p), variant);
            if (rep.failures != 0) {
                std::string w = "p=" + std::to_string(p) + " n=" + std::to_string(n) + ": " +
                                std::to_string(rep.failures) + " failures";
                if (!rep.witnesses.empty()) w += "; first: " + rep.witnesses.front();
                return CheckResult::fail("conjugacy", w);
            }
        }
    return CheckResult::ok("conjugacy");
}

inline CheckResult window_reversal(int p, const OmegaSpec& omega, int w_max, int K) {
    const auto zeta = check_antipalindromic(omega);
    if (!zeta) return CheckResult::fail("window_reversal", "p=" + std::to_string(p) + ": omega not antipalindromic");
    for (int w = 1; w <= w_max; ++w) {
        const WindowDistribution fwd = window_distribution(p, omega, w, WindowDirection::forward, K);
        const WindowDistribution bwd =
            flip_window_values(window_distribution(p, omega, w, WindowDirection::backward, K), *zeta);
        if (!brackets_overlap(fwd, bwd))
            return CheckResult::fail("window_reversal", "p=" + std::to_string(p) + " w=" + std::to_string(w));
    }
    return CheckResult::ok("window_reversal");
}

}  // namespace checks

struct VerifyOptions {
    std::vector<int> p_list{3, 4, 5};
    long long m_max = 50;
    std::uint64_t seed = 42;
    long long oracle_m_max = 20;       // enumeration cap inside the battery
    long long mc_samples = 200'000;
    long long conjugacy_samples = 2'000;
    int conjugacy_n_max = 3;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::uint64_t rational_ops = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline VerifyReport run_verification(const VerifyOptions& opt) {
    const std::uint64_t ops_before = BigRational::operation_count();
    VerifyReport report;
    report.checks.push_back(checks::base_cases(opt.p_list));
    report.checks.push_back(checks::palindromicity(opt.p_list, opt.m_max));
    report.checks.push_back(checks::degree_agreement(opt.p_list, opt.m_max));
    report.checks.push_back(checks::scale_identity(opt.p_list, std::min<long long>(opt.m_max, 100)));
    report.checks.push_back(checks::symmetric_recurrence(opt.p_list, std::min<long long>(opt.m_max, 50)));
    report.checks.push_back(checks::substitution_laws(opt.p_list, 20'000, 1'000));
    report.checks.push_back(checks::oracle_brackets(opt.p_list, std::min(opt.oracle_m_max, opt.m_max)));
    report.checks.push_back(checks::monte_carlo(opt.p_list, 5, opt.mc_samples, opt.seed));
    report.checks.push_back(checks::conjugacy(opt.p_list, opt.conjugacy_n_max, opt.conjugacy_samples, opt.seed));
    for (int p : opt.p_list)
        if (p <= 5) report.checks.push_back(checks::window_reversal(p, OmegaSpec::classic(p), 2, 7));
    report.rational_ops = BigRational::operation_count() - ops_before;
    return report;
}

}  // namespace chacon
