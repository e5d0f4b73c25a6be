#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hsurf/wp_volumes.hpp"

using namespace hsurf;

namespace {

const char* kTablePath = HSURF_DATA_DIR "/volumes.csv";

VolumeTable& table() {
    static VolumeTable t = load_volume_table(kTablePath);
    return t;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << body;
    return path;
}

} // namespace

TEST_CASE("bundled table reproduces the classical volumes") {
    VolumeTable& t = table();
    CHECK(t.convention == "pi^2/12");
    CHECK(t.max_genus >= 11);
    CHECK(std::abs(t.log_value(0, 3)) < 1e-12);                                // V = 1
    CHECK(std::abs(std::exp(t.log_value(1, 1)) - M_PI * M_PI / 12) < 1e-12);   // pi^2/12
    CHECK(std::abs(std::exp(t.log_value(0, 4)) - 2 * M_PI * M_PI) < 1e-10);    // 2 pi^2
    CHECK(std::abs(std::exp(t.log_value(1, 2)) - 24.352272758500609) < 1e-9);  // pi^4/4
    CHECK(std::abs(std::exp(t.log_value(2, 0)) - 19.138766353582449) < 1e-9);  // 43 pi^6/2160
    CHECK(std::abs(std::exp(t.log_value(2, 1)) - 1433.1635388856596) < 1e-6);  // 29 pi^8/192
    CHECK(t.has(11, 0));
    CHECK_FALSE(t.has(50, 0));
    CHECK_THROWS_AS(t.log_value(50, 0), ConfigError);
}

TEST_CASE("polynomial evaluation matches hand-expanded cases") {
    VolumeTable& t = table();
    // V_{0,4}(L) = 2 pi^2 + (1/2) sum L_i^2
    CHECK(std::abs(evaluate_polynomial(t, 0, 4, {1, 2, 0.5, 1.5}) - 23.489208802178717) < 1e-10);
    // V_{1,1}(L) = pi^2/12 + L^2/48
    CHECK(std::abs(evaluate_polynomial(t, 1, 1, {3}) - 1.0099670334241132) < 1e-12);
    // constant term equals the scalar entry
    for (const auto& [key, poly] : t.polynomials) {
        std::vector<double> zero(key.second, 0.0);
        CHECK(std::abs(evaluate_polynomial(t, key.first, key.second, zero) -
                       std::exp(t.log_value(key.first, key.second))) <
              1e-9 * std::exp(t.log_value(key.first, key.second)));
    }
    CHECK_THROWS_AS(evaluate_polynomial(t, 0, 4, {1.0}), PreconditionError);
}

TEST_CASE("doubling boundary lengths costs at most the exponential factor") {
    VolumeTable& t = table();
    for (const auto& [key, poly] : t.polynomials) {
        int n = key.second;
        for (double fill : {0.0, 0.5, 1.0, 3.0}) {
            std::vector<double> L(n, fill);
            InequalityCheck c = boundary_length_estimate(t, key.first, n, L);
            CHECK(c.holds);
            CHECK(c.lhs <= c.rhs * (1 + 1e-12));
        }
        // staggered lengths exercise the mixed monomials
        std::vector<double> L(n);
        for (int i = 0; i < n; ++i) L[i] = 0.3 * (i + 1);
        CHECK(boundary_length_estimate(t, key.first, n, L).holds);
    }
    // L = 0 degenerates to equality
    InequalityCheck c = boundary_length_estimate(t, 1, 1, {0.0});
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-12));
    CHECK_THROWS_AS(boundary_length_estimate(t, 9, 0, {}), ConfigError);
}

TEST_CASE("handle trading ratios are bounded over the table") {
    VolumeTable& t = table();
    CHECK(volume_relation_check(t, 1, 2, 0) == doctest::Approx(1.0));
    CHECK(std::abs(volume_relation_check(t, 1, 2, 1) - 1.2724055620200558) < 1e-9);
    double worst = 0;
    for (const auto& [key, lv] : t.log_values) {
        auto [g, n] = key;
        for (int i = 0; 2 * i <= n; ++i)
            if (t.has(g + i, n - 2 * i))
                worst = std::max(worst, volume_relation_check(t, g, n, i));
    }
    CHECK(worst < 10.0);
    CHECK_THROWS_AS(volume_relation_check(t, 0, 3, 5), PreconditionError);
}

TEST_CASE("factorial asymptotic obeys its exact increment identity") {
    // n fixed, g -> g+1 multiplies by (2g-1+n)(2g-2+n)(4 pi^2)^2 sqrt(g/(g+1))
    for (int g : {2, 5, 9})
        for (int n : {0, 2}) {
            double inc = mz_asymptotic_log(g + 1, n, 1.0) - mz_asymptotic_log(g, n, 1.0);
            double expect = std::log((2.0 * g - 1 + n) * (2.0 * g - 2 + n)) +
                            2 * std::log(4 * M_PI * M_PI) + 0.5 * std::log(double(g) / (g + 1));
            CHECK(std::abs(inc - expect) < 1e-12);
        }
    CHECK(mz_asymptotic(2, 0, 0.0) == 0.0);
    CHECK(std::abs(mz_asymptotic(2, 0, 1.0) -
                   std::exp(mz_asymptotic_log(2, 0, 1.0))) < 1e-12 * mz_asymptotic(2, 0, 1.0));
    CHECK_THROWS_AS(mz_asymptotic_log(0, 0, 1.0), PreconditionError);
}

TEST_CASE("closed-surface ratios flatten at the top of the table") {
    VolumeTable& t = table();
    double lo = 1e300, hi = -1e300;
    for (int g = 8; g <= 11; ++g) {
        double ratio = std::exp(mz_ratio_log(t, g));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 1.2);
    CHECK(std::abs(std::exp(mz_ratio_log(t, 11)) - 0.58) < 5e-3);
    auto [C, dev] = fit_universal_constant(t);
    CHECK(C > 0.3);
    CHECK(C < 1.0);
    CHECK(dev < 0.2);
    CHECK(t.fitted_C == C);
}

TEST_CASE("admissible genus tuples match brute force") {
    auto got = admissible_genus_tuples(5, 2, 2, {2, 2});
    REQUIRE(got.size() == 3);
    CHECK(got[0] == std::vector<int>{1, 3});
    CHECK(got[1] == std::vector<int>{2, 2});
    CHECK(got[2] == std::vector<int>{3, 1});
    // q = 3 brute force: g1+g2+g3 = g+q-1-k, 2gi-3+ni >= 0
    std::vector<int> np{2, 1, 3};
    int g = 7, k = 3, total = g + 3 - 1 - k;
    std::vector<std::vector<int>> brute;
    for (int a = 0; a <= total; ++a)
        for (int b = 0; a + b <= total; ++b) {
            int c = total - a - b;
            int gs[3] = {a, b, c};
            bool ok = true;
            for (int i = 0; i < 3; ++i) ok = ok && (2 * gs[i] - 3 + np[i] >= 0);
            if (ok) brute.push_back({a, b, c});
        }
    CHECK(admissible_genus_tuples(g, k, 3, np) == brute);
}

TEST_CASE("volume product sums stay within their envelope") {
    VolumeTable& t = table();
    fit_universal_constant(t);
    SumVolumeProduct s = sum_volume_product(t, 5, 2, 2, {2, 2}, 2.0);
    CHECK_FALSE(s.empty);
    CHECK_FALSE(s.used_asymptotic);
    // direct product over the three splittings, in linear arithmetic
    double direct = 0;
    const std::vector<std::pair<int, int>> splits{{1, 3}, {2, 2}, {3, 1}};
    for (auto [a, b] : splits)
        direct += std::exp(t.log_value(a, 2)) * std::exp(t.log_value(b, 2));
    CHECK(std::abs(std::exp(s.log_sum) - direct) < 1e-10 * direct);
    // no admissible tuple below the minimum genus
    SumVolumeProduct none = sum_volume_product(t, 2, 5, 2, {5, 5}, 2.0);
    CHECK(none.empty);
    double D = fit_sum_volume_constant(t);
    CHECK(D >= 1.0);
    CHECK(t.fitted_D == D);
    for (int g : {5, 8, 11})
        for (int k : {1, 2, 3}) {
            SumVolumeProduct chk = sum_volume_product(t, g, k, 2, {k, k}, D);
            if (!chk.empty && !chk.used_asymptotic)
                CHECK(chk.log_sum <= chk.log_envelope + 1e-9);
        }
}

TEST_CASE("table loader rejects malformed and inconsistent files") {
    CHECK_THROWS_AS(load_volume_table("/nonexistent/volumes.csv"), ConfigError);
    std::string bad_row = write_temp("hsurf_bad_row.csv",
                                     "# v11_convention=pi^2/12\ng,n,value_log\n0,3,zero\n");
    CHECK_THROWS_AS(load_volume_table(bad_row), ConfigError);
    std::string bad_key = write_temp("hsurf_bad_key.csv",
                                     "# v11_convention=pi^2/12\ng,n,value_log\n0,2,0.0\n");
    CHECK_THROWS_AS(load_volume_table(bad_key), ConfigError);
    // polynomial constant term contradicting the scalar row
    std::string mismatch = write_temp(
        "hsurf_mismatch.csv",
        "# v11_convention=pi^2/12\ng,n,value_log\n0,3,0.0\n1,1,-0.1957"
        "\npoly,1,1,:0.9;1:0.020833333333333333\n");
    CHECK_THROWS_AS(load_volume_table(mismatch), ConfigError);
}
