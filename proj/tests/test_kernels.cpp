#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "panelur/kernels.hpp"

using namespace panelur;
using Catch::Approx;

namespace {

struct OracleRow {
    double z;
    std::vector<double> g;
};

std::vector<OracleRow> load_oracle() {
    std::ifstream in(std::string(PANELUR_TEST_DATA) + "/kernel_oracle.csv");
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    std::vector<OracleRow> rows;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        OracleRow r;
        std::getline(ss, cell, ',');
        r.z = std::stod(cell);
        while (std::getline(ss, cell, ',')) r.g.push_back(std::stod(cell));
        rows.push_back(r);
    }
    return rows;
}

double series30(double z, int n) {
    double s = 0.0, t = detail::inv_factorial(n);
    for (int k = 0; k < 30; ++k) {
        s += t;
        t *= -z / ((2.0 * k + n + 1) * (2.0 * k + n + 2));
    }
    return s;
}

double closed_c(double z) { return z >= 0 ? std::cos(std::sqrt(z)) : std::cosh(std::sqrt(-z)); }
double closed_s(double z) {
    return z >= 0 ? std::sin(std::sqrt(z)) / std::sqrt(z) : std::sinh(std::sqrt(-z)) / std::sqrt(-z);
}

}  // namespace

TEST_CASE("kernel family matches high-precision reference") {
    const auto rows = load_oracle();
    REQUIRE(rows.size() > 20);
    for (const auto& row : rows) {
        double g[15];
        kernel_values(row.z, 14, g);
        for (int n = 0; n < 15; ++n) {
            // near a zero of an oscillating g_n only absolute accuracy is meaningful
            const double scale = std::max(std::abs(row.g[n]), detail::inv_factorial(n) / (1.0 + std::abs(row.z)));
            INFO("z = " << row.z << ", n = " << n);
            CHECK(std::abs(g[n] - row.g[n]) <= 1e-13 * scale);
        }
    }
}

TEST_CASE("kernel point values") {
    const double pi2 = M_PI * M_PI;
    CHECK(kappa_c(0.0) == 1.0);
    CHECK(kappa_c(pi2) == Approx(-1.0).epsilon(1e-14));
    CHECK(kappa_c(-1.0) == Approx(1.5430806348152437).epsilon(1e-14));
    CHECK(kappa_s(0.0) == 1.0);
    CHECK(std::abs(kappa_s(pi2)) < 1e-15);
    CHECK(kappa_s(-4.0) == Approx(1.8134302039235093).epsilon(1e-14));
    CHECK(kappa_m(0.0) == -0.5);
    CHECK(kappa_m(pi2) == Approx(-2.0 / pi2).epsilon(1e-14));
    CHECK(kappa_m(-1.0) == Approx(-0.5430806348152437).epsilon(1e-14));
    CHECK(kappa_d(0.0) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(kappa_d(pi2) == Approx(1.0 / pi2).epsilon(1e-14));
    CHECK(kappa_d(-1.0) == Approx(0.36787944117144233).epsilon(1e-14));
}

TEST_CASE("kernels agree with series and closed forms on [-100, 100]") {
    for (int i = 0; i <= 2000; ++i) {
        const double z = -100.0 + 0.1 * i + 1e-3;
        INFO("z = " << z);
        if (std::abs(z) <= 4.0) {
            for (int n = 0; n < 4; ++n) {
                const double ref = series30(z, n);
                CHECK(std::abs(kernel_g(z, n) - ref) <= 1e-12 * std::abs(ref));
            }
        }
        if (std::abs(z) >= 1.0) {
            const double c = closed_c(z), s = closed_s(z);
            const double tol = 1e-12 * std::max(1.0, std::abs(c));
            CHECK(std::abs(kappa_c(z) - c) <= tol);
            CHECK(std::abs(kappa_s(z) - s) <= 1e-12 * std::max(1.0, std::abs(s)));
            CHECK(std::abs(kappa_m(z) - (c - 1.0) / z) <= tol);
            CHECK(std::abs(kappa_d(z) - (s - c) / z) <= tol);
        }
    }
}

TEST_CASE("kernel identities on a 1000-point grid") {
    for (int i = 0; i < 1000; ++i) {
        const double z = -100.0 + 200.0 * (i + 0.5) / 1000.0;
        const double c = kappa_c(z), s = kappa_s(z);
        const double scale = std::max(1.0, std::abs(c));
        CHECK(std::abs(z * kappa_m(z) + 1.0 - c) <= 1e-12 * scale);
        CHECK(std::abs(z * kappa_d(z) + c - s) <= 1e-12 * scale);
    }
}

TEST_CASE("complex evaluation agrees with real evaluation on the real axis") {
    for (double z : {-250.0, -30.0, -3.0, -0.2, 0.0, 0.2, 3.0, 30.0, 250.0}) {
        std::complex<double> gc[9];
        double gr[9];
        kernel_values(std::complex<double>(z, 0.0), 8, gc);
        kernel_values(z, 8, gr);
        for (int n = 0; n <= 8; ++n) {
            CHECK(std::abs(gc[n].imag()) <= 1e-14 * std::max(1.0, std::abs(gr[n])));
            CHECK(std::abs(gc[n].real() - gr[n]) <= 1e-12 * std::max(std::abs(gr[n]), 1e-3));
        }
    }
}

TEST_CASE("complex kernels satisfy the recurrence off the axis") {
    for (auto z : {std::complex<double>(0.3, 0.4), std::complex<double>(-20.0, 35.0), std::complex<double>(5.0, -80.0),
                   std::complex<double>(0.0, 400.0)}) {
        std::complex<double> g[11];
        kernel_values(z, 10, g);
        for (int n = 0; n + 2 <= 10; ++n) {
            const auto lhs = g[n] + z * g[n + 2];
            CHECK(std::abs(lhs - detail::inv_factorial(n)) <= 1e-12 * std::max(1.0, std::abs(g[n])));
        }
    }
}

TEST_CASE("kernel jets reproduce derivatives") {
    for (double z0 : {-40.0, -2.0, 0.0, 0.7, 9.0, 60.0}) {
        Jet<3> z = Jet<3>::variable(z0);
        Jet<3> g[6];
        kernel_values(z, 5, g);
        for (int n = 0; n <= 5; ++n) {
            const double h = 1e-3 * std::max(1.0, std::abs(z0));
            const double fd = (kernel_g(z0 - 2 * h, n) - 8 * kernel_g(z0 - h, n) + 8 * kernel_g(z0 + h, n) -
                               kernel_g(z0 + 2 * h, n)) / (12 * h);
            CHECK(g[n].value() == Approx(kernel_g(z0, n)).epsilon(1e-14));
            CHECK(g[n][1] == Approx(fd).epsilon(1e-7).margin(1e-12));
            // closed relation d/dz g_n = -g_{n+1}/2 + (n/2) g_{n+2}
            CHECK(g[n][1] == Approx(-0.5 * kernel_g(z0, n + 1) + 0.5 * n * kernel_g(z0, n + 2)).epsilon(1e-13));
        }
    }
}
