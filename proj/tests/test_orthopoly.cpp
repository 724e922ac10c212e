#include <doctest.h>

#include "bathdisc/errors.hpp"
#include "bathdisc/io.hpp"

#include <nlohmann/json.hpp>
#include "bathdisc/orthopoly.hpp"

#include <cmath>
#include <cstring>

using namespace bathdisc;

namespace {

SpectralDensity flat_pi() { return SpectralDensity::power_law(0.0, 0.5, 0.0, 1.0); }

struct NamedDensity {
    const char* name;
    SpectralDensity sd;
};

std::vector<NamedDensity> families() {
    return {
        {"flat", flat_pi()},
        {"power(-1/2)", SpectralDensity::power_law(-0.5, 1.0, 0.0, 1.0)},
        {"power(1/2)", SpectralDensity::power_law(0.5, 1.0, 0.0, 1.0)},
        {"power(1)", SpectralDensity::power_law(1.0, 0.25, 0.5, 2.0)},
        {"semicircle", SpectralDensity::semicircle(1.0, 0.0, 2.0)},
        {"rubin", SpectralDensity::rubin(1.0, 0.0, 1.0)},
        {"gapped", SpectralDensity::gapped(flat_pi(), 0.4, 0.6)},
        {"tabulated", SpectralDensity::tabulated({{0.0, 1.0}, {0.5, 3.0}, {1.0, 1.0}})},
    };
}

} // namespace

TEST_CASE("Legendre recurrence on [0,1]") {
    const auto rc = recurrence_jacobi(0.0, 0.0, 0.0, 1.0, 1.0, 3);
    CHECK(rc.alpha[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rc.alpha[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rc.alpha[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rc.beta[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rc.beta[1] == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(rc.beta[2] == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("Chebyshev-U recurrence on [-1,1] with unit mass") {
    const auto rc = recurrence_jacobi(0.5, 0.5, -1.0, 1.0, 1.0, 2);
    CHECK(rc.alpha[0] == doctest::Approx(0.0));
    CHECK(rc.alpha[1] == doctest::Approx(0.0));
    CHECK(rc.beta[0] == doctest::Approx(1.0));
    CHECK(rc.beta[1] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("symmetric weights have alpha at the midpoint") {
    const auto rc = recurrence_analytic(Measure(SpectralDensity::semicircle(2.0, 1.0, 3.0), 0), 6);
    for (double a : rc.alpha) CHECK(a == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("Stieltjes matches the analytic Legendre recurrence") {
    const auto analytic = recurrence_analytic(Measure(flat_pi(), 0), 3);
    const auto stj = recurrence_stieltjes(Measure(flat_pi(), 0), 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(stj.alpha[k] == doctest::Approx(analytic.alpha[k]).epsilon(1e-12));
        CHECK(stj.beta[k] == doctest::Approx(analytic.beta[k]).epsilon(1e-12));
    }
}

TEST_CASE("Stieltjes matches the mapped Chebyshev-U recurrence for the semicircle") {
    const Measure m(SpectralDensity::semicircle(1.0, 0.0, 2.0), 0);
    const auto analytic = recurrence_analytic(m, 5);
    const auto stj = recurrence_stieltjes(m, 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(stj.alpha[k] == doctest::Approx(analytic.alpha[k]).epsilon(1e-10));
        CHECK(stj.beta[k] == doctest::Approx(analytic.beta[k]).epsilon(1e-10));
    }
}

TEST_CASE("Stieltjes alpha sits at the midpoint for a point-symmetric tabulated weight") {
    const auto sd = SpectralDensity::tabulated({{0.0, 1.0}, {0.5, 2.0}, {1.0, 1.0}});
    const auto rc = recurrence_stieltjes(Measure(sd, 0), 4);
    for (double a : rc.alpha) CHECK(a == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("orthonormal evaluation basics") {
    const auto rc = recurrence_for(Measure(flat_pi(), 0), 4);
    CHECK(eval_orthonormal(rc, 0, 0.123) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_orthonormal(rc, 1, 0.5) == doctest::Approx(0.0));
    const double knot = 0.5 + 0.5 / std::sqrt(3.0);
    CHECK(eval_orthonormal(rc, 2, knot) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(eval_orthonormal(rc, 2, 0.5 - 0.5 / std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("Gauss rules for the flat weight") {
    const auto rc = recurrence_for(Measure(flat_pi(), 0), 4);
    const auto r1 = gauss_rule(rc, 1);
    CHECK(r1.knots[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

    const auto r2 = gauss_rule(rc, 2);
    CHECK(r2.knots[0] == doctest::Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.knots[1] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r2.weights[1] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("semicircle Gauss knots match the closed form") {
    const auto sd = SpectralDensity::semicircle(1.0, 0.0, 2.0);
    const auto rule = gauss_rule(recurrence_for(Measure(sd, 0), 3), 3);
    CHECK(rule.knots[0] == doctest::Approx(1.0 + std::sqrt(2.0) / 2.0).epsilon(1e-13));
    CHECK(rule.knots[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rule.knots[2] == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("closed-form Chebyshev knots") {
    const auto semi = chebyshev_knots_closed_form(SpectralDensity::semicircle(1.0, 0.0, 2.0),
                                                  Scheme::BC, 3);
    CHECK(semi[0] == doctest::Approx(1.0 + std::sqrt(0.5)).epsilon(1e-15));
    CHECK(semi[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(semi[2] == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-15));

    const auto rubin = chebyshev_knots_closed_form(SpectralDensity::rubin(1.0, 0.0, 1.0),
                                                   Scheme::S2, 1);
    CHECK(rubin[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    const auto single = chebyshev_knots_closed_form(SpectralDensity::semicircle(1.0, 1.0, 3.0),
                                                    Scheme::BC, 1);
    CHECK(single[0] == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(chebyshev_knots_closed_form(flat_pi(), Scheme::BC, 2), ValidationError);
    CHECK_THROWS_AS(chebyshev_knots_closed_form(SpectralDensity::semicircle(1.0, 0.0, 2.0),
                                                Scheme::S2, 2),
                    ValidationError);
}

TEST_CASE("Buell brackets contain the computed knots") {
    // BC, flat (s = 0) on [0, 1]
    const auto rc = recurrence_for(Measure(flat_pi(), 0), 2);
    const auto rule = gauss_rule(rc, 2);
    for (int k = 1; k <= 2; ++k) {
        const auto br = buell_bounds(Scheme::BC, 0.0, 0.0, 1.0, 2, k);
        CHECK(br.lower < br.upper);
        CHECK(rule.knots[k - 1] > br.lower);
        CHECK(rule.knots[k - 1] < br.upper);
    }

    // strictly ordered for s = 1/2
    for (int L = 1; L <= 10; ++L)
        for (int k = 1; k <= L; ++k) {
            const auto br = buell_bounds(Scheme::BC, 0.5, 0.0, 1.0, L, k);
            CHECK(br.lower < br.upper);
        }

    // S2 massless, s = 1, L = 3, k = 2 contains the frequency from the mu_1 rule
    const auto sd = SpectralDensity::power_law(1.0, 0.3, 0.0, 1.0);
    const auto rule1 = gauss_rule(recurrence_for(Measure(sd, 1), 3), 3);
    const double freq = std::sqrt(rule1.knots[1]);
    const auto br = buell_bounds(Scheme::S2, 1.0, 0.0, 1.0, 3, 2);
    CHECK(freq > br.lower);
    CHECK(freq < br.upper);

    CHECK_THROWS_AS(buell_bounds(Scheme::BC, 0.8, 0.0, 1.0, 2, 1), ValidationError);
    CHECK_THROWS_AS(buell_bounds(Scheme::S2, 1.4, 0.0, 1.0, 2, 1), ValidationError);
    CHECK_THROWS_AS(buell_bounds(Scheme::S2, 0.5, 0.5, 1.0, 2, 1), ValidationError);
}

TEST_CASE("interlacing and containment across families") {
    for (const auto& fam : families()) {
        for (int q = 0; q <= 1; ++q) {
            const Measure m(fam.sd, q);
            const auto rc = recurrence_for(m, 13);
            auto prev = gauss_rule(rc, 12);
            const auto next = gauss_rule(rc, 13);
            // strict alternation of the merged descending sequences
            for (int i = 0; i < prev.L; ++i) {
                CHECK(next.knots[i] > prev.knots[i]);
                CHECK(prev.knots[i] > next.knots[i + 1]);
            }
            for (double k : next.knots) {
                CHECK(k >= m.a());
                CHECK(k <= m.b());
            }
        }
    }
}

TEST_CASE("quadrature exactness up to degree 2L-1") {
    for (const auto& fam : families()) {
        const Measure m(fam.sd, 0);
        const auto rc = recurrence_for(m, 8);
        const auto rule = gauss_rule(rc, 8);
        for (int mm = 0; mm <= 15; mm += 3) {
            double s = 0.0;
            for (int i = 0; i < rule.L; ++i) s += rule.weights[i] * std::pow(rule.knots[i], mm);
            const double exact = m.moment(mm);
            CHECK(s == doctest::Approx(exact).epsilon(1e-9));
        }
    }
}

TEST_CASE("Golub-Welsch weights equal the reciprocal Christoffel sums") {
    for (const auto& fam : families()) {
        const Measure m(fam.sd, 0);
        const auto rc = recurrence_for(m, 12);
        for (int L : {1, 4, 12}) {
            const auto rule = gauss_rule(rc, L);
            for (int i = 0; i < L; ++i) {
                const auto vals = orthonormal_values(rc, L, rule.knots[i]);
                double chr = 0.0;
                for (double v : vals) chr += v * v;
                CHECK(rule.weights[i] == doctest::Approx(1.0 / chr).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("recurrence coefficients respect spectrum containment") {
    for (const auto& fam : families()) {
        for (int q = 0; q <= 1; ++q) {
            const Measure m(fam.sd, q);
            const auto rc = recurrence_for(m, 20);
            CHECK(rc.beta[0] > 0.0);
            for (int k = 0; k < rc.size(); ++k) {
                CHECK(rc.alpha[k] >= m.a() - 1e-12);
                CHECK(rc.alpha[k] <= m.b() + 1e-12);
                if (k > 0) CHECK(rc.beta[k] > 0.0);
            }
        }
    }
}

TEST_CASE("weights are positive and sum to the measure mass") {
    for (const auto& fam : families()) {
        for (int q = 0; q <= 1; ++q) {
            const Measure m(fam.sd, q);
            const auto rule = gauss_rule(recurrence_for(m, 9), 9);
            double sum = 0.0;
            for (double w : rule.weights) {
                CHECK(w > 0.0);
                sum += w;
            }
            CHECK(sum == doctest::Approx(m.mass()).epsilon(1e-10));
        }
    }
}

TEST_CASE("gapped measures put at most one knot inside the gap") {
    const auto sd = SpectralDensity::gapped(flat_pi(), 0.4, 0.6);
    const Measure m(sd, 0);
    const auto rc = recurrence_for(m, 41);
    for (int L = 1; L <= 40; ++L) {
        const auto rule = gauss_rule(rc, L);
        int inside = 0;
        for (double k : rule.knots)
            if (k > 0.4 && k < 0.6) ++inside;
        CHECK(inside <= 1);
    }
}

TEST_CASE("CSV round trip is bit exact") {
    const auto rc = recurrence_for(Measure(SpectralDensity::rubin(1.0, 0.0, 1.0), 0), 7);
    const auto back = io::recurrence_from_csv(CsvTable::from_string(io::to_csv(rc).to_string()));
    REQUIRE(back.size() == rc.size());
    for (int k = 0; k < rc.size(); ++k) {
        CHECK(std::memcmp(&back.alpha[k], &rc.alpha[k], sizeof(double)) == 0);
        CHECK(std::memcmp(&back.beta[k], &rc.beta[k], sizeof(double)) == 0);
    }

    const auto rule = gauss_rule(rc, 7);
    const auto rule2 = io::gauss_rule_from_csv(CsvTable::from_string(io::to_csv(rule).to_string()));
    for (int i = 0; i < rule.L; ++i) {
        CHECK(std::memcmp(&rule2.knots[i], &rule.knots[i], sizeof(double)) == 0);
        CHECK(std::memcmp(&rule2.weights[i], &rule.weights[i], sizeof(double)) == 0);
    }
}

TEST_CASE("JSON serialisation round trips recurrences and rules") {
    const auto rc = recurrence_for(Measure(SpectralDensity::semicircle(1.0, 0.0, 2.0), 1), 5);
    const auto rc2 = io::recurrence_from_json(nlohmann::json::parse(io::to_json(rc).dump()));
    CHECK(rc2.alpha == rc.alpha);
    CHECK(rc2.beta == rc.beta);
    CHECK(rc2.measure.q == rc.measure.q);

    const auto rule = gauss_rule(rc, 5);
    const auto rule2 = io::gauss_rule_from_json(nlohmann::json::parse(io::to_json(rule).dump()));
    CHECK(rule2.knots == rule.knots);
    CHECK(rule2.weights == rule.weights);
}

TEST_CASE("rule construction rejects bad orders") {
    const auto rc = recurrence_for(Measure(flat_pi(), 0), 3);
    CHECK_THROWS_AS(gauss_rule(rc, 0), ValidationError);
    CHECK_THROWS_AS(gauss_rule(rc, 4), ValidationError);
    // rubin under mu_0 is not an affinely shifted Jacobi weight
    CHECK_THROWS_AS(recurrence_analytic(Measure(SpectralDensity::rubin(1.0, 0.0, 1.0), 0), 2),
                    ValidationError);
}
