#include "vqdgap/noise.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace vqdgap;

namespace {

Eigen::Matrix2cd plus_state() {
    Eigen::Matrix2cd rho;
    rho << 0.5, 0.5, 0.5, 0.5;
    return rho;
}

Eigen::Matrix2cd excited_state() {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    rho(1, 1) = 1.0;
    return rho;
}

RelaxationParams random_params(std::mt19937_64& rng, bool t2_above_t1) {
    const auto unit = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    RelaxationParams p;
    p.t1 = 1e-6 + 100e-6 * unit();
    p.t2 = t2_above_t1 ? p.t1 * (1.0 + 0.999 * unit())  // (T1, 2*T1)
                       : p.t1 * (0.05 + 0.95 * unit());
    p.gate_time = 1e-9 + 1e-6 * unit();
    return p;
}

} // namespace

TEST_SUITE("noise") {

TEST_CASE("excited population") {
    CHECK(excited_population(0.0, 5e9) == 0.0);
    CHECK(excited_population(1e12, 5e9) == doctest::Approx(0.5).epsilon(1e-6));
    // 15 mK, 5 GHz: cross-check against an independently coded Boltzmann
    // ratio p = w1/(w0+w1) with w1/w0 = exp(-2hf/kT).
    const double h = 6.62607015e-34;
    const double kb = 1.380649e-23;
    const double ratio = std::exp(-2.0 * h * 5e9 / (kb * 15e-3));
    const double expected = ratio / (1.0 + ratio);
    const double p = excited_population(15e-3, 5e9);
    CHECK(p == doctest::Approx(expected).epsilon(1e-12));
    CHECK(p > 0.0);
    CHECK(p < 0.5);
    CHECK_THROWS_AS(excited_population(-1.0, 5e9), std::invalid_argument);
}

TEST_CASE("zero gate time gives the identity channel") {
    const auto channel = thermal_relaxation_channel({1e-5, 1e-5, 0.0});
    REQUIRE(channel.size() == 1);
    CHECK((channel.operators()[0] - Eigen::Matrix2cd::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("T1 = T2 = Tg mixture values") {
    const auto channel = thermal_relaxation_channel({1.0, 1.0, 1.0});
    // eps_t1 = eps_t2 = 1/e, p_z = 0, p_reset = 1 - 1/e; the surviving
    // operators are sqrt(p_i) I and the two reset projectors.
    REQUIRE(channel.size() == 3);
    const double p_reset = 1.0 - std::exp(-1.0);
    CHECK(std::abs(channel.operators()[0](0, 0) -
                   std::sqrt(1.0 - p_reset)) < 1e-12);
    CHECK(validate_cptp(channel) <= 1e-12);
}

TEST_CASE("T2 > T1 channel shrinks coherence by exactly eps_t2") {
    const RelaxationParams p{1.0, 1.5, 0.1};
    const auto channel = thermal_relaxation_channel(p);
    const auto out = channel.apply(plus_state());
    const double eps_t2 = std::exp(-0.1 / 1.5);
    CHECK(std::abs(out(0, 1)) == doctest::Approx(0.5 * eps_t2).epsilon(1e-9));
    CHECK(validate_cptp(channel) <= 1e-9);
}

TEST_CASE("CP violation rejected exactly when T2 > 2 T1") {
    CHECK_THROWS_AS(thermal_relaxation_channel({1.0, 2.0001, 0.1}),
                    std::domain_error);
    CHECK_NOTHROW(thermal_relaxation_channel({1.0, 1.9999, 0.1}));
    CHECK_NOTHROW(thermal_relaxation_channel({1.0, 2.0, 0.1}));
}

TEST_CASE("choi_to_kraus on the identity Choi gives a single identity") {
    const auto channel = choi_to_kraus(ChoiMatrix::identity_channel());
    REQUIRE(channel.size() == 1);
    // Kraus operators are unique up to phase.
    const auto& k = channel.operators()[0];
    CHECK(std::abs(std::abs(k(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(k(0, 1)) < 1e-12);
    CHECK(std::abs(k(1, 0)) < 1e-12);
    CHECK((k.adjoint() * k - Eigen::Matrix2cd::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("degenerate relaxation Choi reduces to the identity channel") {
    // p_reset = 0 and eps_t2 = 1 is the identity.
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = m(3, 3) = 1.0;
    m(0, 3) = m(3, 0) = 1.0;
    const auto channel = choi_to_kraus(ChoiMatrix(m));
    Eigen::Matrix2cd rho;
    rho << 0.3, 0.2, 0.2, 0.7;
    CHECK((channel.apply(rho) - rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Choi to Kraus round-trips within 1e-9") {
    const RelaxationParams p{1.0, 1.5, 0.1};
    const double eps_t2 = std::exp(-p.gate_time / p.t2);
    const double p_reset = 1.0 - std::exp(-p.gate_time / p.t1);
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0;
    m(0, 3) = m(3, 0) = eps_t2;
    m(2, 2) = p_reset;
    m(3, 3) = 1.0 - p_reset;
    const ChoiMatrix choi(m);
    const auto rebuilt = kraus_to_choi(choi_to_kraus(choi));
    CHECK((rebuilt.elements() - m).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("invalid Choi matrices rejected") {
    // Not trace preserving.
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 0.5;
    m(3, 3) = 1.0;
    CHECK_THROWS_AS(choi_to_kraus(ChoiMatrix(m)), std::invalid_argument);
    // Negative eigenvalue (corners exceed the CP bound).
    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Zero();
    bad(0, 0) = 1.0;
    bad(1, 1) = 1.0;
    bad(0, 3) = bad(3, 0) = 1.2;
    bad(3, 3) = 1.0;
    bad(2, 2) = 0.0;
    CHECK_THROWS_AS(choi_to_kraus(ChoiMatrix(bad)), std::exception);
}

TEST_CASE("validate_cptp residuals") {
    const Eigen::Matrix2cd identity = Eigen::Matrix2cd::Identity();
    CHECK(validate_cptp(KrausChannel({identity})) == doctest::Approx(0.0));
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    CHECK(validate_cptp(KrausChannel(
              {std::sqrt(0.5) * identity, std::sqrt(0.5) * z})) ==
          doctest::Approx(0.0));
    CHECK(validate_cptp(KrausChannel({identity, identity})) ==
          doctest::Approx(1.0));
}

TEST_CASE("channel properties over random parameters in both regimes") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 400; ++trial) {
        const RelaxationParams p = random_params(rng, trial % 2 == 0);
        const auto channel = thermal_relaxation_channel(p);
        CHECK(validate_cptp(channel) <= 1e-9);

        const double eps_t1 = std::exp(-p.gate_time / p.t1);
        const double eps_t2 = std::exp(-p.gate_time / p.t2);

        // Ground state is a fixed point at T ~ 0.
        Eigen::Matrix2cd ground = Eigen::Matrix2cd::Zero();
        ground(0, 0) = 1.0;
        CHECK((channel.apply(ground) - ground).cwiseAbs().maxCoeff() <= 1e-9);

        // Coherence decay and population decay laws.
        CHECK(std::abs(channel.apply(plus_state())(0, 1)) ==
              doctest::Approx(0.5 * eps_t2).epsilon(1e-9));
        CHECK(channel.apply(excited_state())(1, 1).real() ==
              doctest::Approx(eps_t1).epsilon(1e-9));

        // Trace preservation on a random density matrix.
        Eigen::Vector2cd amp;
        amp << std::complex<double>(
            static_cast<double>(rng() >> 11) * 0x1.0p-53,
            static_cast<double>(rng() >> 11) * 0x1.0p-53),
            std::complex<double>(
                static_cast<double>(rng() >> 11) * 0x1.0p-53,
                static_cast<double>(rng() >> 11) * 0x1.0p-53);
        amp.normalize();
        const Eigen::Matrix2cd rho = amp * amp.adjoint();
        CHECK(channel.apply(rho).trace().real() ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("the two regimes agree at the T2 = T1 boundary") {
    const double t1 = 37e-6;
    const double tg = 120e-9;
    const auto below = thermal_relaxation_channel({t1, t1 * (1 - 1e-6), tg});
    const auto above = thermal_relaxation_channel({t1, t1 * (1 + 1e-6), tg});
    // Compare channel actions on a basis of inputs.
    for (int b = 0; b < 4; ++b) {
        Eigen::Matrix2cd input = Eigen::Matrix2cd::Zero();
        input(b / 2, b % 2) = 1.0;
        CHECK((below.apply(input) - above.apply(input)).cwiseAbs().maxCoeff() <=
              1e-5);
    }
}

TEST_CASE("noise model validates and exposes per-class channels") {
    const NoiseModel model(50e-6, 70e-6, 50e-9, 300e-9);
    CHECK(validate_cptp(model.channel_for_arity(1)) <= 1e-9);
    CHECK(validate_cptp(model.channel_for_arity(2)) <= 1e-9);
    CHECK(validate_cptp(model.channel_for_arity(3)) <= 1e-9);
    CHECK(model.single_qubit_params().gate_time == doctest::Approx(50e-9));
    CHECK(model.multi_qubit_params().gate_time == doctest::Approx(300e-9));
    CHECK_THROWS_AS(NoiseModel(50e-6, 120e-6, 50e-9, 300e-9),
                    std::domain_error);
}

} // TEST_SUITE
