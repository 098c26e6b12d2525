#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pathspin/discrimination.hpp"

using namespace pathspin;
using namespace pathspin::discrimination;
using Catch::Approx;

namespace {

SpinPreparation random_prep(std::mt19937& gen) {
    std::uniform_real_distribution<double> t(0.0, kPi / 2.0);
    double theta = t(gen);
    return SpinPreparation(std::cos(theta), std::sin(theta), 0.0);
}

} // namespace

TEST_CASE("preparation invariants") {
    CHECK_THROWS_AS(SpinPreparation(0.9, 0.9, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpinPreparation(-0.6, 0.8, 0.0), std::invalid_argument);
    CHECK_NOTHROW(SpinPreparation::from_alpha(0.3));
    CHECK_THROWS_AS(SpinPreparation::from_alpha(1.5), std::invalid_argument);
}

TEST_CASE("output cases carry the printed path and spin factors") {
    SpinPreparation p = SpinPreparation::from_alpha(0.6);
    auto cases = output_states(p);

    // case (i): phi=0, delta=0 -> i|psi3> x (alpha|r> + beta|l>)
    const StateVector& c1 = cases[0].state;
    StateVector phi1 = phi1_state(p);
    CHECK(std::abs(c1.amp("psi3*up") - cplx(0, 1) * phi1.amp("up")) < 1e-14);
    CHECK(std::abs(c1.amp("psi3*down") - cplx(0, 1) * phi1.amp("down")) < 1e-14);
    CHECK(std::abs(c1.amp("psi4*up")) < 1e-14);

    // case (iv): phi=pi, delta=pi -> |psi4> x (alpha|r> - beta|l>)
    const StateVector& c4 = cases[3].state;
    StateVector phi2 = phi2_state(p);
    CHECK(std::abs(c4.amp("psi4*up") - phi2.amp("up")) < 1e-14);
    CHECK(std::abs(c4.amp("psi4*down") - phi2.amp("down")) < 1e-14);
    CHECK(std::abs(c4.amp("psi3*up")) < 1e-14);
}

TEST_CASE("output cases match the element pipeline for random preparations") {
    std::mt19937 gen(53);
    for (int trial = 0; trial < 50; ++trial) {
        SpinPreparation p = random_prep(gen);
        for (const auto& c : output_states(p)) {
            StateVector pipeline = output_state_pipeline(p, c.phi, c.delta);
            for (std::size_t i = 0; i < 4; ++i)
                CHECK(std::abs(c.state.amp(i) - pipeline.amp(i)) < 1e-12);
        }
    }
}

TEST_CASE("alpha=beta reduces the cases to the deterministic outputs") {
    SpinPreparation p; // symmetric by default
    auto cases = output_states(p);
    using namespace protocol;
    // (phi, delta) ordering of cases: (0,0), (pi,0), (0,pi), (pi,pi);
    // messages order (b_spin, b_path) accordingly.
    std::array<Message, 4> msgs = {Message(0, 0), Message(0, 1), Message(1, 0),
                                   Message(1, 1)};
    for (int k = 0; k < 4; ++k) {
        StateVector det = evolve(encode(msgs[k]));
        // equal up to a global phase; compare via overlap magnitude
        CHECK(std::abs(inner(cases[k].state, det)) == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("linear independence via the Gram determinant") {
    SpinPreparation p = SpinPreparation::from_alpha(0.6);
    auto r = linear_independence(phi1_state(p), phi2_state(p));
    double a2 = 0.36, b2 = 0.64;
    CHECK(r.independent);
    CHECK(r.overlap == Approx(std::abs(a2 - b2)).margin(1e-12));
    CHECK(r.gram_determinant == Approx(4.0 * a2 * b2).margin(1e-12));

    SpinPreparation degenerate = SpinPreparation::from_alpha(1.0);
    auto r2 = linear_independence(phi1_state(degenerate), phi2_state(degenerate));
    CHECK_FALSE(r2.independent);

    SpinPreparation sym;
    auto r3 = linear_independence(phi1_state(sym), phi2_state(sym));
    CHECK(r3.gram_determinant == Approx(1.0).margin(1e-12));
}

TEST_CASE("POVM completeness holds for random preparations") {
    std::mt19937 gen(59);
    for (int trial = 0; trial < 50; ++trial) {
        PovmSet set = paper_povm(random_prep(gen));
        PovmReport rep = povm_validate(set);
        CHECK(rep.completeness_residual <= 1e-12);
    }
}

TEST_CASE("unambiguity: wrong-state expectations vanish") {
    std::mt19937 gen(61);
    for (int trial = 0; trial < 50; ++trial) {
        SpinPreparation p = random_prep(gen);
        PovmSet set = paper_povm(p);
        CHECK(std::abs(formal_expectation(set.effects[1], phi1_state(p))) <= 1e-12);
        CHECK(std::abs(formal_expectation(set.effects[0], phi2_state(p))) <= 1e-12);
    }
}

TEST_CASE("symmetric point: effects diagonalize to {0,1},{0,1},{0,0}") {
    PovmSet set = paper_povm(SpinPreparation{});
    PovmReport rep = povm_validate(set);
    CHECK(rep.overall_valid);
    CHECK(rep.eigenvalues[0][0] == Approx(0.0).margin(1e-10));
    CHECK(rep.eigenvalues[0][1] == Approx(1.0).margin(1e-10));
    CHECK(rep.eigenvalues[1][0] == Approx(0.0).margin(1e-10));
    CHECK(rep.eigenvalues[1][1] == Approx(1.0).margin(1e-10));
    CHECK(rep.eigenvalues[2][0] == Approx(0.0).margin(1e-10));
    CHECK(rep.eigenvalues[2][1] == Approx(0.0).margin(1e-10));
}

TEST_CASE("alpha^2 = 0.8 breaks positivity: S3 eigenvalues {-0.6, 0.6}") {
    SpinPreparation p = SpinPreparation::from_alpha(std::sqrt(0.8));
    PovmReport rep = povm_validate(paper_povm(p));
    CHECK(rep.eigenvalues[2][0] == Approx(-0.6).margin(1e-10));
    CHECK(rep.eigenvalues[2][1] == Approx(0.6).margin(1e-10));
    CHECK_FALSE(rep.is_positive[2]);
    CHECK_FALSE(rep.overall_valid);
}

TEST_CASE("positivity boundary sits exactly at alpha^2 = 1/2") {
    for (double a2 : {0.30, 0.45, 0.499, 0.5, 0.501, 0.55, 0.70}) {
        SpinPreparation p = SpinPreparation::from_alpha(std::sqrt(a2));
        PovmReport rep = povm_validate(paper_povm(p));
        double min_ev = 1.0 - 2.0 * std::max(a2, 1.0 - a2);
        CHECK(rep.eigenvalues[2][0] == Approx(min_ev).margin(1e-10));
        CHECK(rep.overall_valid == (std::abs(a2 - 0.5) <= 5e-11));
    }
}

TEST_CASE("projector triples summing to identity always validate") {
    using namespace optics;
    PovmSet set{{discrimination::detail::outer(spin_up(), spin_up()),
                 discrimination::detail::outer(spin_down(), spin_down()),
                 discrimination::detail::lincomb(0.0, Operator::identity(spin_basis()), 0.0,
                                 Operator::identity(spin_basis()))}};
    CHECK(povm_validate(set).overall_valid);
}

TEST_CASE("symmetric discrimination is deterministic") {
    SpinPreparation p;
    PovmSet set = paper_povm(p);
    DiscriminationResult r1 = discrimination_probs(set, phi1_state(p));
    CHECK(r1.probabilities[0] == Approx(1.0).margin(1e-12));
    CHECK(r1.probabilities[1] == Approx(0.0).margin(1e-12));
    CHECK(r1.probabilities[2] == Approx(0.0).margin(1e-12));
    CHECK(r1.success_probability == Approx(1.0).margin(1e-12));
    DiscriminationResult r2 = discrimination_probs(set, phi2_state(p));
    CHECK(r2.probabilities[1] == Approx(1.0).margin(1e-12));
}

TEST_CASE("invalid POVMs are refused with the report attached") {
    SpinPreparation p = SpinPreparation::from_alpha(std::sqrt(0.8));
    PovmSet set = paper_povm(p);
    try {
        discrimination_probs(set, phi1_state(p));
        FAIL("expected InvalidPovmError");
    } catch (const InvalidPovmError& e) {
        CHECK_FALSE(e.report.overall_valid);
        CHECK(e.report.eigenvalues[2][0] == Approx(-0.6).margin(1e-10));
    }
}

TEST_CASE("formal expectations expose the printed-formula erratum") {
    double a2 = 0.8, b2 = 0.2;
    SpinPreparation p = SpinPreparation::from_alpha(std::sqrt(a2));
    PovmSet set = paper_povm(p);
    StateVector phi1 = phi1_state(p);
    CHECK(formal_expectation(set.effects[0], phi1) == Approx(4 * a2 * b2).margin(1e-12));
    CHECK(formal_expectation(set.effects[2], phi1) ==
          Approx(1.0 - 4 * a2 * b2).margin(1e-12));
    CHECK(paper_success_formula(p) == Approx(2.0 * (1.0 - 2.0 * a2 * b2)).margin(1e-12));
    CHECK(paper_success_formula(p) > 1.0); // not a probability off the symmetric point
}

TEST_CASE("idp optimum and the oracle inequality") {
    CHECK(idp_optimum(SpinPreparation{}) == Approx(1.0).margin(1e-12));
    CHECK(idp_optimum(SpinPreparation::from_alpha(std::sqrt(0.8))) ==
          Approx(0.4).margin(1e-12));
    std::mt19937 gen(67);
    for (int trial = 0; trial < 50; ++trial) {
        SpinPreparation p = random_prep(gen);
        double a2 = p.alpha * p.alpha, b2 = p.beta * p.beta;
        if (a2 < 1e-6 || b2 < 1e-6 || std::abs(a2 - b2) < 1e-6) continue;
        double formal = 4.0 * a2 * b2;
        // formal = (1 - |a2-b2|)(1 + |a2-b2|) > idp whenever states differ
        CHECK(formal > idp_optimum(p));
        CHECK(formal ==
              Approx(idp_optimum(p) * (1.0 + std::abs(a2 - b2))).margin(1e-12));
    }
}

TEST_CASE("symmetric sampling is degenerate, reproducible, and decodable") {
    using protocol::Message;
    SpinPreparation p;
    PovmSet set = paper_povm(p);
    DiscriminationShotRecord rec = sample_discrimination(set, p, Message(0, 0), 1000, 5);
    CHECK(rec.counts[0][0] == 1000); // every shot lands in (psi3, S1)
    CHECK(rec == sample_discrimination(set, p, Message(0, 0), 1000, 5));

    // full 2-bit round trip across all four messages
    for (int bs = 0; bs < 2; ++bs)
        for (int bp = 0; bp < 2; ++bp) {
            DiscriminationShotRecord r =
                sample_discrimination(set, p, Message(bs, bp), 200, 9);
            std::size_t want_path = bp ? 1 : 0;
            std::size_t want_povm = bs ? 1 : 0;
            CHECK(r.counts[want_path][want_povm] == 200);
        }
}

TEST_CASE("sampling with an invalid POVM is refused") {
    SpinPreparation p = SpinPreparation::from_alpha(std::sqrt(0.8));
    CHECK_THROWS_AS(
        sample_discrimination(paper_povm(p), p, protocol::Message(0, 0), 10, 1),
        InvalidPovmError);
}
