// Probabilistic dense coding with a general spin preparation
// alpha|right> + beta e^{i delta}|left>: the four post-BS2 output cases,
// the spin POVM {S1, S2, S3} with validity diagnostics, discrimination
// probabilities, and the textbook unambiguous-discrimination optimum as an
// independent reference.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "hilbert.hpp"
#include "optics.hpp"
#include "protocol.hpp"
#include "rng.hpp"

namespace pathspin::discrimination {

struct SpinPreparation {
    double alpha = 1.0 / std::sqrt(2.0);
    double beta = 1.0 / std::sqrt(2.0);
    double delta = 0.0;

    SpinPreparation() = default;
    SpinPreparation(double a, double b, double d) : alpha(a), beta(b), delta(d) {
        if (a < 0.0 || b < 0.0)
            throw std::invalid_argument("SpinPreparation: amplitudes must be >= 0");
        if (std::abs(a * a + b * b - 1.0) > 1e-12)
            throw std::invalid_argument("SpinPreparation: alpha^2 + beta^2 != 1");
    }

    static SpinPreparation from_alpha(double a, double d = 0.0) {
        if (a < 0.0 || a > 1.0)
            throw std::invalid_argument("SpinPreparation: alpha must be in [0,1]");
        return SpinPreparation(a, std::sqrt(std::max(0.0, 1.0 - a * a)), d);
    }
};

// chi = alpha|right> + beta e^{i delta}|left>, in the z layout.
inline StateVector prepared_spin(const SpinPreparation& p) {
    cplx e = std::exp(cplx(0.0, p.delta));
    double r = 1.0 / std::sqrt(2.0);
    // alpha (up+down)/sqrt2 + beta e^{i delta} (up-down)/sqrt2
    return StateVector({r * (p.alpha + p.beta * e), r * (p.alpha - p.beta * e)},
                       optics::spin_basis());
}

// phi1 = alpha|right> + beta|left>, phi2 = alpha|right> - beta|left>.
inline StateVector phi1_state(const SpinPreparation& p) {
    return prepared_spin(SpinPreparation(p.alpha, p.beta, 0.0));
}
inline StateVector phi2_state(const SpinPreparation& p) {
    return prepared_spin(SpinPreparation(p.alpha, p.beta, kPi));
}

// The four (phi, delta) in {0, pi}^2 output cases behind BS2, closed form:
// path factor psi3 (phi=0, global phase i) or psi4 (phi=pi), spin factor
// alpha|right> +/- beta|left>.
struct OutputCase {
    double phi = 0.0;
    double delta = 0.0;
    StateVector state;
};

inline std::array<OutputCase, 4> output_states(const SpinPreparation& p) {
    using protocol::output_basis;
    auto make = [&](double phi, double delta) {
        StateVector path = StateVector::basis_state(output_basis(),
                                                    phi == 0.0 ? "psi3" : "psi4");
        if (phi == 0.0) path = path.scaled(cplx(0.0, 1.0));
        StateVector spin = prepared_spin(SpinPreparation(p.alpha, p.beta, delta));
        StateVector full = tensor(path, spin);
        return OutputCase{phi, delta, StateVector(full.amplitudes(), full.basis())};
    };
    return {make(0.0, 0.0), make(kPi, 0.0), make(0.0, kPi), make(kPi, kPi)};
}

// Pipeline evolution of the same cases (SR replaced by the general
// preparation), for cross-checking the closed forms.
inline StateVector output_state_pipeline(const SpinPreparation& p, double phi,
                                         double delta) {
    using namespace optics;
    using namespace protocol;
    StateVector chi = prepared_spin(SpinPreparation(p.alpha, p.beta, delta));
    StateVector state = tensor(StateVector::basis_state(bs1_input_basis(), "in2"), chi);
    state = apply(beam_splitter("in1", "in2", "psi1", "psi2"), state);
    state = apply(phase_shifter(arm_basis(), "psi2", phi), state);
    state = apply(beam_splitter("psi1", "psi2", "psi3", "psi4"), state);
    return state;
}

// Gram determinant 1 - |<phi1|phi2>|^2; the pair is usable for probabilistic
// discrimination iff it exceeds tolerance.
struct IndependenceResult {
    bool independent = false;
    double gram_determinant = 0.0;
    double overlap = 0.0; // |<phi1|phi2>|
};

inline IndependenceResult linear_independence(const StateVector& a,
                                              const StateVector& b) {
    IndependenceResult r;
    r.overlap = std::abs(inner(a, b));
    r.gram_determinant = 1.0 - r.overlap * r.overlap;
    r.independent = r.gram_determinant > 1e-12;
    return r;
}

// The three printed spin effects, in the z layout:
//   S1 = beta^2 |r><r| + alpha beta (|r><l| + |l><r|) + alpha^2 |l><l|
//   S2 = same with the cross terms negated
//   S3 = (1 - 2 beta^2)|r><r| + (1 - 2 alpha^2)|l><l|
struct PovmSet {
    std::array<Operator, 3> effects;
    static constexpr std::array<const char*, 3> labels = {"S1", "S2", "S3"};
};

namespace detail {

inline Operator outer(const StateVector& ket, const StateVector& bra) {
    std::size_t n = ket.dim();
    std::vector<cplx> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            e[i * n + j] = ket.amp(i) * std::conj(bra.amp(j));
    return Operator(std::move(e), ket.basis(), ket.basis());
}

inline Operator lincomb(double c1, const Operator& a, double c2, const Operator& b) {
    std::vector<cplx> e(a.entries().size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = c1 * a.entries()[i] + c2 * b.entries()[i];
    return Operator(std::move(e), a.basis_in(), a.basis_out());
}

} // namespace detail

inline PovmSet paper_povm(const SpinPreparation& p) {
    using namespace optics;
    using detail::outer;
    using detail::lincomb;
    Operator rr = outer(spin_right(), spin_right());
    Operator ll = outer(spin_left(), spin_left());
    Operator cross = lincomb(1.0, outer(spin_right(), spin_left()),
                             1.0, outer(spin_left(), spin_right()));
    double a = p.alpha, b = p.beta;
    Operator s1 = lincomb(1.0, lincomb(b * b, rr, a * a, ll), a * b, cross);
    Operator s2 = lincomb(1.0, lincomb(b * b, rr, a * a, ll), -a * b, cross);
    Operator s3 = lincomb(1.0 - 2.0 * b * b, rr, 1.0 - 2.0 * a * a, ll);
    return PovmSet{{s1, s2, s3}};
}

// Positivity is diagnosed, never assumed: the printed S3 goes negative for
// any alpha != beta, and reporting that is part of the job.
struct PovmReport {
    double completeness_residual = 0.0;
    std::array<std::array<double, 2>, 3> eigenvalues{};
    std::array<bool, 3> is_positive{};
    bool overall_valid = false;
};

inline PovmReport povm_validate(const PovmSet& set, const Tolerances& tol = {}) {
    PovmReport rep;
    const Basis& b = set.effects[0].basis_in();
    std::size_t n = b.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx sum(0.0);
            for (const Operator& e : set.effects) sum += e.entry(i, j);
            cplx expect = (i == j) ? cplx(1.0) : cplx(0.0);
            rep.completeness_residual =
                std::max(rep.completeness_residual, std::abs(sum - expect));
        }
    rep.overall_valid = rep.completeness_residual <= 1e-12;
    for (std::size_t k = 0; k < 3; ++k) {
        auto ev = hermitian_eigenvalues(set.effects[k], tol);
        rep.eigenvalues[k] = {ev[0], ev[1]};
        rep.is_positive[k] = ev[0] >= -tol.eigen;
        rep.overall_valid = rep.overall_valid && rep.is_positive[k];
    }
    return rep;
}

struct InvalidPovmError : std::runtime_error {
    PovmReport report;
    explicit InvalidPovmError(PovmReport rep)
        : std::runtime_error("POVM invalid: an effect has a negative eigenvalue "
                             "or completeness fails"),
          report(std::move(rep)) {}
};

// Outcome labels: index 0 -> conclusive phi1, 1 -> conclusive phi2,
// 2 -> inconclusive.
struct DiscriminationResult {
    std::array<double, 3> probabilities{};
    double success_probability = 0.0;
};

inline DiscriminationResult discrimination_probs(const PovmSet& set,
                                                 const StateVector& spin,
                                                 const Tolerances& tol = {}) {
    PovmReport rep = povm_validate(set, tol);
    if (!rep.overall_valid) throw InvalidPovmError(std::move(rep));
    DiscriminationResult res;
    double total = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        res.probabilities[k] = inner(spin, apply(set.effects[k], spin)).real();
        total += res.probabilities[k];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::runtime_error("discrimination_probs: probabilities do not sum to 1");
    res.success_probability = 1.0 - res.probabilities[2];
    return res;
}

// Formal expectation values of the printed effects, with no positivity
// gate: these are the numbers the diagnosis is about. For phi1 the S1
// expectation is 4 alpha^2 beta^2 regardless of validity.
inline double formal_expectation(const Operator& effect, const StateVector& spin) {
    return inner(spin, apply(effect, spin)).real();
}

// Textbook optimal unambiguous-discrimination success probability for two
// equiprobable pure states: 1 - |<phi1|phi2>| = 1 - |alpha^2 - beta^2|.
inline double idp_optimum(const SpinPreparation& p) {
    return 1.0 - std::abs(p.alpha * p.alpha - p.beta * p.beta);
}

// The paper's printed success formula, reproduced for comparison only;
// it exceeds 1 away from alpha = beta and is not a probability.
inline double paper_success_formula(const SpinPreparation& p) {
    double ab2 = p.alpha * p.alpha * p.beta * p.beta;
    return 2.0 * (1.0 - 2.0 * ab2);
}

// Monte Carlo over path detection (deterministic given the case) plus the
// spin POVM. Outcomes indexed [path in {psi3, psi4}][povm in {S1, S2, S3}].
struct DiscriminationShotRecord {
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::array<std::array<std::uint64_t, 3>, 2> counts{};

    bool operator==(const DiscriminationShotRecord& o) const {
        return seed == o.seed && shots == o.shots && counts == o.counts;
    }
};

inline DiscriminationShotRecord sample_discrimination(const PovmSet& set,
                                                      const SpinPreparation& prep,
                                                      const protocol::Message& msg,
                                                      std::uint64_t shots,
                                                      std::uint64_t seed,
                                                      const Tolerances& tol = {}) {
    if (shots == 0)
        throw std::invalid_argument("sample_discrimination: shots must be >= 1");
    double phi = msg.b_path ? kPi : 0.0;
    double delta = msg.b_spin ? kPi : 0.0;
    std::size_t path_idx = msg.b_path ? 1 : 0; // phi selects the channel exactly
    StateVector spin = prepared_spin(SpinPreparation(prep.alpha, prep.beta, delta));
    DiscriminationResult probs = discrimination_probs(set, spin, tol);
    (void)phi;
    std::array<double, 3> cdf{};
    double acc = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        acc += probs.probabilities[k];
        cdf[k] = acc;
    }
    cdf[2] = 1.0;
    DiscriminationShotRecord rec;
    rec.seed = seed;
    rec.shots = shots;
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = rng::uniform(seed, s);
        std::size_t k = 0;
        while (k < 2 && u >= cdf[k]) ++k;
        ++rec.counts[path_idx][k];
    }
    return rec;
}

} // namespace pathspin::discrimination
