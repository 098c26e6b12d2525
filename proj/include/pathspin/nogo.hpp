// Three-beam-splitter extension: the four-state family behind BS3 and an
// exhaustive search showing no three of them are ever mutually orthogonal,
// so adding BS3 cannot push the scheme past four distinguishable outcomes.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hilbert.hpp"
#include "optics.hpp"
#include "protocol.hpp"

namespace pathspin::nogo {

inline double canonical_phase(double x) {
    double two_pi = 2.0 * kPi;
    double y = std::fmod(x, two_pi);
    if (y < 0.0) y += two_pi;
    return y;
}

struct PhaseQuadruple {
    double eta1 = 0.0, eta2 = 0.0, phi1 = 0.0, phi2 = 0.0;

    PhaseQuadruple() = default;
    PhaseQuadruple(double e1, double e2, double p1, double p2)
        : eta1(canonical_phase(e1)), eta2(canonical_phase(e2)),
          phi1(canonical_phase(p1)), phi2(canonical_phase(p2)) {}
};

inline const Basis& bs3_output_basis() {
    static const Basis b({"psi5", "psi6"});
    return b;
}

// Path amplitudes behind BS3, closed form:
// (1/(2 sqrt2)) [(-e^{i eta}(1+e^{i phi}) + (1-e^{i phi})) |psi5>
//               + i(e^{i eta}(1+e^{i phi}) + (1-e^{i phi})) |psi6>].
inline StateVector bs3_path_state(double eta, double phi) {
    cplx ee = std::exp(cplx(0.0, eta));
    cplx ep = std::exp(cplx(0.0, phi));
    cplx a = ee * (1.0 + ep);
    cplx b = 1.0 - ep;
    double r = 1.0 / (2.0 * std::sqrt(2.0));
    return StateVector({r * (-a + b), r * cplx(0.0, 1.0) * (a + b)}, bs3_output_basis());
}

// Closed-form full state behind BS3: path factor above tensored with chi.
inline StateVector bs3_state(double eta, double phi, const StateVector& chi) {
    return tensor(bs3_path_state(eta, phi), chi);
}

// Same state computed element by element through the full pipeline
// BS1 -> PS(phi) -> BS2 -> PS(eta on psi3) -> BS3. Oracle for the closed form.
inline StateVector bs3_state_pipeline(double eta, double phi, double delta) {
    using namespace optics;
    using namespace protocol;
    StateVector state = tensor(StateVector::basis_state(bs1_input_basis(), "in2"),
                               spin_up());
    state = apply(spin_rotator_on(bs1_input_basis(), delta), state);
    state = apply(beam_splitter("in1", "in2", "psi1", "psi2"), state);
    state = apply(phase_shifter(arm_basis(), "psi2", phi), state);
    state = apply(beam_splitter("psi1", "psi2", "psi3", "psi4"), state);
    state = apply(phase_shifter(output_basis(), "psi3", eta), state);
    state = apply(beam_splitter("psi3", "psi4", "psi5", "psi6"), state);
    return state;
}

// Family members ordered (11, 12, 21, 22): state ab uses (eta_a, phi_b).
inline std::array<StateVector, 4> state_family(const PhaseQuadruple& q,
                                               const StateVector& chi) {
    return {bs3_state(q.eta1, q.phi1, chi), bs3_state(q.eta1, q.phi2, chi),
            bs3_state(q.eta2, q.phi1, chi), bs3_state(q.eta2, q.phi2, chi)};
}

inline std::array<StateVector, 4> path_family(const PhaseQuadruple& q) {
    return {bs3_path_state(q.eta1, q.phi1), bs3_path_state(q.eta1, q.phi2),
            bs3_path_state(q.eta2, q.phi1), bs3_path_state(q.eta2, q.phi2)};
}

using GramMatrix = std::array<std::array<cplx, 4>, 4>;

inline GramMatrix gram(const std::array<StateVector, 4>& states) {
    GramMatrix g{};
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            g[a][b] = inner(states[a], states[b]);
    return g;
}

struct OrthogonalityReport {
    PhaseQuadruple quadruple;
    int max_subset_size = 1;
    std::vector<int> witness; // indices into the (11,12,21,22) order
    double tolerance = 1e-9;
};

// Exact maximum over all 2^4 subsets of the family: a subset counts when
// every pair inside it has |<a|b>| <= tol.
inline OrthogonalityReport max_orthogonal_subset(const GramMatrix& g, double tol) {
    OrthogonalityReport rep;
    rep.tolerance = tol;
    for (unsigned mask = 1; mask < 16; ++mask) {
        std::vector<int> members;
        for (int i = 0; i < 4; ++i)
            if (mask & (1u << i)) members.push_back(i);
        bool ok = true;
        for (std::size_t a = 0; a < members.size() && ok; ++a)
            for (std::size_t b = a + 1; b < members.size() && ok; ++b)
                if (std::abs(g[members[a]][members[b]]) > tol) ok = false;
        if (ok && static_cast<int>(members.size()) > rep.max_subset_size) {
            rep.max_subset_size = static_cast<int>(members.size());
            rep.witness = members;
        }
    }
    if (rep.witness.empty()) rep.witness = {0};
    return rep;
}

struct ScanReport {
    int grid_steps = 24;
    double tolerance = 1e-9;
    std::size_t quadruples_examined = 0;
    int overall_max = 0;
    std::size_t size2_count = 0;
    std::vector<PhaseQuadruple> sample_witnesses; // first few size-2 quadruples
    // Constrained-point check: wherever both paper orthogonality conditions
    // hold, the third overlap is maximal.
    std::size_t constrained_points = 0;
    double min_third_overlap = 1.0; // min over constrained points of |<psi12|psi21>|
    bool third_overlap_maximal = true;
};

namespace detail {

inline void scan_one(const PhaseQuadruple& q, double tol, ScanReport& rep,
                     std::size_t max_witnesses) {
    auto fam = path_family(q);
    GramMatrix g = gram(fam);
    OrthogonalityReport r = max_orthogonal_subset(g, tol);
    ++rep.quadruples_examined;
    if (r.max_subset_size > rep.overall_max) rep.overall_max = r.max_subset_size;
    if (r.max_subset_size == 2) {
        ++rep.size2_count;
        if (rep.sample_witnesses.size() < max_witnesses)
            rep.sample_witnesses.push_back(q);
    }
    // Both of the paper's requirements: <psi11|psi12> = 0 and <psi11|psi21> = 0.
    if (std::abs(g[0][1]) <= tol && std::abs(g[0][2]) <= tol) {
        ++rep.constrained_points;
        double third = std::abs(g[1][2]);
        rep.min_third_overlap = std::min(rep.min_third_overlap, third);
        if (third < 1.0 - tol) rep.third_overlap_maximal = false;
    }
}

} // namespace detail

// Uniform grid {2 pi k / steps}^4 over (eta1, eta2, phi1, phi2), augmented
// with the analytic corner cases phi1 in {pi/2, 3pi/2}, phi2 = phi1 + pi,
// eta2 = eta1 + pi, which lie exactly on the constraint surface.
inline ScanReport scan(int grid_steps, double tol, std::size_t max_witnesses = 8) {
    if (grid_steps < 8)
        throw std::invalid_argument("scan: grid_steps must be >= 8");
    ScanReport rep;
    rep.grid_steps = grid_steps;
    rep.tolerance = tol;
    double step = 2.0 * kPi / grid_steps;
    for (int a = 0; a < grid_steps; ++a)
        for (int b = 0; b < grid_steps; ++b)
            for (int c = 0; c < grid_steps; ++c)
                for (int d = 0; d < grid_steps; ++d)
                    detail::scan_one(PhaseQuadruple(a * step, b * step, c * step, d * step),
                                     tol, rep, max_witnesses);
    for (double phi1 : {kPi / 2.0, 3.0 * kPi / 2.0})
        for (int a = 0; a < grid_steps; ++a) {
            double eta1 = a * step;
            detail::scan_one(PhaseQuadruple(eta1, eta1 + kPi, phi1, phi1 + kPi),
                             tol, rep, max_witnesses);
        }
    return rep;
}

} // namespace pathspin::nogo
