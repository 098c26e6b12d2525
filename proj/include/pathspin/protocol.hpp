// Deterministic dense-coding pipeline: two classical bits -> phase settings
// (delta, phi) -> evolution through SR, BS1, PS, BS2 -> Stern-Gerlach
// detection over four channels -> decoded bits. Also the classical channel
// matrix, its mutual information, and seeded shot sampling.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "hilbert.hpp"
#include "optics.hpp"
#include "rng.hpp"

namespace pathspin::protocol {

struct Message {
    int b_spin = 0; // drives delta
    int b_path = 0; // drives phi

    Message() = default;
    Message(int spin_bit, int path_bit) : b_spin(spin_bit), b_path(path_bit) {
        if ((b_spin != 0 && b_spin != 1) || (b_path != 0 && b_path != 1))
            throw std::invalid_argument("Message: bits must be 0 or 1");
    }

    bool operator==(const Message& o) const {
        return b_spin == o.b_spin && b_path == o.b_path;
    }
    std::string str() const {
        return std::string(1, char('0' + b_spin)) + char('0' + b_path);
    }
    int index() const { return 2 * b_spin + b_path; } // row order for the channel matrix
};

enum class UnitaryName { U1, U2, U3, U4 };

inline const char* to_string(UnitaryName u) {
    switch (u) {
        case UnitaryName::U1: return "U1";
        case UnitaryName::U2: return "U2";
        case UnitaryName::U3: return "U3";
        default: return "U4";
    }
}

struct EncoderSettings {
    double delta = 0.0;
    double phi = 0.0;
    UnitaryName name = UnitaryName::U1;
};

// U1=(0,0), U2=(0,pi), U3=(pi,0), U4=(pi,pi).
inline EncoderSettings encode(const Message& msg) {
    EncoderSettings s;
    s.delta = msg.b_spin ? kPi : 0.0;
    s.phi = msg.b_path ? kPi : 0.0;
    static constexpr UnitaryName table[2][2] = {
        {UnitaryName::U1, UnitaryName::U2},
        {UnitaryName::U3, UnitaryName::U4},
    };
    s.name = table[msg.b_spin][msg.b_path];
    return s;
}

enum class Detector { S1, S2, S3, S4 };

inline const char* to_string(Detector d) {
    switch (d) {
        case Detector::S1: return "S1";
        case Detector::S2: return "S2";
        case Detector::S3: return "S3";
        default: return "S4";
    }
}

// SG1 sits in psi3 (S1: spin up, S2: spin down); SG2 sits in psi4 (S3/S4).
inline std::string detector_path(Detector d) {
    return (d == Detector::S1 || d == Detector::S2) ? "psi3" : "psi4";
}
inline std::string detector_spin(Detector d) {
    return (d == Detector::S1 || d == Detector::S3) ? "up" : "down";
}

inline constexpr std::array<Detector, 4> kDetectors = {Detector::S1, Detector::S2,
                                                       Detector::S3, Detector::S4};

using OutcomeDistribution = std::array<double, 4>; // indexed by Detector

inline const Basis& bs1_input_basis() {
    static const Basis b({"in1", "in2"});
    return b;
}
inline const Basis& arm_basis() {
    static const Basis b({"psi1", "psi2"});
    return b;
}
inline const Basis& output_basis() {
    static const Basis b({"psi3", "psi4"});
    return b;
}
inline const Basis& product_output_basis() {
    static const Basis b = Basis::product(output_basis(), optics::spin_basis());
    return b;
}

// Element-by-element evolution of Fig. 1: the particle enters BS1 on the
// port whose transmitted channel is psi1 (reflection into psi2 carries the
// factor i), so the post-BS1 path state is (|psi1> + i|psi2>)/sqrt2.
inline StateVector evolve(const EncoderSettings& s) {
    using namespace optics;
    StateVector state = tensor(StateVector::basis_state(bs1_input_basis(), "in2"),
                               spin_up());
    state = apply(spin_rotator_on(bs1_input_basis(), s.delta), state);
    state = apply(beam_splitter("in1", "in2", "psi1", "psi2"), state);
    state = apply(phase_shifter(arm_basis(), "psi2", s.phi), state);
    state = apply(mirror(arm_basis()), state);
    state = apply(beam_splitter("psi1", "psi2", "psi3", "psi4"), state);
    return state;
}

// Closed form of the post-BS1+PS state: (|psi1> + i e^{i phi}|psi2>)/sqrt2
// tensored with chi(delta).
inline StateVector closed_form_after_bs1_ps(double delta, double phi) {
    double r = 1.0 / std::sqrt(2.0);
    StateVector path({cplx(r), cplx(0.0, r) * std::exp(cplx(0.0, phi))}, arm_basis());
    return tensor(path, optics::chi_state(delta));
}

// Closed form of the post-BS2 state:
// (1/2)[i(1+e^{i phi})|psi3> + (1-e^{i phi})|psi4>] x chi(delta).
inline StateVector closed_form_after_bs2(double delta, double phi) {
    cplx e = std::exp(cplx(0.0, phi));
    cplx a3 = cplx(0.0, 0.5) * (1.0 + e);
    cplx a4 = cplx(0.5) * (1.0 - e);
    StateVector path({a3, a4}, output_basis());
    return tensor(path, optics::chi_state(delta));
}

inline OutcomeDistribution detection_distribution(const StateVector& state) {
    if (state.basis() != product_output_basis())
        throw std::invalid_argument("detection_distribution: state not in (psi3,psi4) x spin basis");
    OutcomeDistribution out{};
    double total = 0.0;
    for (std::size_t i = 0; i < kDetectors.size(); ++i) {
        Detector d = kDetectors[i];
        auto [pu, pd] = optics::stern_gerlach_projectors(output_basis(), detector_path(d));
        const Operator& proj = detector_spin(d) == "up" ? pu : pd;
        StateVector projected = apply(proj, state);
        double p = projected.norm();
        out[i] = p * p;
        total += out[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("detection_distribution: probabilities do not sum to 1");
    return out;
}

// Lowest channel id wins ties (the deterministic scheme never ties).
inline Detector argmax_detector(const OutcomeDistribution& dist) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < dist.size(); ++i)
        if (dist[i] > dist[best]) best = i;
    return kDetectors[best];
}

// Inverse of encode -> evolve -> argmax: S1->00, S2->10, S3->01, S4->11.
inline Message decode(Detector d) {
    switch (d) {
        case Detector::S1: return Message(0, 0);
        case Detector::S2: return Message(1, 0);
        case Detector::S3: return Message(0, 1);
        default: return Message(1, 1);
    }
}

struct ShotRecord {
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::array<std::uint64_t, 4> counts{}; // indexed by Detector

    bool operator==(const ShotRecord& o) const {
        return seed == o.seed && shots == o.shots && counts == o.counts;
    }
};

inline std::array<std::uint64_t, 4> sample_counts(const OutcomeDistribution& dist,
                                                  std::uint64_t shots,
                                                  std::uint64_t seed) {
    std::array<double, 4> cdf{};
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        acc += dist[i];
        cdf[i] = acc;
    }
    cdf[3] = 1.0; // guard against roundoff in the last bin
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t k = 0; k < shots; ++k) {
        double u = rng::uniform(seed, k);
        std::size_t i = 0;
        while (i < 3 && u >= cdf[i]) ++i;
        ++counts[i];
    }
    return counts;
}

inline ShotRecord sample_shots(const EncoderSettings& s, std::uint64_t shots,
                               std::uint64_t seed) {
    if (shots == 0)
        throw std::invalid_argument("sample_shots: shots must be >= 1");
    ShotRecord rec;
    rec.seed = seed;
    rec.shots = shots;
    rec.counts = sample_counts(detection_distribution(evolve(s)), shots, seed);
    return rec;
}

// Row m = detection distribution of message m (rows ordered by Message::index).
using ChannelMatrix = std::array<std::array<double, 4>, 4>;

inline ChannelMatrix channel_matrix() {
    ChannelMatrix m{};
    for (int bs = 0; bs < 2; ++bs)
        for (int bp = 0; bp < 2; ++bp) {
            Message msg(bs, bp);
            m[msg.index()] = detection_distribution(evolve(encode(msg)));
        }
    return m;
}

// I(X;Y) in bits; 0 log 0 = 0.
inline double mutual_information(const ChannelMatrix& channel,
                                 const std::array<double, 4>& prior) {
    double psum = 0.0;
    for (double p : prior) {
        if (p < 0.0) throw std::invalid_argument("mutual_information: negative prior");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-9)
        throw std::invalid_argument("mutual_information: prior not a distribution");
    std::array<double, 4> py{};
    for (std::size_t x = 0; x < 4; ++x) {
        double rowsum = 0.0;
        for (std::size_t y = 0; y < 4; ++y) {
            if (channel[x][y] < -1e-12)
                throw std::invalid_argument("mutual_information: negative channel entry");
            rowsum += channel[x][y];
            py[y] += prior[x] * channel[x][y];
        }
        if (std::abs(rowsum - 1.0) > 1e-9)
            throw std::invalid_argument("mutual_information: channel row not a distribution");
    }
    double info = 0.0;
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y) {
            double joint = prior[x] * channel[x][y];
            if (joint > 0.0 && py[y] > 0.0)
                info += joint * std::log2(channel[x][y] / py[y]);
        }
    return info;
}

inline std::array<double, 4> uniform_prior() { return {0.25, 0.25, 0.25, 0.25}; }

} // namespace pathspin::protocol
