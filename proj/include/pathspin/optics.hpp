// Interferometer elements as operators on the path x spin product space.
//
// Conventions, fixed once for the whole library:
//   - spin computational basis is z: {up, down}, with
//     |right>_x = (|up> + |down>)/sqrt2 and |left>_x = (|up> - |down>)/sqrt2;
//   - every beam splitter is the 2x2 path unitary (1/sqrt2)[[i,1],[1,i]]
//     in the given (in, out) label order: reflection picks up a factor i;
//   - product bases are path major, spin minor.

#pragma once

#include "hilbert.hpp"

namespace pathspin::optics {

inline const Basis& spin_basis() {
    static const Basis b({"up", "down"});
    return b;
}

inline StateVector spin_up() { return StateVector::basis_state(spin_basis(), "up"); }
inline StateVector spin_down() { return StateVector::basis_state(spin_basis(), "down"); }

// x-basis kets expanded in the canonical z layout.
inline StateVector spin_right() {
    double r = 1.0 / std::sqrt(2.0);
    return StateVector({cplx(r), cplx(r)}, spin_basis());
}
inline StateVector spin_left() {
    double r = 1.0 / std::sqrt(2.0);
    return StateVector({cplx(r), cplx(-r)}, spin_basis());
}

// SR is diagonal in the x basis with phases (1, e^{i delta}): it sends
// |up>_z to (|right> + e^{i delta}|left>)/sqrt2. Returned in the z layout.
inline Operator spin_rotator(double delta) {
    cplx e = std::exp(cplx(0.0, delta));
    cplx half(0.5);
    // H diag(1, e^{i delta}) H
    std::vector<cplx> m = {
        half * (1.0 + e), half * (1.0 - e),
        half * (1.0 - e), half * (1.0 + e),
    };
    return Operator(std::move(m), spin_basis(), spin_basis());
}

// The spin state chi(delta) produced by SR acting on |up>_z.
inline StateVector chi_state(double delta) {
    return apply(spin_rotator(delta), spin_up());
}

// 2x2 path beam splitter mapping {in0, in1} to {out0, out1}:
// |in0> -> (i|out0> + |out1>)/sqrt2, |in1> -> (|out0> + i|out1>)/sqrt2.
inline Operator beam_splitter_path(const std::string& in0, const std::string& in1,
                                   const std::string& out0, const std::string& out1) {
    if (in0 == in1 || out0 == out1)
        throw std::invalid_argument("beam_splitter: duplicate labels");
    double r = 1.0 / std::sqrt(2.0);
    std::vector<cplx> m = {
        cplx(0.0, r), cplx(r, 0.0),
        cplx(r, 0.0), cplx(0.0, r),
    };
    return Operator(std::move(m), Basis({in0, in1}), Basis({out0, out1}));
}

// Phase shifter on one path channel: multiplies the target amplitude
// by e^{i phase}, identity elsewhere.
inline Operator phase_shifter_path(const Basis& path, const std::string& target,
                                   double phase) {
    std::size_t n = path.dim();
    std::size_t t = path.index_of(target);
    std::vector<cplx> m(n * n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i)
        m[i * n + i] = (i == t) ? std::exp(cplx(0.0, phase)) : cplx(1.0);
    return Operator(std::move(m), path, path);
}

// Full path x spin versions (identity on the spin factor).
inline Operator beam_splitter(const std::string& in0, const std::string& in1,
                              const std::string& out0, const std::string& out1) {
    return tensor(beam_splitter_path(in0, in1, out0, out1),
                  Operator::identity(spin_basis()));
}

inline Operator phase_shifter(const Basis& path, const std::string& target,
                              double phase) {
    return tensor(phase_shifter_path(path, target, phase),
                  Operator::identity(spin_basis()));
}

// Mirrors impart no net relative phase; any common phase is global and dropped.
inline Operator mirror(const Basis& path) {
    return tensor(Operator::identity(path), Operator::identity(spin_basis()));
}

// SR lifted to the product space.
inline Operator spin_rotator_on(const Basis& path, double delta) {
    return tensor(Operator::identity(path), spin_rotator(delta));
}

// Projective spin measurement along z in one path channel:
// {|path><path| x |up><up|, |path><path| x |down><down|}.
inline std::pair<Operator, Operator> stern_gerlach_projectors(const Basis& path,
                                                              const std::string& channel) {
    Operator pp = projector(path, channel);
    return {tensor(pp, projector(spin_basis(), "up")),
            tensor(pp, projector(spin_basis(), "down"))};
}

} // namespace pathspin::optics
