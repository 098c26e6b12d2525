// Small-dimension complex linear algebra for path-spin interferometry.
// Everything is dense, immutable after construction, and dimension <= 8.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pathspin {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Tolerances {
    double algebraic = 1e-12;
    double eigen = 1e-10;

    Tolerances() = default;
    Tolerances(double alg, double eig) : algebraic(alg), eigen(eig) {
        if (!(alg > 0.0) || !(eig > 0.0) || alg > eig)
            throw std::invalid_argument("Tolerances: require 0 < algebraic <= eigen");
    }
};

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Ordered distinct symbolic labels for the basis kets of a space.
class Basis {
public:
    Basis() = default;
    explicit Basis(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j])
                    throw std::invalid_argument("Basis: duplicate label " + labels_[i]);
    }

    std::size_t dim() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::size_t index_of(const std::string& name) const {
        auto it = std::find(labels_.begin(), labels_.end(), name);
        if (it == labels_.end())
            throw std::invalid_argument("Basis: unknown label " + name);
        return static_cast<std::size_t>(it - labels_.begin());
    }

    bool contains(const std::string& name) const {
        return std::find(labels_.begin(), labels_.end(), name) != labels_.end();
    }

    bool operator==(const Basis& o) const { return labels_ == o.labels_; }
    bool operator!=(const Basis& o) const { return !(*this == o); }

    // Product labels ordered first-factor major: (a0,b0), (a0,b1), ...
    static Basis product(const Basis& a, const Basis& b) {
        std::vector<std::string> out;
        out.reserve(a.dim() * b.dim());
        for (const auto& la : a.labels())
            for (const auto& lb : b.labels())
                out.push_back(la + "*" + lb);
        return Basis(std::move(out));
    }

private:
    std::vector<std::string> labels_;
};

// Complex amplitude vector over a labeled basis. States are unit norm unless
// explicitly marked unnormalized (intermediate arithmetic only).
class StateVector {
public:
    StateVector(std::vector<cplx> amps, Basis basis, bool normalized = true)
        : amps_(std::move(amps)), basis_(std::move(basis)), normalized_(normalized) {
        if (amps_.size() != basis_.dim())
            throw std::invalid_argument("StateVector: amplitude count != basis dim");
        for (cplx a : amps_)
            if (!is_finite(a))
                throw std::invalid_argument("StateVector: non-finite amplitude");
        if (normalized_ && std::abs(norm() - 1.0) > 1e-12)
            throw std::invalid_argument("StateVector: not unit norm");
    }

    static StateVector basis_state(const Basis& basis, const std::string& label) {
        std::vector<cplx> amps(basis.dim(), cplx(0.0));
        amps[basis.index_of(label)] = cplx(1.0);
        return StateVector(std::move(amps), basis);
    }

    std::size_t dim() const { return amps_.size(); }
    const Basis& basis() const { return basis_; }
    cplx amp(std::size_t i) const { return amps_.at(i); }
    cplx amp(const std::string& label) const { return amps_[basis_.index_of(label)]; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    bool marked_normalized() const { return normalized_; }

    double norm() const {
        double s = 0.0;
        for (cplx a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    StateVector normalized() const {
        double n = norm();
        if (n == 0.0) throw std::invalid_argument("StateVector: cannot normalize zero vector");
        std::vector<cplx> out(amps_);
        for (cplx& a : out) a /= n;
        return StateVector(std::move(out), basis_);
    }

    StateVector scaled(cplx factor) const {
        std::vector<cplx> out(amps_);
        for (cplx& a : out) a *= factor;
        return StateVector(std::move(out), basis_, false);
    }

private:
    std::vector<cplx> amps_;
    Basis basis_;
    bool normalized_;
};

// Square complex matrix mapping basis_in kets to basis_out kets (row-major).
class Operator {
public:
    Operator(std::vector<cplx> entries, Basis basis_in, Basis basis_out)
        : entries_(std::move(entries)),
          in_(std::move(basis_in)),
          out_(std::move(basis_out)) {
        if (in_.dim() != out_.dim())
            throw std::invalid_argument("Operator: must be square");
        if (entries_.size() != in_.dim() * in_.dim())
            throw std::invalid_argument("Operator: entry count != dim^2");
        for (cplx e : entries_)
            if (!is_finite(e))
                throw std::invalid_argument("Operator: non-finite entry");
    }

    static Operator identity(const Basis& basis) {
        std::size_t n = basis.dim();
        std::vector<cplx> e(n * n, cplx(0.0));
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = cplx(1.0);
        return Operator(std::move(e), basis, basis);
    }

    std::size_t dim() const { return in_.dim(); }
    const Basis& basis_in() const { return in_; }
    const Basis& basis_out() const { return out_; }
    cplx entry(std::size_t row, std::size_t col) const { return entries_.at(row * dim() + col); }
    const std::vector<cplx>& entries() const { return entries_; }

    Operator adjoint() const {
        std::size_t n = dim();
        std::vector<cplx> e(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                e[i * n + j] = std::conj(entry(j, i));
        return Operator(std::move(e), out_, in_);
    }

    bool is_hermitian(double tol) const {
        if (in_ != out_) return false;
        std::size_t n = dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (std::abs(entry(i, j) - std::conj(entry(j, i))) > tol) return false;
        return true;
    }

private:
    std::vector<cplx> entries_;
    Basis in_, out_;
};

// a then b, i.e. compose(b, a) * s == b(a(s)).
inline Operator compose(const Operator& later, const Operator& earlier) {
    if (later.basis_in() != earlier.basis_out())
        throw std::invalid_argument("compose: basis mismatch");
    std::size_t n = later.dim();
    std::vector<cplx> e(n * n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            cplx lik = later.entry(i, k);
            if (lik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j)
                e[i * n + j] += lik * earlier.entry(k, j);
        }
    return Operator(std::move(e), earlier.basis_in(), later.basis_out());
}

inline StateVector apply(const Operator& op, const StateVector& s) {
    if (op.basis_in() != s.basis())
        throw std::invalid_argument("apply: operator input basis != state basis");
    std::size_t n = op.dim();
    std::vector<cplx> out(n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i] += op.entry(i, j) * s.amp(j);
    double nn = 0.0;
    for (cplx a : out) nn += std::norm(a);
    bool unit = std::abs(std::sqrt(nn) - 1.0) <= 1e-12;
    return StateVector(std::move(out), op.basis_out(), unit);
}

// Kronecker product, first factor major.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<cplx> out;
    out.reserve(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            out.push_back(a.amp(i) * b.amp(j));
    bool unit = a.marked_normalized() && b.marked_normalized();
    return StateVector(std::move(out), Basis::product(a.basis(), b.basis()), unit);
}

inline Operator tensor(const Operator& a, const Operator& b) {
    std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
    std::vector<cplx> e(n * n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    e[(i * nb + k) * n + (j * nb + l)] = a.entry(i, j) * b.entry(k, l);
    return Operator(std::move(e),
                    Basis::product(a.basis_in(), b.basis_in()),
                    Basis::product(a.basis_out(), b.basis_out()));
}

// <a|b>, conjugate-linear in the first argument.
inline cplx inner(const StateVector& a, const StateVector& b) {
    if (a.basis() != b.basis())
        throw std::invalid_argument("inner: basis mismatch");
    cplx s(0.0);
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += std::conj(a.amp(i)) * b.amp(i);
    return s;
}

// Rank-1 projector |label><label|.
inline Operator projector(const Basis& basis, const std::string& label) {
    std::size_t n = basis.dim();
    std::size_t k = basis.index_of(label);
    std::vector<cplx> e(n * n, cplx(0.0));
    e[k * n + k] = cplx(1.0);
    return Operator(std::move(e), basis, basis);
}

inline bool is_unitary(const Operator& op, const Tolerances& tol = {}) {
    Operator prod = compose(op.adjoint(), op);
    std::size_t n = prod.dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx expect = (i == j) ? cplx(1.0) : cplx(0.0);
            worst = std::max(worst, std::abs(prod.entry(i, j) - expect));
        }
    return worst <= tol.algebraic;
}

namespace detail {

// Cyclic Jacobi sweeps on a Hermitian matrix, in place, until the
// off-diagonal Frobenius norm drops below 1e-12.
inline std::vector<double> jacobi_eigenvalues(std::vector<cplx> m, std::size_t n) {
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(m[i * n + j]);
        return std::sqrt(s);
    };
    for (int sweep = 0; sweep < 100 && off_norm() > 1e-12; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx apq = m[p * n + q];
                double g = std::abs(apq);
                if (g < 1e-300) continue;
                double app = m[p * n + p].real();
                double aqq = m[q * n + q].real();
                // Pivot phase factored out so the rotation angle is real.
                cplx phase = std::conj(apq) / g;
                double theta = 0.5 * std::atan2(2.0 * g, app - aqq);
                double c = std::cos(theta), s = std::sin(theta);
                // A <- R^dag A R with R[p][p]=c, R[p][q]=-s e^{-i phi},
                // R[q][p]=s e^{i phi}, R[q][q]=c.
                for (std::size_t k = 0; k < n; ++k) {
                    cplx mkp = m[k * n + p], mkq = m[k * n + q];
                    m[k * n + p] = c * mkp + s * phase * mkq;
                    m[k * n + q] = -s * std::conj(phase) * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    cplx mpk = m[p * n + k], mqk = m[q * n + k];
                    m[p * n + k] = c * mpk + s * std::conj(phase) * mqk;
                    m[q * n + k] = -s * phase * mpk + c * mqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m[i * n + i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace detail

// Real eigenvalues of a Hermitian operator, ascending. Closed form at dim 2,
// cyclic Jacobi above that (dim capped at 8).
inline std::vector<double> hermitian_eigenvalues(const Operator& op,
                                                 const Tolerances& tol = {}) {
    if (!op.is_hermitian(tol.algebraic))
        throw std::invalid_argument("hermitian_eigenvalues: operator not Hermitian");
    std::size_t n = op.dim();
    if (n > 8)
        throw std::invalid_argument("hermitian_eigenvalues: dim > 8 unsupported");
    if (n == 1) return {op.entry(0, 0).real()};
    if (n == 2) {
        double a = op.entry(0, 0).real();
        double d = op.entry(1, 1).real();
        double b2 = std::norm(op.entry(0, 1));
        double tr = a + d;
        double disc = std::sqrt((a - d) * (a - d) + 4.0 * b2);
        return {0.5 * (tr - disc), 0.5 * (tr + disc)};
    }
    return detail::jacobi_eigenvalues(op.entries(), n);
}

} // namespace pathspin
