#include "qel/linalg.hpp"

#include <stdexcept>

namespace qel {

Ket::Ket(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw std::invalid_argument("Ket: dimension must be positive");
}

Ket::Ket(std::initializer_list<cplx> amplitudes) : amps_(static_cast<Eigen::Index>(amplitudes.size())) {
    if (amplitudes.size() == 0) throw std::invalid_argument("Ket: dimension must be positive");
    Eigen::Index i = 0;
    for (const auto& a : amplitudes) amps_[i++] = a;
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("Ket::basis: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return Ket(std::move(v));
}

Ket Ket::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("Ket::normalized: zero vector");
    return Ket(amps_ / n);
}

cplx Ket::inner(const Ket& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("Ket::inner: dimension mismatch");
    return amps_.dot(other.amps_);  // Eigen's dot conjugates the left operand
}

Ket Ket::operator+(const Ket& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("Ket: dimension mismatch");
    return Ket(amps_ + other.amps_);
}

Ket Ket::operator-(const Ket& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("Ket: dimension mismatch");
    return Ket(amps_ - other.amps_);
}

Ket Ket::operator*(cplx s) const { return Ket(amps_ * s); }

Operator::Operator(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
        throw std::invalid_argument("Operator: matrix must be square and non-empty");
}

Operator Operator::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator(Eigen::MatrixXcd::Identity(n, n));
}

Operator Operator::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator(Eigen::MatrixXcd::Zero(n, n));
}

Operator Operator::projector(const Ket& k) { return Operator(k.vec() * k.vec().adjoint()); }

Operator Operator::operator+(const Operator& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("Operator: dimension mismatch");
    return Operator(m_ + o.m_);
}

Operator Operator::operator-(const Operator& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("Operator: dimension mismatch");
    return Operator(m_ - o.m_);
}

Operator Operator::operator*(const Operator& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("Operator: dimension mismatch");
    return Operator(m_ * o.m_);
}

Operator Operator::operator*(cplx s) const { return Operator(m_ * s); }

Ket Operator::operator*(const Ket& k) const {
    if (k.dim() != dim()) throw std::invalid_argument("Operator: dimension mismatch");
    return Ket(m_ * k.vec());
}

cplx Operator::expectation(const Ket& a, const Ket& b) const { return a.inner((*this) * b); }

double Operator::expectation(const Ket& k) const { return expectation(k, k).real(); }

Ket tensor(const Ket& a, const Ket& b) {
    const auto na = static_cast<Eigen::Index>(a.dim());
    const auto nb = static_cast<Eigen::Index>(b.dim());
    Eigen::VectorXcd out(na * nb);
    for (Eigen::Index i = 0; i < na; ++i) out.segment(i * nb, nb) = a.vec()[i] * b.vec();
    return Ket(std::move(out));
}

Operator tensor(const Operator& a, const Operator& b) {
    const auto na = static_cast<Eigen::Index>(a.dim());
    const auto nb = static_cast<Eigen::Index>(b.dim());
    Eigen::MatrixXcd out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i)
        for (Eigen::Index j = 0; j < na; ++j)
            out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    return Operator(std::move(out));
}

Operator partial_trace(const Operator& rho, Subsystem keep, std::size_t dim_a, std::size_t dim_b) {
    if (dim_a == 0 || dim_b == 0 || rho.dim() != dim_a * dim_b)
        throw std::invalid_argument("partial_trace: operator dimension does not match dim_a * dim_b");
    const auto na = static_cast<Eigen::Index>(dim_a);
    const auto nb = static_cast<Eigen::Index>(dim_b);
    const auto& m = rho.matrix();
    if (keep == Subsystem::a) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(na, na);
        for (Eigen::Index i = 0; i < na; ++i)
            for (Eigen::Index j = 0; j < na; ++j)
                for (Eigen::Index k = 0; k < nb; ++k) out(i, j) += m(i * nb + k, j * nb + k);
        return Operator(std::move(out));
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nb, nb);
    for (Eigen::Index k = 0; k < na; ++k) out += m.block(k * nb, k * nb, nb, nb);
    return Operator(std::move(out));
}

std::vector<double> hermitian_eigenvalues(const Operator& op) {
    const Eigen::MatrixXcd h = 0.5 * (op.matrix() + op.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double hermiticity_defect(const Operator& op) {
    return (op.matrix() - op.matrix().adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

bool check_density(const Operator& op, double tol) {
    if (hermiticity_defect(op) > tol) return false;
    if (std::abs(op.trace() - cplx(1.0, 0.0)) > tol) return false;
    return hermitian_eigenvalues(op).front() >= -tol;
}

}  // namespace qel
