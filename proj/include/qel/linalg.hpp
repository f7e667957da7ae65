#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qel {

using cplx = std::complex<double>;

// Tolerances shared by every density-operator check in the library.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdFloor = -1e-9;

/// State vector of a finite-dimensional system.
class Ket {
public:
    explicit Ket(Eigen::VectorXcd amplitudes);
    Ket(std::initializer_list<cplx> amplitudes);

    static Ket basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const cplx& operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
    const Eigen::VectorXcd& vec() const { return amps_; }

    double norm() const { return amps_.norm(); }
    Ket normalized() const;
    /// <this|other>
    cplx inner(const Ket& other) const;

    Ket operator+(const Ket& other) const;
    Ket operator-(const Ket& other) const;
    Ket operator*(cplx s) const;

private:
    Eigen::VectorXcd amps_;
};

/// Dense square complex matrix with its dimension carried explicitly.
class Operator {
public:
    explicit Operator(Eigen::MatrixXcd entries);

    static Operator identity(std::size_t dim);
    static Operator zero(std::size_t dim);
    static Operator projector(const Ket& k);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    cplx operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    cplx trace() const { return m_.trace(); }
    Operator adjoint() const { return Operator(m_.adjoint()); }

    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(const Operator& o) const;
    Operator operator*(cplx s) const;
    Ket operator*(const Ket& k) const;

    /// <a|this|b>
    cplx expectation(const Ket& a, const Ket& b) const;
    /// <k|this|k>, real part.
    double expectation(const Ket& k) const;

private:
    Eigen::MatrixXcd m_;
};

Ket tensor(const Ket& a, const Ket& b);
Operator tensor(const Operator& a, const Operator& b);

enum class Subsystem { a, b };

/// Partial trace of an operator on H_A (x) H_B, keeping the named factor.
/// Throws std::invalid_argument when dim(rho) != dim_a * dim_b.
Operator partial_trace(const Operator& rho, Subsystem keep, std::size_t dim_a, std::size_t dim_b);

/// Eigenvalues of the Hermitian part, ascending.
std::vector<double> hermitian_eigenvalues(const Operator& op);

double hermiticity_defect(const Operator& op);
double max_abs_diff(const Operator& a, const Operator& b);

/// Hermitian, positive semidefinite, and unit trace, all within tol.
bool check_density(const Operator& op, double tol = kHermitianTol);

}  // namespace qel
