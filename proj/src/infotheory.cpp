#include "qel/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qel {

namespace {

constexpr double kPhiClampTol = 1e-12;

double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

double det2(const Operator& op) {
    return (op(0, 0) * op(1, 1) - op(0, 1) * op(1, 0)).real();
}

}  // namespace

double phi(double x) {
    if (!(std::abs(x) <= 1.0 + kPhiClampTol)) throw std::invalid_argument("phi: |x| must not exceed 1");
    x = std::clamp(x, -1.0, 1.0);
    return xlog2x(1.0 + x) + xlog2x(1.0 - x);
}

double fuchs_information(double d) {
    if (!(d >= 0.0 && d <= 0.5)) throw std::invalid_argument("fuchs_information: D must lie in [0, 1/2]");
    return 0.5 * phi(2.0 * std::sqrt(d * (1.0 - d)));
}

TwoStateEnsemble::TwoStateEnsemble(Operator rho0, Operator rho1) : rho0_(std::move(rho0)), rho1_(std::move(rho1)) {
    if (rho0_.dim() != rho1_.dim()) throw std::invalid_argument("TwoStateEnsemble: dimension mismatch");
    if (!check_density(rho0_) || !check_density(rho1_))
        throw std::invalid_argument("TwoStateEnsemble: members must be density operators");
}

double levitin_information(const TwoStateEnsemble& ens) {
    if (ens.dim() != 2) throw std::invalid_argument("levitin_information: qubit ensembles only");
    const double d0 = det2(ens.rho0());
    const double d1 = det2(ens.rho1());
    if (std::abs(d0 - d1) > kDeterminantTol)
        throw std::invalid_argument("levitin_information: determinants differ");
    const double r = (ens.rho0() * ens.rho1()).trace().real();
    const double d = 0.5 * (d0 + d1);
    const double arg = std::max(0.0, 1.0 - r - 2.0 * d);
    return 0.5 * phi(std::sqrt(arg));
}

double blockwise_information(std::span<const InformationBlock> blocks, bool leftover_distinguishable) {
    double total_weight = 0.0;
    double info = 0.0;
    for (const auto& b : blocks) {
        if (b.weight < 0.0) throw std::invalid_argument("blockwise_information: negative weight");
        total_weight += b.weight;
        if (b.weight > 0.0) info += b.weight * levitin_information(b.ensemble);
    }
    if (total_weight > 1.0 + 1e-12) throw std::invalid_argument("blockwise_information: weights exceed 1");
    if (leftover_distinguishable) info += std::max(0.0, 1.0 - total_weight);
    return info;
}

BlockRestriction restrict_to_block(const Operator& rho0, const Operator& rho1, const Ket& v0, const Ket& v1) {
    auto restrict = [&](const Operator& rho, double& weight) {
        Eigen::MatrixXcd m(2, 2);
        m << rho.expectation(v0, v0), rho.expectation(v0, v1), rho.expectation(v1, v0), rho.expectation(v1, v1);
        weight = (m(0, 0) + m(1, 1)).real();
        if (!(weight > 0.0)) throw std::invalid_argument("restrict_to_block: state has no weight in block");
        return Operator(m / weight);
    };
    BlockRestriction out{0.0, 0.0, Operator::zero(2), Operator::zero(2)};
    out.block0 = restrict(rho0, out.weight0);
    out.block1 = restrict(rho1, out.weight1);
    return out;
}

}  // namespace qel
