#include "qdb/examples.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qdb/error.hpp"

namespace qdb {

namespace {

double checked_schedule(const std::function<double(double)>& f, double tau, const char* name) {
    if (!f) {
        throw Error(ErrorKind::InvalidParameter, std::string(name) + " schedule is empty");
    }
    const double v = f(tau);
    if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorKind::ScheduleOutOfRange,
                    std::string(name) + "(" + std::to_string(tau) + ") = " + std::to_string(v));
    }
    return v;
}

std::array<ComplexMatrix, 4> bloch_paulis() {
    return {identity(2), pauli::x(), pauli::y(), pauli::z()};
}

} // namespace

Hamiltonian qubit_hamiltonian(double omega) { return Hamiltonian(0.5 * omega * pauli::z()); }

double excited_population(double omega, double beta) {
    if (std::isinf(beta)) {
        return 0.0;
    }
    return 0.5 * (1.0 - std::tanh(0.5 * beta * omega));
}

ExampleAParams ExampleAParams::defaults(double omega, double beta_f) {
    ExampleAParams p;
    p.omega = omega;
    p.beta_f = beta_f;
    const double q_inf = p.q_inf();
    p.q_schedule = [q_inf](double tau) { return q_inf * -std::expm1(-tau); };
    p.xi_schedule = [](double tau) { return -std::expm1(-tau); };
    return p;
}

void ExampleAParams::validate() const {
    if (!(omega > 0.0) || !(beta_f >= 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "example A needs ω > 0 and β_f >= 0");
    }
    const double xi0 = checked_schedule(xi_schedule, 0.0, "ξ");
    if (xi0 != 0.0) {
        throw Error(ErrorKind::ScheduleOutOfRange, "ξ_0 must vanish, got " + std::to_string(xi0));
    }
    const double xi_end = checked_schedule(xi_schedule, horizon, "ξ");
    if (std::abs(xi_end - 1.0) > 1e-10) {
        throw Error(ErrorKind::ScheduleOutOfRange,
                    "ξ at the horizon is " + std::to_string(xi_end) + ", not 1");
    }
    const double q_end = checked_schedule(q_schedule, horizon, "q");
    if (std::abs(q_end - q_inf()) > 1e-10) {
        throw Error(ErrorKind::ScheduleOutOfRange, "q at the horizon misses q∞");
    }
}

KrausChannel example_a_channel(const ExampleAParams& p, double tau) {
    if (!(tau >= 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "τ must be >= 0");
    }
    const double q = checked_schedule(p.q_schedule, tau, "q");
    const double xi = checked_schedule(p.xi_schedule, tau, "ξ");
    const double keep = std::sqrt(1.0 - xi);
    std::vector<ComplexMatrix> ops(4, ComplexMatrix::Zero(2, 2));
    ops[0](0, 0) = std::sqrt(1.0 - q);
    ops[0](1, 1) = std::sqrt(1.0 - q) * keep;
    ops[1](0, 1) = std::sqrt((1.0 - q) * xi);
    ops[2](0, 0) = std::sqrt(q) * keep;
    ops[2](1, 1) = std::sqrt(q);
    ops[3](1, 0) = std::sqrt(q * xi);
    return KrausChannel(std::move(ops));
}

MapFamily example_a_family(const ExampleAParams& p) {
    return [p](double tau) -> DynamicalMap { return example_a_channel(p, tau); };
}

double example_a_correction(const ExampleAParams& p, double tau) {
    const double q_inf = p.q_inf();
    const double f = q_inf - checked_schedule(p.q_schedule, tau, "q");
    return (1.0 - f / q_inf) / (1.0 + f / (1.0 - q_inf));
}

double example_a_ratio_oracle(const ExampleAParams& p, double tau, double beta_i, double energy) {
    return example_a_correction(p, tau) * std::exp((beta_i - p.beta_f) * energy);
}

double ExampleBParams::nbar() const {
    if (std::isinf(beta_f)) {
        return 0.0;
    }
    return 1.0 / std::expm1(beta_f * omega);
}

double ExampleBParams::gamma_bar() const { return gamma * (2.0 * nbar() + 1.0); }

void ExampleBParams::validate() const {
    if (!(omega > 0.0) || !(gamma > 0.0) || !(beta_f > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "example B needs ω, γ, β_f > 0");
    }
}

LindbladGenerator example_b_generator(const ExampleBParams& p) {
    p.validate();
    const double n = p.nbar();
    return LindbladGenerator::from_jumps(
        0.5 * p.omega * pauli::z(),
        {std::sqrt(p.gamma * n) * pauli::plus(), std::sqrt(p.gamma * (n + 1.0)) * pauli::minus()});
}

BlochVector example_b_closed_form(const ExampleBParams& p, const BlochVector& r0, double tau) {
    const double g = p.gamma_bar();
    const double decay = std::exp(-g * tau);
    const double t = std::isinf(p.beta_f) ? 1.0 : std::tanh(0.5 * p.beta_f * p.omega);
    const Complex coh = Complex(r0.x, -r0.y) * std::exp(-Complex(0.5 * g, p.omega) * tau);
    return {coh.real(), -coh.imag(), r0.z * decay - t * (1.0 - decay)};
}

LindbladGenerator example_qdb_family(double mu, double eta, double omega, double beta_f) {
    if (!(mu > 0.0) || !(eta >= 0.0) || !(omega > 0.0) || !(beta_f >= 0.0) ||
        std::isinf(beta_f)) {
        throw Error(ErrorKind::InvalidParameter, "QDB family needs μ > 0, η >= 0, ω > 0, finite β");
    }
    return LindbladGenerator::from_jumps(
        0.5 * omega * pauli::z(), {std::sqrt(mu * std::exp(beta_f * omega)) * pauli::minus(),
                                   std::sqrt(mu) * pauli::plus(), std::sqrt(eta) * pauli::z()});
}

ComplexMatrix bloch_change() {
    const auto s = bloch_paulis();
    ComplexMatrix b(4, 4);
    for (int i = 0; i < 4; ++i) {
        b.row(i) = vec(s[i].transpose()).transpose();
    }
    return b;
}

ComplexMatrix bloch_change_inverse() {
    const auto s = bloch_paulis();
    ComplexMatrix b(4, 4);
    for (int i = 0; i < 4; ++i) {
        b.col(i) = 0.5 * vec(s[i]);
    }
    return b;
}

SuperOperator bloch_to_superop(const RealMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw Error(ErrorKind::DimensionMismatch, "Bloch generator must be 4x4");
    }
    return {bloch_change_inverse() * m.cast<Complex>() * bloch_change(), Picture::Schrodinger};
}

RealMatrix superop_to_bloch(const SuperOperator& s) {
    if (s.dim() != 2) {
        throw Error(ErrorKind::DimensionMismatch, "Bloch form needs a qubit superoperator");
    }
    return (bloch_change() * s.schrodinger().matrix() * bloch_change_inverse()).real();
}

RealMatrix qdb_family_bloch(double mu, double eta, double omega, double beta_f) {
    const double e = std::exp(beta_f * omega);
    const double big = mu * (1.0 + e);
    RealMatrix l = RealMatrix::Zero(4, 4);
    l(1, 1) = l(2, 2) = eta + 0.25 * big;
    l(1, 2) = 0.5 * omega;
    l(2, 1) = -0.5 * omega;
    l(3, 0) = 0.5 * mu * (e - 1.0);
    l(3, 3) = 0.5 * big;
    return l;
}

Complex ExampleCParams::k_plus() const {
    const Complex root = std::sqrt(Complex(omega * omega - (alpha - nu) * (alpha - nu), 0.0));
    return -(alpha + nu) + kI * root;
}

Complex ExampleCParams::k_minus() const {
    const Complex root = std::sqrt(Complex(omega * omega - (alpha - nu) * (alpha - nu), 0.0));
    return -(alpha + nu) - kI * root;
}

double ExampleCParams::beta_f() const {
    validate();
    return 2.0 * std::atanh(chi / zeta) / omega;
}

void ExampleCParams::validate() const {
    if (!(zeta > 0.0) || !(std::abs(chi) <= zeta)) {
        throw Error(ErrorKind::InvalidParameter, "example C needs ζ > 0 and |χ/ζ| <= 1");
    }
    if (!std::isfinite(omega) || !std::isfinite(nu) || !std::isfinite(alpha)) {
        throw Error(ErrorKind::InvalidParameter, "example C parameters must be finite");
    }
}

ExampleCParams example_c_qdb_point(double mu, double eta, double omega, double beta_f) {
    const RealMatrix l = qdb_family_bloch(mu, eta, omega, beta_f);
    return {omega, l(1, 1), l(2, 2), l(3, 0), l(3, 3)};
}

ExampleCParams example_c_default() {
    ExampleCParams p = example_c_qdb_point(0.5, 0.1, 1.0, 1.0);
    p.nu *= 1.1;
    return p;
}

ExampleCParams example_c_overdamped() {
    ExampleCParams p = example_c_qdb_point(1.0, 0.1, 0.5, 1.0);
    p.nu += 0.8;
    return p;
}

RealMatrix example_c_bloch_matrix(const ExampleCParams& p) {
    RealMatrix l = RealMatrix::Zero(4, 4);
    l(1, 1) = p.nu;
    l(1, 2) = 0.5 * p.omega;
    l(2, 1) = -0.5 * p.omega;
    l(2, 2) = p.alpha;
    l(3, 0) = p.chi;
    l(3, 3) = p.zeta;
    return l;
}

SuperOperator example_c_generator(const ExampleCParams& p) {
    p.validate();
    SuperOperator gen = bloch_to_superop(-2.0 * example_c_bloch_matrix(p));
    for (double tau : {0.1, 0.5, 1.0, 5.0}) {
        const CptpReport r = is_cptp(evolve(gen, tau));
        if (!r.passes()) {
            throw Error(ErrorKind::NotCPTP, "Bloch generator fails CPTP at τ = " +
                                                std::to_string(tau) + " (cp residual " +
                                                std::to_string(r.cp_residual) + ")");
        }
    }
    return gen;
}

BlochVector example_c_analytic(const ExampleCParams& p, const BlochVector& r0, double tau) {
    const Complex kp = p.k_plus();
    const Complex km = p.k_minus();
    const double rz = std::exp(-2.0 * p.zeta * tau) * r0.z +
                      std::expm1(-2.0 * p.zeta * tau) * p.chi / p.zeta;
    const double scale = std::max(1.0, std::abs(kp));
    if (std::abs(kp - km) < 1e-8 * scale) {
        const double k = kp.real();
        const double ax = (-2.0 * p.nu - k) * r0.x - p.omega * r0.y;
        const double ay = p.omega * r0.x + (-2.0 * p.alpha - k) * r0.y;
        const double e = std::exp(k * tau);
        return {e * (r0.x + tau * ax), e * (r0.y + tau * ay), rz};
    }
    const Complex den = km - kp;
    const Complex ux_p = ((km + 2.0 * p.nu) * r0.x + p.omega * r0.y) / den;
    const Complex ux_m = -((kp + 2.0 * p.nu) * r0.x + p.omega * r0.y) / den;
    const Complex uy_p = ((km + 2.0 * p.alpha) * r0.y - p.omega * r0.x) / den;
    const Complex uy_m = -((kp + 2.0 * p.alpha) * r0.y - p.omega * r0.x) / den;
    const Complex ep = std::exp(kp * tau);
    const Complex em = std::exp(km * tau);
    return {(ux_p * ep + ux_m * em).real(), (uy_p * ep + uy_m * em).real(), rz};
}

} // namespace qdb
