#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"

using namespace qdb;
using qdbtest::Rng;

namespace {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
    try {
        f();
        ADD_FAILURE() << "no error thrown";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

// Direct operator-level evaluation of the GKLS form and of its dual.
ComplexMatrix lindblad_direct(const LindbladGenerator& g, const ComplexMatrix& rho) {
    const ComplexMatrix& h = g.hamiltonian().matrix();
    ComplexMatrix out = -kI * (h * rho - rho * h);
    const auto& f = g.basis();
    const ComplexMatrix& c = g.kossakowski();
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (std::size_t l = 0; l < f.size(); ++l) {
            const ComplexMatrix fl = f[l].adjoint();
            const ComplexMatrix ff = fl * f[k];
            out += c(k, l) * (f[k] * rho * fl - 0.5 * (ff * rho + rho * ff));
        }
    }
    return out;
}

ComplexMatrix dual_direct(const LindbladGenerator& g, const ComplexMatrix& a) {
    const ComplexMatrix& h = g.hamiltonian().matrix();
    ComplexMatrix out = kI * (h * a - a * h);
    const auto& f = g.basis();
    const ComplexMatrix& c = g.kossakowski();
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (std::size_t l = 0; l < f.size(); ++l) {
            const ComplexMatrix fl = f[l].adjoint();
            const ComplexMatrix ff = fl * f[k];
            out += c(k, l) * (fl * a * f[k] - 0.5 * (ff * a + a * ff));
        }
    }
    return out;
}

SuperOperator transpose_map(Eigen::Index d) {
    return {transpose_permutation(d), Picture::Schrodinger};
}

LindbladGenerator example_b() { return example_b_generator({1.0, 1.0, 1.0}); }

} // namespace

TEST(GellMann, OrthonormalTracelessAndOrdered) {
    for (Eigen::Index d = 2; d <= 4; ++d) {
        const auto f = gell_mann_basis(d);
        ASSERT_EQ(static_cast<Eigen::Index>(f.size()), d * d - 1);
        for (std::size_t a = 0; a < f.size(); ++a) {
            EXPECT_LT(std::abs(f[a].trace()), 1e-15);
            for (std::size_t b = 0; b < f.size(); ++b) {
                EXPECT_NEAR(std::abs((f[a].adjoint() * f[b]).trace()), a == b ? 1.0 : 0.0, 1e-12);
            }
        }
    }
    // symmetric first, antisymmetric next, diagonal last
    const auto q = gell_mann_basis(2);
    EXPECT_LT(max_abs(q[0] - pauli::x() / std::sqrt(2.0)), 1e-15);
    EXPECT_LT(max_abs(q[2].diagonal().asDiagonal().toDenseMatrix() - q[2]), 1e-15);
}

TEST(LindbladSuperop, ZeroDissipatorIsCommutator) {
    Rng rng(20);
    const Hamiltonian h = rng.hamiltonian(3);
    const LindbladGenerator g(h, ComplexMatrix::Zero(8, 8));
    const SuperOperator l = lindblad_superop(g);
    const ComplexMatrix x = rng.matrix(3, 3);
    EXPECT_LT(max_abs(l(x) + kI * (h.matrix() * x - x * h.matrix())), 1e-13);
    EXPECT_LT(max_abs(l(gibbs(h, 0.7).matrix())), 1e-13);
}

TEST(LindbladSuperop, MatchesOperatorFormAndKillsTrace) {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index d = 2 + trial % 3;
        const LindbladGenerator g = rng.generator(d);
        const SuperOperator l = lindblad_superop(g);
        const ComplexMatrix x = rng.matrix(d, d);
        EXPECT_LT(max_abs(l(x) - lindblad_direct(g, x)), 1e-12);
        EXPECT_LT(std::abs(l(x).trace()), 1e-11);
    }
}

TEST(LindbladSuperop, OpticalGeneratorStationaryAtGibbs) {
    const LindbladGenerator g = example_b();
    EXPECT_LT(max_abs(lindblad_superop(g)(gibbs(g.hamiltonian(), 1.0).matrix())), 1e-11);
}

TEST(LindbladGenerator, RejectsIndefiniteKossakowski) {
    ComplexMatrix c = ComplexMatrix::Zero(3, 3);
    c(0, 0) = -0.1;
    expect_error(ErrorKind::KossakowskiNotPSD, [&] { LindbladGenerator(qubit_hamiltonian(1.0), c); });
}

TEST(LindbladGenerator, RejectsBadBasis) {
    std::vector<ComplexMatrix> basis = gell_mann_basis(2);
    basis[0] = identity(2) / std::sqrt(2.0);
    expect_error(ErrorKind::InvalidBasis,
                 [&] { LindbladGenerator(qubit_hamiltonian(1.0), ComplexMatrix::Zero(3, 3), basis); });
}

TEST(LindbladGenerator, RecoveredFromSuperoperator) {
    Rng rng(22);
    const LindbladGenerator g = rng.generator(3);
    const LindbladGenerator back = lindblad_from_superop(lindblad_superop(g));
    EXPECT_LT(max_abs(lindblad_superop(back).matrix() - lindblad_superop(g).matrix()), 1e-11);
    EXPECT_LT(max_abs(back.kossakowski() - g.kossakowski()), 1e-11);
}

TEST(DualSuperop, UnitalAndMatchesOperatorForm) {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index d = 2 + trial % 3;
        const LindbladGenerator g = rng.generator(d);
        const SuperOperator ld = dual_superop(g);
        EXPECT_EQ(ld.picture(), Picture::Heisenberg);
        EXPECT_LT(max_abs(ld(identity(d))), 1e-11);
        const ComplexMatrix a = rng.matrix(d, d);
        EXPECT_LT(max_abs(ld(a) - dual_direct(g, a)), 1e-12);
    }
}

TEST(DualSuperop, DualityOnRandomPairs) {
    Rng rng(24);
    const LindbladGenerator g = rng.generator(3);
    const SuperOperator l = lindblad_superop(g);
    const SuperOperator ld = dual_superop(g);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix sigma = rng.state(3).matrix();
        const ComplexMatrix a = rng.hermitian(3);
        EXPECT_LT(std::abs((l(sigma) * a).trace() - (sigma * ld(a)).trace()), 1e-11);
    }
}

TEST(DualSuperop, PureHamiltonianFlipsSign) {
    Rng rng(25);
    const Hamiltonian h = rng.hamiltonian(2);
    const SuperOperator ld = dual_superop(LindbladGenerator(h, ComplexMatrix::Zero(3, 3)));
    const ComplexMatrix a = rng.matrix(2, 2);
    EXPECT_LT(max_abs(ld(a) - kI * (h.matrix() * a - a * h.matrix())), 1e-14);
}

TEST(Evolve, ZeroTimeIsIdentity) {
    const SuperOperator l = lindblad_superop(example_b());
    EXPECT_LT(max_abs(evolve(l, 0.0).matrix() - identity(4)), 1e-15);
    expect_error(ErrorKind::InvalidParameter, [&] { evolve(l, -1.0); });
}

TEST(Evolve, SemigroupLaw) {
    Rng rng(26);
    const SuperOperator l = lindblad_superop(rng.generator(3));
    const ComplexMatrix lhs = evolve(l, 1.0).matrix();
    const ComplexMatrix rhs = evolve(l, 0.3).matrix() * evolve(l, 0.7).matrix();
    EXPECT_LT(max_abs(lhs - rhs), 1e-10);
}

TEST(Evolve, OpticalPopulationsDecayAtGammaBar) {
    const ExampleBParams p{1.0, 1.0, 1.0};
    const LindbladGenerator g = example_b_generator(p);
    const SuperOperator l = lindblad_superop(g);
    const double t = std::tanh(0.5);
    const double gb = 1.0 / t; // γ coth(βω/2)
    for (double tau : {0.1, 0.5, 1.0, 3.0}) {
        const DensityMatrix out = qdb::apply(evolve(l, tau), from_bloch({0, 0, 1}));
        const double rz = std::exp(-gb * tau) - t * (1.0 - std::exp(-gb * tau));
        EXPECT_NEAR(to_bloch(out).z, rz, 1e-12);
    }
}

TEST(Evolve, HeisenbergDualityOfMaps) {
    Rng rng(27);
    const LindbladGenerator g = rng.generator(2);
    const SuperOperator gt = evolve(lindblad_superop(g), 0.8);
    const SuperOperator gd = evolve(dual_superop(g), 0.8);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix sigma = rng.state(2).matrix();
        const ComplexMatrix a = rng.matrix(2, 2);
        EXPECT_LT(std::abs((gt(sigma) * a).trace() - (sigma * gd(a)).trace()), 1e-10);
    }
}

TEST(Choi, ConventionBlockStructure) {
    Rng rng(28);
    const SuperOperator m = evolve(lindblad_superop(rng.generator(2)), 0.5);
    const ComplexMatrix choi = choi_matrix(m);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            const ComplexMatrix block = m(matrix_unit(2, i, j));
            EXPECT_LT(max_abs(choi.block(2 * i, 2 * j, 2, 2) - block), 1e-15);
        }
    }
}

TEST(ChannelFromSuperop, IdentityGivesSingleOperator) {
    const KrausChannel k = channel_from_superop(SuperOperator::identity(2));
    ASSERT_EQ(k.ops().size(), 1u);
    EXPECT_NEAR(std::abs(k.ops()[0](0, 0)), 1.0, 1e-12);
    EXPECT_LT(max_abs(k.ops()[0] * k.ops()[0].adjoint() - identity(2)), 1e-12);
}

TEST(ChannelFromSuperop, OpticalMapHasFourOperators) {
    const SuperOperator m = evolve(lindblad_superop(example_b()), 1.0);
    const KrausChannel k = channel_from_superop(m);
    EXPECT_EQ(k.ops().size(), 4u);
    EXPECT_LT(max_abs(superop_from_channel(k).matrix() - m.matrix()), 1e-9);
}

TEST(ChannelFromSuperop, TransposeIsNotCP) {
    expect_error(ErrorKind::NotCP, [] { channel_from_superop(transpose_map(2)); });
}

TEST(ChannelFromSuperop, NonTracePreservingRejected) {
    expect_error(ErrorKind::NotTP, [] {
        channel_from_superop(SuperOperator(0.5 * identity(4), Picture::Schrodinger));
    });
}

TEST(ChannelFromSuperop, RoundtripOnRandomChannels) {
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index d = 2 + trial % 2;
        const Eigen::Index r = 1 + trial % 4;
        // isometry V: d -> r·d, Kraus blocks G_j = V rows
        Eigen::HouseholderQR<ComplexMatrix> qr(rng.matrix(r * d, d));
        const ComplexMatrix v = qr.householderQ() * ComplexMatrix::Identity(r * d, d);
        std::vector<ComplexMatrix> ops;
        for (Eigen::Index j = 0; j < r; ++j) ops.push_back(v.block(j * d, 0, d, d));
        const SuperOperator s = superop_from_channel(KrausChannel(ops));
        const SuperOperator back = superop_from_channel(channel_from_superop(s));
        EXPECT_LT(max_abs(back.matrix() - s.matrix()), 1e-9);
    }
}

TEST(KrausChannel, RejectsNonTracePreserving) {
    expect_error(ErrorKind::NotTracePreserving, [] { KrausChannel({0.9 * identity(2)}); });
}

TEST(Apply, IdentityChannelKeepsState) {
    Rng rng(30);
    const DensityMatrix rho = rng.state(3);
    EXPECT_LT(max_abs(qdb::apply(KrausChannel({identity(3)}), rho).matrix() - rho.matrix()), 1e-15);
    EXPECT_LT(max_abs(qdb::apply(SuperOperator::identity(3), rho).matrix() - rho.matrix()), 1e-15);
}

TEST(Apply, ErasedAmplitudeDampingOutput) {
    ExampleAParams p = ExampleAParams::defaults();
    p.q_schedule = [](double) { return 0.3; };
    p.xi_schedule = [](double) { return 1.0; };
    const KrausChannel k = example_a_channel(p, 2.0);
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix out = qdb::apply(k, rng.state(2)).matrix();
        EXPECT_NEAR(out(0, 0).real(), 0.7, 1e-14);
        EXPECT_NEAR(out(1, 1).real(), 0.3, 1e-14);
        EXPECT_LT(std::abs(out(0, 1)), 1e-14);
    }
}

TEST(Apply, OpticalRelaxesToGibbs) {
    const LindbladGenerator g = example_b();
    const DensityMatrix out = qdb::apply(evolve(lindblad_superop(g), 40.0), from_bloch({0, 0, -1}));
    EXPECT_LT(max_abs(out.matrix() - gibbs(g.hamiltonian(), 1.0).matrix()), 1e-8);
}

TEST(Apply, DimensionMismatch) {
    expect_error(ErrorKind::DimensionMismatch,
                 [] { qdb::apply(SuperOperator::identity(2), DensityMatrix::maximally_mixed(3)); });
}

TEST(IsCptp, RandomSemigroupsPass) {
    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const SuperOperator l = lindblad_superop(rng.generator(2 + trial % 3));
        for (double tau : {0.1, 1.0, 10.0}) {
            const CptpReport r = is_cptp(evolve(l, tau));
            EXPECT_TRUE(r.passes(1e-9)) << r.cp_residual << ' ' << r.tp_residual << ' '
                                        << r.hermiticity_residual;
        }
    }
}

TEST(IsCptp, ThermalBlochFamilyPasses) {
    const SuperOperator l = example_c_generator(example_c_default());
    for (double tau : {0.01, 0.3, 2.0, 20.0}) {
        EXPECT_TRUE(is_cptp(evolve(l, tau)).passes());
    }
}

TEST(IsCptp, TransposeFailsWithUnitResidual) {
    const CptpReport r = is_cptp(transpose_map(2));
    EXPECT_NEAR(r.cp_residual, 1.0, 1e-12);
    EXPECT_LT(r.tp_residual, 1e-15);
    EXPECT_FALSE(r.passes());
}
