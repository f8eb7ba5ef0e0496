// Copyright 2026 The qmacro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "qmacro/entropy.hpp"
#include "qmacro/error.hpp"
#include "qmacro/random.hpp"
#include "support.hpp"

namespace qmacro {
namespace {

using testing::diag;

// Reference values evaluated at 30 digits.
constexpr double kH34 = 0.811278124459132863909695792039;  // h(3/4)

TEST(RelativeEntropy, SelfIsZero) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_state(3, rng);
    EXPECT_NEAR(relative_entropy(rho, rho).value, 0.0, 1e-12);
  }
}

TEST(RelativeEntropy, ScalarExamples) {
  const EntropyValue d = relative_entropy(diag({1, 0}), diag({0.5, 0.5}));
  ASSERT_TRUE(d.finite);
  EXPECT_NEAR(d.value, 1.0, 1e-12);
  EXPECT_FALSE(relative_entropy(diag({0.5, 0.5}), diag({1, 0})).finite);
}

TEST(RelativeEntropy, DimensionMismatch) {
  EXPECT_THROW(relative_entropy(diag({1, 0}), diag({1, 0, 0})), Error);
}

TEST(RelativeEntropy, JointConvexity) {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix r1 = random_state(3, rng).matrix(), r2 = random_state(3, rng).matrix();
    const Matrix s1 = random_state(3, rng).matrix(), s2 = random_state(3, rng).matrix();
    const double l = std::uniform_real_distribution<double>(0, 1)(rng);
    const double lhs = relative_entropy(l * r1 + (1 - l) * r2, l * s1 + (1 - l) * s2).value;
    const double rhs = l * relative_entropy(r1, s1).value + (1 - l) * relative_entropy(r2, s2).value;
    EXPECT_LE(lhs, rhs + 1e-8);
  }
}

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann_entropy(testing::plus_state()).value, 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(2)).value, 1.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal({0.75, 0.25})).value, kH34, 1e-12);
}

TEST(VonNeumann, Bounds) {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const double s = von_neumann_entropy(random_state(d, rng, 1 + trial % d)).value;
    EXPECT_GE(s, -1e-9);
    EXPECT_LE(s, std::log2(d) + 1e-9);
  }
}

TEST(Deficit, Examples) {
  const DensityMatrix u = DensityMatrix::maximally_mixed(2);
  const Povm z = Povm::computational_basis(2);
  EXPECT_NEAR(observational_deficit(u, u, z).value, 0.0, 1e-12);
  EXPECT_NEAR(observational_deficit(DensityMatrix::diagonal({0.3, 0.7}), u, z).value, 0.0, 1e-12);
  EXPECT_NEAR(observational_deficit(testing::plus_state(), u, z).value, 1.0, 1e-12);
}

TEST(Deficit, SingularPriorRejected) {
  try {
    observational_deficit(DensityMatrix::maximally_mixed(2), DensityMatrix::diagonal({1, 0}),
                          Povm::computational_basis(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PriorNotInvertible);
  }
}

TEST(Deficit, DataProcessingInequality) {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const DensityMatrix rho = random_state(d, rng, 1 + trial % d);
    const DensityMatrix gamma = random_state(d, rng);
    const Povm p = random_povm(d, 2 + trial % 4, rng);
    EXPECT_GE(observational_deficit(rho, gamma, p).value, -1e-9);
  }
}

TEST(ObservationalEntropy, Examples) {
  const DensityMatrix rho = DensityMatrix::diagonal({0.75, 0.25});
  EXPECT_NEAR(observational_entropy(rho, Povm::computational_basis(2)).value, kH34, 1e-12);
  EXPECT_NEAR(observational_entropy(rho, Povm({identity(2)})).value, 1.0, 1e-12);
  EXPECT_NEAR(observational_entropy(DensityMatrix::diagonal({1, 0}), testing::x_basis_povm()).value, 1.0, 1e-12);
}

TEST(ObservationalEntropy, ExceedsVonNeumannAndMatchesDeficitForm) {
  Rng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const DensityMatrix rho = random_state(d, rng, 1 + trial % d);
    const Povm p = random_povm(d, 2 + trial % 3, rng);
    const double sp = observational_entropy(rho, p).value;
    const double s = von_neumann_entropy(rho).value;
    EXPECT_GE(sp - s, -1e-9);
    const double deficit = observational_deficit(rho, DensityMatrix::maximally_mixed(d), p).value;
    EXPECT_NEAR(sp, s + deficit, 1e-9);
  }
}

TEST(ObservationalEntropy, MacroStateChain) {
  Rng rng(46);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const Matrix u = random_unitary(d, rng);
    const int cut = 1 + trial % (d - 1);
    const Matrix pi0 = u.leftCols(cut) * u.leftCols(cut).adjoint();
    const Povm pvm({pi0, identity(d) - pi0});
    const DensityMatrix rho = random_state(d, rng);
    Matrix macro = Matrix::Zero(d, d);
    for (const Matrix& e : pvm.elements()) macro += (e * rho.matrix()).trace().real() * e / e.trace().real();
    const DensityMatrix rho_macro(macro);
    const double s_macro = von_neumann_entropy(rho_macro).value;
    EXPECT_NEAR(s_macro, observational_entropy(rho, pvm).value, 1e-9);
    EXPECT_NEAR(s_macro, observational_entropy(rho_macro, pvm).value, 1e-9);
    for (const Matrix& e : pvm.elements())
      EXPECT_NEAR((e * rho.matrix()).trace().real(), (e * macro).trace().real(), 1e-12);
  }
}

TEST(MutualInformation, Examples) {
  Rng rng(47);
  const DensityMatrix product(tensor(random_state(2, rng).matrix(), random_state(3, rng).matrix()));
  EXPECT_NEAR(mutual_information(product, 2, 3).value, 0.0, 1e-10);
  EXPECT_NEAR(mutual_information(testing::bell_state(), 2, 2).value, 2.0, 1e-10);
  EXPECT_NEAR(mutual_information(DensityMatrix::diagonal({0.5, 0, 0, 0.5}), 2, 2).value, 1.0, 1e-10);
}

TEST(MutualInformation, EntropyIdentity) {
  Rng rng(48);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix rho = random_state(6, rng, 1 + trial % 6);
    const double mi = mutual_information(rho, 2, 3).value;
    const DensityMatrix ra(partial_trace(rho.matrix(), 2, 3, Subsystem::A));
    const DensityMatrix rb(partial_trace(rho.matrix(), 2, 3, Subsystem::B));
    EXPECT_GE(mi, -1e-9);
    EXPECT_NEAR(mi, von_neumann_entropy(ra).value + von_neumann_entropy(rb).value - von_neumann_entropy(rho).value,
                1e-8);
  }
}

TEST(Classical, ShannonAndDivergence) {
  RealVector p(2), q(2);
  p << 0.75, 0.25;
  q << 0.5, 0.5;
  EXPECT_NEAR(shannon_entropy(p), kH34, 1e-14);
  EXPECT_NEAR(classical_relative_entropy(p, q).value, 1.0 - kH34, 1e-14);
  RealVector z(2);
  z << 1.0, 0.0;
  EXPECT_FALSE(classical_relative_entropy(p, z).finite);
}

}  // namespace
}  // namespace qmacro
