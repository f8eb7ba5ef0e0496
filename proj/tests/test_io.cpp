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

#include "qmacro/error.hpp"
#include "qmacro/io.hpp"
#include "qmacro/random.hpp"
#include "support.hpp"

namespace qmacro {
namespace {

std::string schema_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Schema) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error raised";
  return {};
}

// Serialize to text and parse back, as the CLI does.
io::Json through_text(const io::Json& j) { return io::parse(j.dump()); }

TEST(Io, MatrixRoundTrip) {
  Rng rng(111);
  const Matrix m = random_ginibre(3, 3, rng);
  EXPECT_LE((io::matrix_from_json(through_text(io::to_json(m))) - m).norm(), 1e-12);
}

TEST(Io, StatePovmChannelRoundTrip) {
  Rng rng(112);
  const DensityMatrix rho = random_state(3, rng);
  EXPECT_LE((io::state_from_json(through_text(io::to_json(rho))).matrix() - rho.matrix()).norm(), 1e-12);
  const Povm p = random_povm(3, 4, rng);
  const Povm q = io::povm_from_json(through_text(io::to_json(p)));
  ASSERT_EQ(q.size(), p.size());
  EXPECT_EQ(q.labels(), p.labels());
  for (std::size_t x = 0; x < p.size(); ++x) EXPECT_LE((q.element(x) - p.element(x)).norm(), 1e-12);
  const Channel e = random_channel(3, 2, rng);
  const Channel f = io::channel_from_json(through_text(io::to_json(e)));
  EXPECT_LE(superop_distance(e.map(), f.map()), 1e-12);
}

TEST(Io, FrameRoundTrip) {
  Rng rng(113);
  for (int trial = 0; trial < 10; ++trial) {
    const FrameSample s = random_frame(3, 5, rng);
    const InferentialFrame f = compute_mppp(s.povm, s.prior);
    const io::Json j = through_text(io::frame_to_json(f));
    const InferentialFrame g = io::frame_from_json(j);
    EXPECT_EQ(g.partition(), f.partition());
    EXPECT_LE((g.rdm().choi() - f.rdm().choi()).norm(), 1e-12);
    EXPECT_LE((io::matrix_from_json(j["rdm_choi"]) - f.rdm().choi()).norm(), 1e-12);
    EXPECT_EQ(j["partition"].size(), f.partition().size());
  }
}

TEST(Io, KrausChannelFixture) {
  const Channel h = io::channel_from_json(io::read_file(QMACRO_TEST_DATA "/channel_hadamard.json"));
  EXPECT_LE(superop_distance(h.map(), Channel::unitary(testing::hadamard()).map()), 1e-12);
}

TEST(Io, ChoiDimensionsInferred) {
  const Channel id = Channel::identity(2);
  io::Json j{{"choi", io::to_json(id.choi())}};
  EXPECT_LE(superop_distance(io::channel_from_json(j).map(), id.map()), 1e-14);
}

TEST(Io, MalformedJsonReportsLineAndColumn) {
  const std::string msg = schema_message([] { io::parse("{\n  \"a\": [1, 2,\n", "x.json"); });
  EXPECT_NE(msg.find("x.json:"), std::string::npos);
}

TEST(Io, BadFieldsNamePath) {
  EXPECT_NE(schema_message([] { io::povm_from_json(io::read_file(QMACRO_TEST_DATA "/povm_bad_field.json")); })
                .find("$.elements[0][0][0]"),
            std::string::npos);
  EXPECT_NE(schema_message([] { io::state_from_json(io::Json{{"m", 1}}); }).find("matrix"), std::string::npos);
  EXPECT_NE(schema_message([] { io::matrix_from_json(io::parse("[[[1,0],[0,0]],[[0,0]]]")); }).find("[1]"),
            std::string::npos);
  EXPECT_NE(schema_message([] { io::channel_from_json(io::Json{{"dim_in", 2}}); }).find("kraus"), std::string::npos);
}

TEST(Io, ValidationFailureBecomesSchema) {
  // Elements do not sum to the identity.
  const io::Json j = io::parse(R"({"elements": [[[[1,0],[0,0]],[[0,0],[0,0.5]]]]})");
  EXPECT_NE(schema_message([&] { io::povm_from_json(j); }).find("$.elements"), std::string::npos);
}

TEST(Io, ReportsSerialize) {
  const io::Json inf = io::to_json(EntropyValue::infinite());
  EXPECT_EQ(inf, "inf");
  const InferentialFrame f = compute_mppp(Povm::computational_basis(2), DensityMatrix::maximally_mixed(2));
  const io::Json r = io::to_json(macro_test(testing::plus_state(), f));
  EXPECT_FALSE(r["verdict"].get<bool>());
  EXPECT_NEAR(r["deficit"].get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(r["conditions"].contains("cg_fixed"));
}

}  // namespace
}  // namespace qmacro
