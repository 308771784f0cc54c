#include <gtest/gtest.h>

#include "hermpir/wire.hpp"

using namespace hermpir;
using gf::Element;

namespace {

const pir::SchemeInstance& instance() {
  static const auto inst = pir::SchemeInstance::build(pir::validate_params(5, 1, 1, std::nullopt, 2, 3));
  return inst;
}

}  // namespace

TEST(Wire, ManifestRoundTrip) {
  const auto m = wire::make_manifest(instance());
  const auto text = wire::manifest_to_json(m);
  const auto back = wire::manifest_from_json(text);
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.params.N, 85);
  EXPECT_EQ(back.server_points.size(), 85u);
  EXPECT_EQ(back.modulus, instance().field().modulus());
  // Rebuilding from the stored parameters reproduces the stored points.
  const auto again = pir::SchemeInstance::build(back.params);
  EXPECT_EQ(wire::make_manifest(again), m);
  EXPECT_THROW(wire::manifest_from_json("{\"params\": {}}"), wire::WireError);
  EXPECT_THROW(wire::manifest_from_json("not json"), wire::WireError);
}

TEST(Wire, ElementArrays) {
  const auto& f = instance().field();
  std::vector<Element> v{f.zero(), f.one(), f.primitive_element()};
  const auto text = wire::elements_to_json(f, v);
  EXPECT_EQ(text.substr(0, 14), "[[0,0],[1,0],[");
  EXPECT_EQ(wire::elements_from_json(f, text), v);
  EXPECT_THROW(wire::elements_from_json(f, "[[5,0]]"), wire::WireError);
  EXPECT_THROW(wire::elements_from_json(f, "[[1]]"), wire::WireError);
}

TEST(Wire, MessagesAndFrames) {
  const auto& f = instance().field();
  gf::Rng rng(2);
  wire::Message m{wire::MessageKind::query, 17, {}};
  for (int i = 0; i < 30; ++i) m.values.push_back(f.sample(rng));
  const auto payload = wire::encode_message(f, m);
  EXPECT_EQ(payload.size(), 10u + 30u * 2u * 4u);
  const auto back = wire::decode_message(f, payload);
  EXPECT_EQ(back.kind, m.kind);
  EXPECT_EQ(back.server, 17u);
  EXPECT_EQ(back.values, m.values);

  const auto framed = wire::frame(payload);
  ASSERT_EQ(framed.size(), payload.size() + 4);
  EXPECT_EQ(framed[0], 0);
  EXPECT_EQ((framed[2] << 8) | framed[3], static_cast<int>(payload.size()));

  // Split across feeds, two frames back to back.
  std::vector<std::uint8_t> stream = framed;
  stream.insert(stream.end(), framed.begin(), framed.end());
  wire::FrameReader reader;
  int got = 0;
  for (std::size_t i = 0; i < stream.size(); i += 7) {
    reader.feed(stream.data() + i, std::min<std::size_t>(7, stream.size() - i));
    while (auto p = reader.next()) {
      EXPECT_EQ(*p, payload);
      ++got;
    }
  }
  EXPECT_EQ(got, 2);

  auto bad = payload;
  bad[0] = 9;
  EXPECT_THROW(wire::decode_message(f, bad), wire::WireError);
  bad = payload;
  bad.pop_back();
  EXPECT_THROW(wire::decode_message(f, bad), wire::WireError);
}

TEST(Wire, SocketTransportMatchesInProcess) {
  const auto& inst = instance();
  gf::Rng rng(5);
  std::vector<std::vector<Element>> files(2, std::vector<Element>(15));
  for (auto& file : files) {
    for (auto& s : file) s = inst.field().sample(rng);
  }
  const auto shares = pir::encode_storage(inst, files, rng);
  const auto queries = pir::make_queries(inst, 1, rng);
  const auto local = pir::collect_answers(inst, shares, queries);
  const auto remote = wire::socket_collect_answers(inst, shares, queries, 3);
  EXPECT_EQ(remote, local);
  EXPECT_EQ(pir::reconstruct(inst, remote), files[1]);
}
