#pragma once
//
// Serialized forms of scheme data. Field elements travel as coefficient
// tuples over F_p, constant term first. Binary messages are framed with a
// 4-byte big-endian length.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hermpir/xstpir.hpp"

namespace hermpir::wire {

using gf::Element;

class WireError : public Error {
 public:
  using Error::Error;
};

struct Manifest {
  pir::SchemeParams params;
  std::uint32_t p = 0;
  std::uint32_t degree = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::vector<std::uint32_t>> alphas;
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> server_points;
  std::vector<std::size_t> server_pool_indices;
  bool noise_fallback = false;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

Manifest make_manifest(const pir::SchemeInstance& inst);
std::string manifest_to_json(const Manifest& m);
// Throws WireError on malformed documents.
Manifest manifest_from_json(const std::string& text);

// JSON array of coefficient tuples.
std::string elements_to_json(const gf::Field& f, const std::vector<Element>& v);
std::vector<Element> elements_from_json(const gf::Field& f, const std::string& text);

enum class MessageKind : std::uint8_t { store = 1, query = 2, answer = 3 };

struct Message {
  MessageKind kind = MessageKind::store;
  std::uint32_t server = 0;
  std::vector<Element> values;
};

// kind, server (u32 BE), count (u32 BE), degree (u8), then count * degree
// coefficients as u32 BE.
std::vector<std::uint8_t> encode_message(const gf::Field& f, const Message& msg);
Message decode_message(const gf::Field& f, const std::vector<std::uint8_t>& payload);

std::vector<std::uint8_t> frame(const std::vector<std::uint8_t>& payload);

// Accumulates a byte stream and yields complete frame payloads.
class FrameReader {
 public:
  void feed(const std::uint8_t* data, std::size_t n);
  std::optional<std::vector<std::uint8_t>> next();

 private:
  std::vector<std::uint8_t> buf_;
  std::size_t pos_ = 0;
};

// Runs every server in forked loopback processes, `workers` of them, each
// owning the servers n with n % workers == w. Returns the N answers.
std::vector<Element> socket_collect_answers(const pir::SchemeInstance& inst, const pir::StorageShares& shares,
                                            const pir::QueryBundle& queries, int workers = 4);

}  // namespace hermpir::wire
