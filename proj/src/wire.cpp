#include "hermpir/wire.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <map>

#include "json.hpp"

namespace hermpir::wire {

namespace {

using json = nlohmann::json;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

json tuple_of(const gf::Field& f, Element e) { return f.coefficients(e); }

Element element_of(const gf::Field& f, const json& j) {
  if (!j.is_array() || j.size() != f.degree()) throw WireError("expected a coefficient tuple of length " +
                                                               std::to_string(f.degree()));
  std::vector<std::uint32_t> c;
  for (const auto& v : j) {
    const auto x = v.get<std::int64_t>();
    if (x < 0 || x >= static_cast<std::int64_t>(f.characteristic())) throw WireError("coefficient out of range");
    c.push_back(static_cast<std::uint32_t>(x));
  }
  return f.from_coefficients(c);
}

void write_all(int fd, const std::vector<std::uint8_t>& bytes) {
  std::size_t off = 0;
  while (off < bytes.size()) {
    const ssize_t n = ::write(fd, bytes.data() + off, bytes.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw WireError(std::string("write: ") + std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

// Blocks until a full frame arrives; nullopt on clean EOF.
std::optional<std::vector<std::uint8_t>> read_frame(int fd, FrameReader& reader) {
  std::uint8_t buf[4096];
  for (;;) {
    if (auto f = reader.next()) return f;
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n == 0) return std::nullopt;
    if (n < 0) {
      if (errno == EINTR) continue;
      throw WireError(std::string("read: ") + std::strerror(errno));
    }
    reader.feed(buf, static_cast<std::size_t>(n));
  }
}

[[noreturn]] void serve(int listen_fd, const gf::Field& f) {
  int status = 0;
  const int fd = ::accept(listen_fd, nullptr, nullptr);
  if (fd < 0) ::_exit(2);
  try {
    FrameReader reader;
    std::map<std::uint32_t, std::vector<Element>> stored;
    while (auto payload = read_frame(fd, reader)) {
      const Message msg = decode_message(f, *payload);
      if (msg.kind == MessageKind::store) {
        stored[msg.server] = msg.values;
      } else if (msg.kind == MessageKind::query) {
        const auto it = stored.find(msg.server);
        if (it == stored.end()) throw WireError("query before store");
        const Message reply{MessageKind::answer, msg.server, {pir::server_answer(f, it->second, msg.values)}};
        write_all(fd, frame(encode_message(f, reply)));
      } else {
        throw WireError("unexpected answer frame at server");
      }
    }
  } catch (const std::exception&) {
    status = 3;
  }
  ::close(fd);
  ::_exit(status);
}

}  // namespace

Manifest make_manifest(const pir::SchemeInstance& inst) {
  const auto& f = inst.field();
  Manifest m;
  m.params = inst.params();
  m.p = f.characteristic();
  m.degree = f.degree();
  m.modulus = f.modulus();
  for (const auto a : inst.alphas()) m.alphas.push_back(f.coefficients(a));
  for (const auto& pt : inst.server_points()) m.server_points.emplace_back(f.coefficients(pt.x), f.coefficients(pt.y));
  m.server_pool_indices = inst.server_pool_indices();
  m.noise_fallback = inst.noise_fallback_used();
  return m;
}

std::string manifest_to_json(const Manifest& m) {
  json j;
  const auto& p = m.params;
  j["params"] = {{"q", p.q}, {"X", p.X}, {"T", p.T}, {"m", p.m}, {"g", p.g},
                 {"L", p.L}, {"N", p.N}, {"M", p.M}, {"seed", p.seed}};
  j["field"] = {{"p", m.p}, {"degree", m.degree}, {"modulus", m.modulus}};
  j["alphas"] = m.alphas;
  json pts = json::array();
  for (const auto& [x, y] : m.server_points) pts.push_back({{"x", x}, {"y", y}});
  j["server_points"] = pts;
  j["server_pool_indices"] = m.server_pool_indices;
  j["noise_fallback"] = m.noise_fallback;
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Manifest m;
    const auto& p = j.at("params");
    m.params.q = p.at("q").get<int>();
    m.params.X = p.at("X").get<int>();
    m.params.T = p.at("T").get<int>();
    m.params.m = p.at("m").get<int>();
    m.params.g = p.at("g").get<int>();
    m.params.L = p.at("L").get<int>();
    m.params.N = p.at("N").get<int>();
    m.params.M = p.at("M").get<int>();
    m.params.seed = p.at("seed").get<std::uint64_t>();
    m.p = j.at("field").at("p").get<std::uint32_t>();
    m.degree = j.at("field").at("degree").get<std::uint32_t>();
    m.modulus = j.at("field").at("modulus").get<std::vector<std::uint32_t>>();
    m.alphas = j.at("alphas").get<std::vector<std::vector<std::uint32_t>>>();
    for (const auto& pt : j.at("server_points")) {
      m.server_points.emplace_back(pt.at("x").get<std::vector<std::uint32_t>>(),
                                   pt.at("y").get<std::vector<std::uint32_t>>());
    }
    m.server_pool_indices = j.at("server_pool_indices").get<std::vector<std::size_t>>();
    m.noise_fallback = j.at("noise_fallback").get<bool>();
    return m;
  } catch (const json::exception& e) {
    throw WireError(std::string("malformed manifest: ") + e.what());
  }
}

std::string elements_to_json(const gf::Field& f, const std::vector<Element>& v) {
  json j = json::array();
  for (const auto e : v) j.push_back(tuple_of(f, e));
  return j.dump();
}

std::vector<Element> elements_from_json(const gf::Field& f, const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_array()) throw WireError("expected an array of coefficient tuples");
    std::vector<Element> out;
    for (const auto& t : j) out.push_back(element_of(f, t));
    return out;
  } catch (const json::exception& e) {
    throw WireError(std::string("malformed element array: ") + e.what());
  }
}

std::vector<std::uint8_t> encode_message(const gf::Field& f, const Message& msg) {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(msg.kind));
  put_u32(out, msg.server);
  put_u32(out, static_cast<std::uint32_t>(msg.values.size()));
  out.push_back(static_cast<std::uint8_t>(f.degree()));
  for (const auto e : msg.values) {
    for (const auto c : f.coefficients(e)) put_u32(out, c);
  }
  return out;
}

Message decode_message(const gf::Field& f, const std::vector<std::uint8_t>& payload) {
  if (payload.size() < 10) throw WireError("truncated message header");
  Message m;
  const auto kind = payload[0];
  if (kind < 1 || kind > 3) throw WireError("unknown message kind " + std::to_string(kind));
  m.kind = static_cast<MessageKind>(kind);
  m.server = get_u32(&payload[1]);
  const std::uint32_t count = get_u32(&payload[5]);
  const std::uint32_t degree = payload[9];
  if (degree != f.degree()) throw WireError("message field degree does not match");
  if (payload.size() != 10 + static_cast<std::size_t>(count) * degree * 4) throw WireError("message length mismatch");
  std::vector<std::uint32_t> c(degree);
  std::size_t off = 10;
  for (std::uint32_t i = 0; i < count; ++i) {
    for (std::uint32_t k = 0; k < degree; ++k, off += 4) {
      c[k] = get_u32(&payload[off]);
      if (c[k] >= f.characteristic()) throw WireError("coefficient out of range");
    }
    m.values.push_back(f.from_coefficients(c));
  }
  return m;
}

std::vector<std::uint8_t> frame(const std::vector<std::uint8_t>& payload) {
  std::vector<std::uint8_t> out;
  out.reserve(payload.size() + 4);
  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

void FrameReader::feed(const std::uint8_t* data, std::size_t n) {
  if (pos_ > 0 && pos_ == buf_.size()) {
    buf_.clear();
    pos_ = 0;
  }
  buf_.insert(buf_.end(), data, data + n);
}

std::optional<std::vector<std::uint8_t>> FrameReader::next() {
  if (buf_.size() - pos_ < 4) return std::nullopt;
  const std::uint32_t len = get_u32(&buf_[pos_]);
  if (buf_.size() - pos_ - 4 < len) return std::nullopt;
  std::vector<std::uint8_t> out(buf_.begin() + static_cast<std::ptrdiff_t>(pos_ + 4),
                                buf_.begin() + static_cast<std::ptrdiff_t>(pos_ + 4 + len));
  pos_ += 4 + len;
  return out;
}

std::vector<Element> socket_collect_answers(const pir::SchemeInstance& inst, const pir::StorageShares& shares,
                                            const pir::QueryBundle& queries, int workers) {
  const auto& f = inst.field();
  const int N = inst.params().N;
  if (workers < 1) throw InvalidArgument("need at least one worker");
  workers = std::min(workers, N);

  std::vector<pid_t> pids;
  std::vector<int> conns;
  auto cleanup = [&] {
    for (const int fd : conns) ::close(fd);
    for (const pid_t pid : pids) ::waitpid(pid, nullptr, 0);
  };
  for (int w = 0; w < workers; ++w) {
    const int lfd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (lfd < 0) throw WireError(std::string("socket: ") + std::strerror(errno));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    socklen_t len = sizeof addr;
    if (::bind(lfd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(lfd, 1) < 0 ||
        ::getsockname(lfd, reinterpret_cast<sockaddr*>(&addr), &len) < 0) {
      ::close(lfd);
      cleanup();
      throw WireError(std::string("loopback listen: ") + std::strerror(errno));
    }
    const pid_t pid = ::fork();
    if (pid < 0) {
      ::close(lfd);
      cleanup();
      throw WireError(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) serve(lfd, f);
    ::close(lfd);
    pids.push_back(pid);
    const int cfd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (cfd < 0 || ::connect(cfd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
      if (cfd >= 0) ::close(cfd);
      cleanup();
      throw WireError(std::string("connect: ") + std::strerror(errno));
    }
    conns.push_back(cfd);
  }

  std::vector<Element> answers(static_cast<std::size_t>(N));
  try {
    std::vector<FrameReader> readers(static_cast<std::size_t>(workers));
    for (int n = 0; n < N; ++n) {
      const Message m{MessageKind::store, static_cast<std::uint32_t>(n), shares.server_slice(n)};
      write_all(conns[n % workers], frame(encode_message(f, m)));
    }
    for (int n = 0; n < N; ++n) {
      const int fd = conns[n % workers];
      const Message m{MessageKind::query, static_cast<std::uint32_t>(n), queries.server_slice(n)};
      write_all(fd, frame(encode_message(f, m)));
      const auto payload = read_frame(fd, readers[n % workers]);
      if (!payload) throw WireError("server " + std::to_string(n) + " closed the connection");
      const Message reply = decode_message(f, *payload);
      if (reply.kind != MessageKind::answer || reply.server != static_cast<std::uint32_t>(n) ||
          reply.values.size() != 1) {
        throw WireError("bad answer frame from server " + std::to_string(n));
      }
      answers[n] = reply.values[0];
    }
  } catch (...) {
    cleanup();
    throw;
  }
  for (const int fd : conns) ::shutdown(fd, SHUT_WR);
  bool ok = true;
  for (const pid_t pid : pids) {
    int status = 0;
    ::waitpid(pid, &status, 0);
    ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }
  for (const int fd : conns) ::close(fd);
  if (!ok) throw WireError("a server process exited abnormally");
  return answers;
}

}  // namespace hermpir::wire
