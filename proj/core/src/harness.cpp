#include "mpcctrl/harness.hpp"

#include <sodium.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "mpcctrl/wire.hpp"

namespace mpcctrl {

const char* to_string(TransportKind kind) {
  switch (kind) {
    case TransportKind::in_memory: return "in-memory";
    case TransportKind::framed_stream: return "framed-stream";
  }
  return "?";
}

namespace {

// Randomness stream that meters logical draws into a session counter.
class MeteredRandomness final : public Randomness {
 public:
  MeteredRandomness(std::uint64_t seed, std::uint64_t* draw_counter)
      : inner_(seed), draw_counter_(draw_counter) {}

  std::uint64_t next_u64() override { return inner_.next_u64(); }

  std::uint64_t uniform(std::uint64_t bound) override {
    ++*draw_counter_;
    return Randomness::uniform(bound);
  }

 private:
  SeededRandomness inner_;
  std::uint64_t* draw_counter_;
};

using PairKey = std::uint16_t;  // sender byte << 8 | receiver byte

PairKey pair_key(const PartyId& from, const PartyId& to) {
  return static_cast<PairKey>(from.wire_byte()) << 8 | to.wire_byte();
}

class Channel {
 public:
  virtual ~Channel() = default;
  virtual void push(const Message& m) = 0;
  virtual Message pop() = 0;
  virtual bool empty() const = 0;
};

class InMemoryChannel final : public Channel {
 public:
  void push(const Message& m) override { queue_.push_back(m); }
  Message pop() override {
    if (queue_.empty()) throw std::runtime_error("harness: no pending message on channel");
    Message m = std::move(queue_.front());
    queue_.pop_front();
    return m;
  }
  bool empty() const override { return queue_.empty(); }

 private:
  std::deque<Message> queue_;
};

// Directed stream-socket channel: codec frame -> AEAD seal -> 4-byte
// big-endian length prefix -> socketpair.
class FramedStreamChannel final : public Channel {
 public:
  explicit FramedStreamChannel(const std::array<std::uint8_t, 32>& key) : key_(key) {
    int fds[2];
    if (socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0)
      throw std::runtime_error("harness: socketpair failed");
    write_fd_ = fds[0];
    read_fd_ = fds[1];
  }

  ~FramedStreamChannel() override {
    ::close(write_fd_);
    ::close(read_fd_);
  }

  void push(const Message& m) override {
    const auto sealed = wire::seal(wire::encode_frame(m), key_, send_counter_++);
    std::uint8_t prefix[4];
    for (int i = 0; i < 4; ++i)
      prefix[i] = static_cast<std::uint8_t>(sealed.size() >> (8 * (3 - i)));
    write_all(prefix, sizeof prefix);
    write_all(sealed.data(), sealed.size());
    ++pending_;
  }

  Message pop() override {
    if (pending_ == 0) throw std::runtime_error("harness: no pending message on channel");
    std::uint8_t prefix[4];
    read_all(prefix, sizeof prefix);
    std::size_t len = 0;
    for (int i = 0; i < 4; ++i) len = len << 8 | prefix[i];
    std::vector<std::uint8_t> sealed(len);
    read_all(sealed.data(), len);
    --pending_;
    const auto plain = wire::open(sealed, key_, recv_counter_++);
    return wire::decode_frame(plain);
  }

  bool empty() const override { return pending_ == 0; }

 private:
  void write_all(const std::uint8_t* data, std::size_t len) {
    while (len > 0) {
      const ssize_t n = ::write(write_fd_, data, len);
      if (n <= 0) throw std::runtime_error("harness: channel write failed");
      data += n;
      len -= static_cast<std::size_t>(n);
    }
  }

  void read_all(std::uint8_t* data, std::size_t len) {
    while (len > 0) {
      const ssize_t n = ::read(read_fd_, data, len);
      if (n <= 0) throw std::runtime_error("harness: channel read failed");
      data += n;
      len -= static_cast<std::size_t>(n);
    }
  }

  std::array<std::uint8_t, 32> key_;
  int write_fd_ = -1;
  int read_fd_ = -1;
  std::uint64_t send_counter_ = 1;
  std::uint64_t recv_counter_ = 1;
  std::size_t pending_ = 0;
};

}  // namespace

struct Session::Impl {
  std::map<std::uint8_t, std::unique_ptr<MeteredRandomness>> rngs;
  std::map<std::uint32_t, std::unique_ptr<CorrelatedZeroShares>> zero_shares;
  std::map<PairKey, std::unique_ptr<Channel>> channels;
  std::set<std::tuple<std::uint32_t, std::uint16_t, std::uint16_t, std::uint8_t, std::uint8_t>>
      seen;
  std::array<std::uint8_t, 32> master_key{};
};

namespace {

std::array<std::uint8_t, 32> derive_master_key(const SessionConfig& config) {
  if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
  std::array<std::uint8_t, 32> out{};
  std::uint8_t material[16];
  for (int i = 0; i < 8; ++i) material[i] = static_cast<std::uint8_t>(config.seed >> (8 * i));
  for (int i = 0; i < 8; ++i)
    material[8 + i] = static_cast<std::uint8_t>(config.session_id >> (8 * i));
  crypto_generichash(out.data(), out.size(), material, sizeof material, nullptr, 0);
  return out;
}

std::array<std::uint8_t, 32> derive_channel_key(const std::array<std::uint8_t, 32>& master,
                                                PairKey pair) {
  std::array<std::uint8_t, 32> out{};
  std::uint8_t tag[4] = {'c', 'h', static_cast<std::uint8_t>(pair >> 8),
                         static_cast<std::uint8_t>(pair)};
  crypto_generichash(out.data(), out.size(), tag, sizeof tag, master.data(), master.size());
  return out;
}

}  // namespace

Session::Session(const SessionConfig& config) : config_(config), impl_(new Impl) {
  if (config_.ring.modulus < 2 || config_.ring.modulus > kMaxModulus)
    throw std::invalid_argument("Session: invalid ring");
  if (config_.server_count < 1 || config_.server_count > 254)
    throw std::invalid_argument("Session: server count out of range");
  impl_->master_key = derive_master_key(config_);
}

Session::~Session() = default;

Randomness& Session::rng(const PartyId& party) {
  validate_party(party);
  const std::uint8_t byte = party.wire_byte();
  auto it = impl_->rngs.find(byte);
  if (it == impl_->rngs.end()) {
    auto* counter = &metrics_.at(party.role).rng_draws;
    it = impl_->rngs
             .emplace(byte, std::make_unique<MeteredRandomness>(
                                mix_seed(config_.seed, byte), counter))
             .first;
  }
  return *it->second;
}

CorrelatedZeroShares& Session::zero_shares(std::uint32_t server) {
  if (server < 1 || server > 3)
    throw std::invalid_argument("Session: zero shares are held by servers 1..3");
  auto it = impl_->zero_shares.find(server);
  if (it == impl_->zero_shares.end()) {
    it = impl_->zero_shares
             .emplace(server, std::make_unique<CorrelatedZeroShares>(
                                  server - 1, 3, config_.ring, impl_->master_key))
             .first;
  }
  return *it->second;
}

void Session::send(Message m) {
  if (closed_) throw std::runtime_error("Session: send on closed session");
  if (m.session != config_.session_id) throw std::runtime_error("Session: wrong session id");
  validate_party(m.sender);
  validate_party(m.receiver);
  if (m.sender == m.receiver) throw std::runtime_error("Session: self-addressed frame");
  for (const auto& r : m.payload) {
    if (r.value >= config_.ring.modulus)
      throw std::runtime_error("Session: payload residue outside the ring");
    if (r.scale > 0xFF) throw std::runtime_error("Session: payload scale exceeds wire format");
  }
  const auto key = std::make_tuple(m.step, m.summand, m.round, m.sender.wire_byte(),
                                   m.receiver.wire_byte());
  if (!impl_->seen.insert(key).second)
    throw std::runtime_error("Session: duplicate frame key (step/summand/round/sender/receiver)");

  auto& counts = metrics_.at(m.sender.role);
  counts.messages += 1;
  counts.bytes += wire::encoded_size(m);

  log_.push_back(m);

  const PairKey pk = pair_key(m.sender, m.receiver);
  auto it = impl_->channels.find(pk);
  if (it == impl_->channels.end()) {
    std::unique_ptr<Channel> ch;
    if (config_.transport == TransportKind::in_memory)
      ch = std::make_unique<InMemoryChannel>();
    else
      ch = std::make_unique<FramedStreamChannel>(derive_channel_key(impl_->master_key, pk));
    it = impl_->channels.emplace(pk, std::move(ch)).first;
  }
  it->second->push(m);
}

Message Session::receive(const PartyId& receiver, const PartyId& sender) {
  if (closed_) throw std::runtime_error("Session: receive on closed session");
  const PairKey pk = pair_key(sender, receiver);
  auto it = impl_->channels.find(pk);
  if (it == impl_->channels.end() || it->second->empty())
    throw std::runtime_error("Session: no pending message on channel");
  Message m = it->second->pop();
  if (m.session != config_.session_id) throw std::runtime_error("Session: wrong session id");
  for (const auto& r : m.payload)
    if (r.value >= config_.ring.modulus)
      throw std::runtime_error("Session: payload residue outside the ring");
  return m;
}

void Session::close() { closed_ = true; }

void Session::count_ops(Role role, const OpCounter& ops) {
  auto& counts = metrics_.at(role);
  counts.mod_adds += ops.adds;
  counts.mod_muls += ops.muls;
}

void Session::validate_party(const PartyId& party) const {
  if (party.role == Role::server && (party.index < 1 || party.index > config_.server_count))
    throw std::runtime_error("Session: server index outside the pool");
}

bool is_server_to_server(const Message& m) {
  return m.sender.role == Role::server && m.receiver.role == Role::server;
}

bool is_circular_frame(const Message& m) {
  return is_server_to_server(m) && m.round >= 2 && m.round % 2 == 0;
}

bool is_zero_share_frame(const Message& m) {
  return is_server_to_server(m) && m.round % 2 == 1;
}

}  // namespace mpcctrl
