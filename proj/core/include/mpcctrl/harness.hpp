#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mpcctrl/message.hpp"
#include "mpcctrl/modring.hpp"
#include "mpcctrl/rng.hpp"
#include "mpcctrl/sharing.hpp"

namespace mpcctrl {

enum class TransportKind : std::uint8_t { in_memory, framed_stream };
const char* to_string(TransportKind kind);

struct SessionConfig {
  std::uint64_t session_id = 1;
  ModRing ring;
  std::uint32_t server_count = 3;
  TransportKind transport = TransportKind::in_memory;
  std::uint64_t seed = 1;
  ZeroSharingMode zero_sharing = ZeroSharingMode::correlated_randomness;
};

// Simulated network of one distributor, a server pool and one collector.
// Channels are reliable, FIFO and private per directed pair; the
// framed-stream transport additionally runs every frame through the
// bit-exact codec and an authenticated-encryption channel over a stream
// socket pair. Scheduling is deterministic: parties are sequential state
// machines the protocol drivers advance lock-step on the calling thread.
class Session {
 public:
  explicit Session(const SessionConfig& config);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const SessionConfig& config() const { return config_; }

  std::uint32_t step() const { return step_; }
  void advance_step() { ++step_; }

  // Per-party deterministic randomness stream; draws are metered into the
  // party's role counters.
  Randomness& rng(const PartyId& party);

  // Correlated zero-share handle for one of the first three servers.
  CorrelatedZeroShares& zero_shares(std::uint32_t server);
  // Session-wide strictly increasing counter; one per zero-sharing round.
  std::uint64_t next_zero_counter() { return zero_counter_++; }

  // Validates, meters, logs and routes a frame. Throws on payload values
  // outside the ring, duplicate (step, summand, round, sender, receiver)
  // keys, unknown parties, or a closed session.
  void send(Message m);

  // Pops the oldest undelivered frame for this directed pair.
  Message receive(const PartyId& receiver, const PartyId& sender);

  void close();
  bool closed() const { return closed_; }

  // Logical frames in send order; what a party saw is the sub-log filtered
  // by receiver.
  const std::vector<Message>& log() const { return log_; }

  RunMetrics& metrics() { return metrics_; }
  const RunMetrics& metrics() const { return metrics_; }
  void count_ops(Role role, const OpCounter& ops);

 private:
  struct Impl;

  void validate_party(const PartyId& party) const;

  SessionConfig config_;
  std::uint32_t step_ = 0;
  std::uint64_t zero_counter_ = 1;
  bool closed_ = false;
  std::vector<Message> log_;
  RunMetrics metrics_;
  std::unique_ptr<Impl> impl_;
};

// Log classification helpers for structural checks.
bool is_server_to_server(const Message& m);
// Circular hand-off of a masked partial product (even round >= 2).
bool is_circular_frame(const Message& m);
// Communication-mode zero-share exchange (odd round, server to server).
bool is_zero_share_frame(const Message& m);

// One product summand mapped onto session servers, in protocol order.
struct ProductInstanceSpec {
  std::uint16_t summand = 0;
  std::vector<std::uint8_t> servers;
};

// Test hook: corrupts one server's result share in transit so downstream
// oracle comparisons must flag the mismatch.
struct FaultInjection {
  bool corrupt_result_share = false;
  std::uint32_t server_slot = 0;  // position in ProductInstanceSpec::servers
};

// Lock-step drivers executing one product instance over the session.
ScaledResidue run_three_party_product(Session& session, const ProductInstanceSpec& spec,
                                      std::span<const ScaledResidue> factors,
                                      const FaultInjection* fault = nullptr);
ScaledResidue run_n_party_product(Session& session, const ProductInstanceSpec& spec,
                                  const class SummandAssignment& assignment,
                                  std::span<const ScaledResidue> factors,
                                  const FaultInjection* fault = nullptr);

}  // namespace mpcctrl
