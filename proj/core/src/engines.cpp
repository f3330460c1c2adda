#include <array>
#include <stdexcept>
#include <vector>

#include "mpcctrl/harness.hpp"
#include "mpcctrl/nparty.hpp"
#include "mpcctrl/threeparty.hpp"

namespace mpcctrl {

namespace {

// Distribution bundle: per factor, the receiving server's view entries in
// ascending component order. Entry counts are implied by the sharing width.
Message make_bundle(const Session& session, const ProductInstanceSpec& spec,
                    std::uint8_t server, const std::vector<std::vector<ShareView>>& views,
                    std::uint32_t local) {
  Message m;
  m.session = session.config().session_id;
  m.step = session.step();
  m.summand = spec.summand;
  m.round = 0;
  m.sender = PartyId::distributor();
  m.receiver = PartyId::server(server);
  for (const auto& per_factor : views)
    for (const auto& entry : per_factor[local].entries()) m.payload.push_back(entry);
  return m;
}

std::vector<ShareView> parse_bundle(const Message& m, std::uint32_t parties,
                                    std::uint32_t factor_count, std::uint32_t local) {
  const std::uint32_t per_view = parties - 1;
  if (m.payload.size() != static_cast<std::size_t>(per_view) * factor_count)
    throw std::runtime_error("engine: malformed distribution bundle");
  std::vector<ShareView> views;
  views.reserve(factor_count);
  for (std::uint32_t k = 0; k < factor_count; ++k) {
    std::vector<ScaledResidue> entries(m.payload.begin() + k * per_view,
                                       m.payload.begin() + (k + 1) * per_view);
    views.emplace_back(local, parties, std::move(entries));
  }
  return views;
}

Message make_frame(const Session& session, const ProductInstanceSpec& spec,
                   std::uint16_t round, const PartyId& sender, const PartyId& receiver,
                   const ScaledResidue& value) {
  Message m;
  m.session = session.config().session_id;
  m.step = session.step();
  m.summand = spec.summand;
  m.round = round;
  m.sender = sender;
  m.receiver = receiver;
  m.payload.push_back(value);
  return m;
}

void distribute(Session& session, const ProductInstanceSpec& spec,
                std::span<const ScaledResidue> factors, std::uint32_t parties) {
  OpCounter ops;
  auto& rng = session.rng(PartyId::distributor());
  std::vector<std::vector<ShareView>> views;
  views.reserve(factors.size());
  for (const auto& factor : factors) {
    Sharing sharing = share(factor, parties, session.config().ring, rng, &ops);
    views.push_back(views_of(sharing));
  }
  session.count_ops(Role::distributor, ops);
  for (std::uint32_t local = 0; local < parties; ++local)
    session.send(make_bundle(session, spec, spec.servers[local], views, local));
}

ScaledResidue apply_fault(ScaledResidue z, const FaultInjection* fault, std::uint32_t slot,
                          const ModRing& ring) {
  if (fault && fault->corrupt_result_share && fault->server_slot == slot)
    z.value = add_mod(z.value, 1, ring.modulus);
  return z;
}

}  // namespace

ScaledResidue run_three_party_product(Session& session, const ProductInstanceSpec& spec,
                                      std::span<const ScaledResidue> factors,
                                      const FaultInjection* fault) {
  const auto m = static_cast<std::uint32_t>(factors.size());
  if (m < 2) throw std::invalid_argument("run_three_party_product: need at least 2 factors");
  if (spec.servers.size() != 3)
    throw std::invalid_argument("run_three_party_product: exactly 3 servers required");
  const ModRing ring = session.config().ring;

  distribute(session, spec, factors, 3);

  std::vector<ThreePartyServer> servers;
  servers.reserve(3);
  for (std::uint32_t j = 0; j < 3; ++j) {
    const PartyId self = PartyId::server(spec.servers[j]);
    Message bundle = session.receive(self, PartyId::distributor());
    servers.emplace_back(j, m, ring);
    servers[j].load_bundle(parse_bundle(bundle, 3, m, j));
  }

  const bool communication =
      session.config().zero_sharing == ZeroSharingMode::communication;
  for (std::uint32_t round = 1; round + 1 < m; ++round) {
    std::array<std::uint64_t, 3> masks{};
    if (communication) {
      // Each server draws fresh randomness and hands it to its successor;
      // the mask is the difference of own and received values.
      std::array<std::uint64_t, 3> own{};
      for (std::uint32_t j = 0; j < 3; ++j) {
        const PartyId self = PartyId::server(spec.servers[j]);
        own[j] = session.rng(self).uniform(ring.modulus);
        const PartyId succ = PartyId::server(spec.servers[cyclic_succ(j, 3)]);
        session.send(make_frame(session, spec, static_cast<std::uint16_t>(2 * round - 1), self,
                                succ, ScaledResidue{own[j], 0}));
      }
      OpCounter zero_ops;
      for (std::uint32_t j = 0; j < 3; ++j) {
        const PartyId self = PartyId::server(spec.servers[j]);
        const PartyId pred = PartyId::server(spec.servers[cyclic_pred(j, 3)]);
        const Message r = session.receive(self, pred);
        masks[j] = zero_component(own[j], r.payload.at(0).value, ring.modulus);
        zero_ops.adds += 1;
      }
      session.count_ops(Role::server, zero_ops);
    } else {
      const std::uint64_t counter = session.next_zero_counter();
      OpCounter zero_ops;
      for (std::uint32_t j = 0; j < 3; ++j) {
        masks[j] = session.zero_shares(spec.servers[j]).component(counter);
        zero_ops.adds += 1;  // the PRF difference
      }
      session.count_ops(Role::server, zero_ops);
    }

    OpCounter round_ops;
    std::array<ScaledResidue, 3> sent;
    for (std::uint32_t j = 0; j < 3; ++j) {
      sent[j] = servers[j].start_round(round, masks[j], &round_ops);
      const PartyId self = PartyId::server(spec.servers[j]);
      const PartyId succ = PartyId::server(spec.servers[cyclic_succ(j, 3)]);
      session.send(make_frame(session, spec, static_cast<std::uint16_t>(2 * round), self, succ,
                              sent[j]));
    }
    for (std::uint32_t j = 0; j < 3; ++j) {
      const PartyId self = PartyId::server(spec.servers[j]);
      const std::uint32_t pred = cyclic_pred(j, 3);
      const Message handoff = session.receive(self, PartyId::server(spec.servers[pred]));
      servers[j].finish_round(round, pred, handoff.payload.at(0));
    }
    session.count_ops(Role::server, round_ops);
  }

  const auto result_round = static_cast<std::uint16_t>(2 * m - 3);
  OpCounter final_ops;
  for (std::uint32_t j = 0; j < 3; ++j) {
    ScaledResidue z = apply_fault(servers[j].result_share(&final_ops), fault, j, ring);
    session.send(make_frame(session, spec, result_round, PartyId::server(spec.servers[j]),
                            PartyId::collector(), z));
  }
  session.count_ops(Role::server, final_ops);

  std::array<ScaledResidue, 3> shares;
  for (std::uint32_t j = 0; j < 3; ++j)
    shares[j] = session.receive(PartyId::collector(), PartyId::server(spec.servers[j]))
                    .payload.at(0);
  OpCounter collect_ops;
  ScaledResidue z = reconstruct(std::span<const ScaledResidue>(shares), ring, &collect_ops);
  session.count_ops(Role::collector, collect_ops);
  return z;
}

ScaledResidue run_n_party_product(Session& session, const ProductInstanceSpec& spec,
                                  const SummandAssignment& assignment,
                                  std::span<const ScaledResidue> factors,
                                  const FaultInjection* fault) {
  const auto m = static_cast<std::uint32_t>(factors.size());
  if (m < 2) throw std::invalid_argument("run_n_party_product: need at least 2 factors");
  if (assignment.factor_count() != m)
    throw std::invalid_argument("run_n_party_product: assignment arity mismatch");
  const std::uint32_t parties = assignment.party_count();
  if (spec.servers.size() != parties)
    throw std::invalid_argument("run_n_party_product: need one server per sharing component");
  const ModRing ring = session.config().ring;

  distribute(session, spec, factors, parties);

  std::vector<ScaledResidue> shares(parties);
  for (std::uint32_t j = 0; j < parties; ++j) {
    const PartyId self = PartyId::server(spec.servers[j]);
    Message bundle = session.receive(self, PartyId::distributor());
    const std::vector<ShareView> factor_views = parse_bundle(bundle, parties, m, j);
    OpCounter ops;
    ScaledResidue z = n_party_share(assignment, j, factor_views, ring, &ops);
    session.count_ops(Role::server, ops);
    z = apply_fault(z, fault, j, ring);
    session.send(make_frame(session, spec, 1, self, PartyId::collector(), z));
  }

  for (std::uint32_t j = 0; j < parties; ++j)
    shares[j] = session.receive(PartyId::collector(), PartyId::server(spec.servers[j]))
                    .payload.at(0);
  OpCounter collect_ops;
  ScaledResidue z = reconstruct(std::span<const ScaledResidue>(shares), ring, &collect_ops);
  session.count_ops(Role::collector, collect_ops);
  return z;
}

}  // namespace mpcctrl
