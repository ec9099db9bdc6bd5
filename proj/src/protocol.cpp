#include "ebs/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ebs/params.hpp"

namespace ebs::protocol {
namespace {

Ticks ticks_until_fire(Phase phi, Ticks period) {
  return std::llround(phi.remaining() * static_cast<double>(period));
}

void refresh_epsilon(NodeState& node, const ProtocolConfig& cfg) {
  node.epsilon = effective_epsilon(cfg, node.neighbor_count_estimate);
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Initialization: return "init";
    case Mode::Synchronization: return "sync";
    case Mode::SteadyDutyCycled: return "steady";
  }
  return "?";
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::NoReachback: return "no_reachback";
    case Variant::PartialReachback: return "partial_reachback";
  }
  return "?";
}

void ProtocolConfig::validate() const {
  if (period <= 0) throw std::invalid_argument("protocol.period must be > 0");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("protocol.epsilon must lie in (0, 0.5]");
  }
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("protocol.sigma must lie in (0, 1)");
  if (!(s_th >= 0.0 && s_th <= 100.0)) throw std::invalid_argument("protocol.s_th must lie in [0, 100]");
  if (c0 <= 0) throw std::invalid_argument("protocol.c0 must be > 0");
  if (init_listen_periods < 1) throw std::invalid_argument("protocol.init_listen_periods must be >= 1");
}

double effective_epsilon(const ProtocolConfig& cfg, int neighbor_estimate) {
  if (!cfg.adaptive_c) return cfg.epsilon;
  const Ticks c = params::adaptive_c(cfg.c0, neighbor_estimate, cfg.s_th);
  const double widened = static_cast<double>(c) / (2.0 * static_cast<double>(cfg.period));
  return std::min(0.5, std::max(cfg.epsilon, widened));
}

NodeState make_node(NodeId id, const ProtocolConfig& cfg, Phase initial, int known_degree) {
  NodeState node;
  node.id = id;
  node.phase = initial;
  node.awake = true;
  if (cfg.duty_cycling) {
    node.mode = Mode::Initialization;
    node.init_periods_left = cfg.init_listen_periods;
  } else {
    node.mode = Mode::Synchronization;
    node.neighbor_count_estimate = known_degree;
  }
  refresh_epsilon(node, cfg);
  return node;
}

NodeState on_period_start(NodeState node, const ProtocolConfig& cfg) {
  if (node.phase.value() != 0.0) {
    throw std::logic_error("on_period_start called at phase " + std::to_string(node.phase.value()));
  }
  node.stored_advance.reset();
  node.pending_tx_delay.reset();
  if (node.mode == Mode::Initialization && --node.init_periods_left <= 0) {
    node.mode = Mode::Synchronization;
    node.neighbor_count_estimate = static_cast<int>(node.senders_heard.size());
    node.senders_heard.clear();
    node.heard_this_period.clear();
    refresh_epsilon(node, cfg);
  }
  // Initialization and synchronization listen all period; a steady node's
  // window opens at the wrap and the simulator closes it at phase epsilon.
  node.awake = true;
  return node;
}

FireResult on_fire(NodeState node, const ProtocolConfig& cfg, Ticks now) {
  node.phase = Phase(0.0);
  node.pending_tx_delay.reset();
  std::optional<BroadcastMessage> msg;
  if (cfg.variant == Variant::NoReachback || node.payload_queued) {
    msg = BroadcastMessage{node.id, now, node.payload_queued};
  }
  node.payload_queued = false;
  return {std::move(node), msg};
}

NodeState on_message(NodeState node, NodeId sender, const ProtocolConfig& cfg, Ticks /*now*/) {
  if (!node.awake) return node;
  node.senders_heard.insert(sender);
  if (node.recovering) return node;

  const Phase advanced = phase_advance(node.phase, node.coupling(cfg.sigma));
  if (advanced != node.phase) {
    node.phase = advanced;
    // The window moved; senders heard in the old one no longer line up.
    node.heard_this_period.clear();
    if (cfg.variant == Variant::NoReachback) {
      node.pending_tx_delay = ticks_until_fire(advanced, cfg.period);
    } else {
      node.stored_advance = advanced;
    }
  }
  // After a jump the sender's fire sits g(phi)*T before our own, which is
  // inside the window by construction when the coupling is stable.
  if (in_setw(node.phase, node.epsilon)) node.heard_this_period.insert(sender);
  return node;
}

NodeState end_of_period_evaluation(NodeState node, const ProtocolConfig& cfg) {
  if (node.mode == Mode::Initialization) return node;
  const auto heard = static_cast<int>(node.heard_this_period.size());
  const auto senders = static_cast<int>(node.senders_heard.size());
  node.heard_this_period.clear();
  node.senders_heard.clear();

  if (node.recovering) {
    node.recovering = false;
    node.neighbor_count_estimate = senders;
    refresh_epsilon(node, cfg);
    return node;
  }
  if (node.neighbor_count_estimate <= 0) {
    if (node.mode == Mode::Synchronization) {
      throw IsolatedNodeError("node " + std::to_string(node.id) +
                              " has no known neighbours and cannot synchronize");
    }
    return node;
  }

  node.synchronicity = 100.0 * heard / node.neighbor_count_estimate;
  if (node.synchronicity > 100.0) {
    node.neighbor_count_estimate = heard;
    refresh_epsilon(node, cfg);
  }

  if (node.mode == Mode::Synchronization) {
    if (cfg.duty_cycling && node.synchronicity >= cfg.s_th) node.mode = Mode::SteadyDutyCycled;
  } else if (node.synchronicity < cfg.s_th) {
    node.mode = Mode::Synchronization;
    node.recovering = true;
    ++node.flap_count;
  }
  return node;
}

MrfConfig MrfConfig::half_period(Ticks period, CouplingParams coupling) {
  return MrfConfig{period, period / 2, coupling};
}

void MrfConfig::validate() const {
  if (period <= 0) throw std::invalid_argument("mrf period must be > 0");
  if (!(refractory > 0 && refractory < period)) {
    throw std::invalid_argument("mrf.refractory must lie in (0, period)");
  }
}

bool mrf_in_refractory(Phase phi, const MrfConfig& cfg) {
  return phi.value() * static_cast<double>(cfg.period) < static_cast<double>(cfg.refractory);
}

NodeState mrf_on_message(NodeState node, NodeId sender, const MrfConfig& cfg, Ticks /*now*/) {
  if (!node.awake || mrf_in_refractory(node.phase, cfg)) return node;
  node.senders_heard.insert(sender);
  const Phase advanced = phase_advance(node.phase, cfg.coupling);
  if (advanced != node.phase) {
    node.phase = advanced;
    node.pending_tx_delay = ticks_until_fire(advanced, cfg.period);
  }
  node.heard_this_period.insert(sender);
  return node;
}

FireResult mrf_on_fire(NodeState node, const MrfConfig& cfg, Ticks now) {
  node.phase = Phase(0.0);
  node.pending_tx_delay.reset();
  node.heard_this_period.clear();
  node.senders_heard.clear();
  node.awake = !mrf_in_refractory(node.phase, cfg);
  BroadcastMessage msg{node.id, now, node.payload_queued};
  node.payload_queued = false;
  return {std::move(node), msg};
}

}  // namespace ebs::protocol
