#include "fabsim/link.hpp"

namespace fabsim {

SimTime serialization_delay_ns(std::uint32_t size_bytes, std::uint64_t speed_bps) {
  if (size_bytes < kMinFrameBytes || size_bytes > kMaxFrameBytes)
    throw ConfigError("frame size " + std::to_string(size_bytes) +
                      " outside 64..1518");
  const std::uint64_t bits = std::uint64_t(size_bytes + kWireOverheadBytes) * 8;
  return SimTime((bits * 1'000'000'000ULL + speed_bps / 2) / speed_bps);
}

Link::Link(Engine& eng, MetricSet* metrics, std::string name,
           std::uint64_t speed_bps, SimTime propagation_delay, bool fc_enabled)
    : eng_(eng),
      metrics_(metrics),
      name_(std::move(name)),
      speed_bps_(speed_bps),
      prop_(propagation_delay),
      fc_enabled_(fc_enabled),
      fc_reaction_(serialization_delay_ns(kMaxFrameBytes, speed_bps)) {}

void Link::attach(int side, LinkEndpoint* ep, std::string ep_name) {
  ep_[side] = ep;
  ep_name_[side] = std::move(ep_name);
}

void Link::start_tx(int side, Frame f) {
  Direction& d = dir_[side];
  if (!up_) throw ModelError("transmit on downed link " + name_);
  if (d.busy) throw ModelError("transmit while busy on " + name_);
  if (f.kind == FrameKind::Data && d.tx_data_paused)
    throw ModelError("data transmit on paused direction of " + name_);
  f.validate();
  d.busy = true;
  const SimTime ser = serialization_delay_ns(f.size_bytes, speed_bps_);
  eng_.schedule_in(ser, name_, [this, side] { tx_done(side); });
  eng_.schedule_in(ser + prop_, name_,
                   [this, side, f = std::move(f)] { deliver(side, f); });
}

void Link::tx_done(int side) {
  dir_[side].busy = false;
  // a latched flow-control change preempts the next data frame
  maybe_emit_ctrl(side);
  if (!dir_[side].busy && ep_[side]) ep_[side]->line_idle();
}

void Link::deliver(int side, const Frame& f) {
  const int peer = 1 - side;
  if (f.kind == FrameKind::Data) {
    if (ep_[peer]) ep_[peer]->handle_arrival(f);
    return;
  }
  // pause/resume lands: gate the peer's data transmissions
  Direction& pd = dir_[peer];
  const bool pause = f.kind == FrameKind::Pause;
  if (pd.tx_data_paused == pause) return;
  pd.tx_data_paused = pause;
  if (metrics_) {
    if (pause) {
      pd.paused_since = eng_.now();
    } else if (pd.paused_since >= 0) {
      metrics_->counter(name_ + ".pause_ns." + ep_name_[peer]) +=
          std::uint64_t(eng_.now() - pd.paused_since);
      pd.paused_since = -1;
    }
  }
  if (ep_[peer]) ep_[peer]->pause_state_changed();
  if (!pause && !pd.busy && ep_[peer]) ep_[peer]->line_idle();
}

void Link::request_pause(int side, bool want) {
  Direction& d = dir_[side];
  if (!fc_enabled_) {
    if (metrics_ && want) ++metrics_->counter(name_ + ".pause_ignored_fc_off");
    return;
  }
  d.want_peer_paused = want;
  maybe_emit_ctrl(side);
}

void Link::request_pause_delayed(int side, bool want) {
  if (!fc_enabled_) {
    if (metrics_ && want) ++metrics_->counter(name_ + ".pause_ignored_fc_off");
    return;
  }
  eng_.schedule_in(fc_reaction_, name_,
                   [this, side, want] { request_pause(side, want); });
}

void Link::maybe_emit_ctrl(int side) {
  Direction& d = dir_[side];
  if (d.busy || !up_) return;
  if (d.want_peer_paused == d.signaled_peer_paused) return;
  d.signaled_peer_paused = d.want_peer_paused;
  start_tx(side, make_pause_frame(d.signaled_peer_paused, MacAddress{}));
}

void Link::flush_pause_accounting() {
  for (int s = 0; s < 2; ++s) {
    Direction& d = dir_[s];
    if (d.tx_data_paused && d.paused_since >= 0 && metrics_) {
      metrics_->counter(name_ + ".pause_ns." + ep_name_[s]) +=
          std::uint64_t(eng_.now() - d.paused_since);
      d.paused_since = eng_.now();
    }
  }
}

}  // namespace fabsim
