#pragma once

#include <cstdint>
#include <string>

#include "fabsim/engine.hpp"
#include "fabsim/frame.hpp"
#include "fabsim/metrics.hpp"

namespace fabsim {

constexpr std::uint64_t kFastEthernetBps = 100'000'000;
constexpr std::uint64_t kGigabitBps = 1'000'000'000;
constexpr std::uint64_t kTenGigabitBps = 10'000'000'000ULL;

// Time to put a frame on the wire, including preamble and inter-frame gap,
// rounded to the nearest nanosecond.
SimTime serialization_delay_ns(std::uint32_t size_bytes, std::uint64_t speed_bps);

class LinkEndpoint {
 public:
  virtual ~LinkEndpoint() = default;
  virtual void handle_arrival(const Frame& f) = 0;
  // The transmit direction of this endpoint finished a frame (or was resumed)
  // and can take the next one.
  virtual void line_idle() = 0;
  virtual void pause_state_changed() = 0;
};

// Full-duplex point-to-point line. Each direction carries one frame at a
// time; callers serialize their own transmissions (line_idle is the cue).
// PAUSE/RESUME are real 64-byte frames: they wait for the current frame
// boundary, take their serialization time, and flip the peer's data gate on
// arrival. A direction that is paused still carries control frames.
class Link {
 public:
  Link(Engine& eng, MetricSet* metrics, std::string name, std::uint64_t speed_bps,
       SimTime propagation_delay, bool fc_enabled);

  void attach(int side, LinkEndpoint* ep, std::string ep_name);

  std::uint64_t speed_bps() const { return speed_bps_; }
  SimTime propagation_delay() const { return prop_; }
  bool fc_enabled() const { return fc_enabled_; }
  const std::string& name() const { return name_; }
  bool up() const { return up_; }
  void set_up(bool v) { up_ = v; }

  // Delay between an endpoint deciding to signal pause/resume and the
  // control frame becoming eligible for transmission.
  SimTime fc_reaction() const { return fc_reaction_; }
  void set_fc_reaction(SimTime t) { fc_reaction_ = t; }

  bool can_start_tx(int side) const { return up_ && !dir_[side].busy; }
  bool data_paused(int side) const { return dir_[side].tx_data_paused; }

  // Put a frame on the wire. Preconditions: direction idle; data frames
  // only while not paused.
  void start_tx(int side, Frame f);

  // Level-signaled flow control toward the peer: want=true blocks the
  // peer's data transmissions once the control frame lands. Signals are
  // collapsed, so only state changes reach the wire. With FC disabled this
  // is a recorded no-op.
  void request_pause(int side, bool want);
  // Same, but after the configured reaction latency.
  void request_pause_delayed(int side, bool want);

  void flush_pause_accounting();

 private:
  struct Direction {
    bool busy = false;
    bool tx_data_paused = false;
    SimTime paused_since = -1;
    bool want_peer_paused = false;      // what this side wants of its peer
    bool signaled_peer_paused = false;  // last control state put on the wire
  };

  void tx_done(int side);
  void deliver(int side, const Frame& f);
  void maybe_emit_ctrl(int side);

  Engine& eng_;
  MetricSet* metrics_;
  std::string name_;
  std::uint64_t speed_bps_;
  SimTime prop_;
  bool fc_enabled_;
  bool up_ = true;
  SimTime fc_reaction_;
  Direction dir_[2];
  LinkEndpoint* ep_[2] = {nullptr, nullptr};
  std::string ep_name_[2];
};

}  // namespace fabsim
