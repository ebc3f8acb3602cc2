#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fabsim/engine.hpp"
#include "fabsim/frame.hpp"
#include "fabsim/link.hpp"
#include "fabsim/mac_table.hpp"
#include "fabsim/metrics.hpp"
#include "fabsim/rng.hpp"

namespace fabsim {

enum class SchedulerKind { Fifo, Strict, Wrr };
enum class IngressMode { Voq, SharedFifo };

struct SwitchPortVlanConfig {
  std::set<std::uint16_t> members = {1};
  std::uint16_t native = 1;          // untagged ingress maps here
  std::set<std::uint16_t> tagged;    // egress keeps the tag for these VLANs
};

struct SwitchConfig {
  std::string name = "sw";
  int ports = 0;
  IngressMode ingress_mode = IngressMode::Voq;
  bool fc_propagation = true;
  std::uint64_t egress_buffer_bytes = 128 * 1024;
  std::uint64_t ingress_buffer_bytes = 128 * 1024;
  double xoff_fraction = 0.80;
  double xon_fraction = 0.50;
  SchedulerKind scheduler = SchedulerKind::Strict;
  std::array<std::uint32_t, 8> wrr_weights = {1, 1, 1, 1, 1, 1, 1, 1};
  MacTableConfig mac;
  SimTime aging_scan_interval = 0;  // 0: derived from the aging time
  SimTime forward_latency = usec(5);
  // Aggregate forwarding ceiling as a fraction of the sum of egress line
  // rates. 1.0 means an ideal non-blocking fabric (no internal constraint).
  double fabric_capacity_fraction = 1.0;
  std::uint64_t fabric_burst_bytes = 32 * 1024;
  double multicast_cap_fps = 0.0;  // 0: unlimited
  std::uint64_t multicast_queue_bytes = 512 * 1024;
};

// Store-and-forward switch with MAC learning, VLAN filtering, per-priority
// egress queues, VOQ or shared-FIFO ingress buffering, an internal fabric
// admission bound, PAUSE propagation and link aggregation groups.
//
// Congestion handling: when an egress queue crosses its XOFF threshold the
// switch pauses every ingress link that fed that egress since the last
// resume; they all restart together when the queue falls under XON. Frames
// that meet a completely full egress queue are held at the head of their
// ingress queue (VOQ mode keeps other egresses flowing) when FC propagation
// is on, and are dropped when it is off.
class Switch {
 public:
  Switch(Engine& eng, MetricSet* metrics, SwitchConfig cfg);
  ~Switch();

  void attach_link(int port, Link* link, int side);
  void set_port_vlans(int port, SwitchPortVlanConfig v);
  // Groups existing ports into a LAG; returns the logical interface id.
  int add_trunk(const std::vector<int>& member_ports, RngStream rng);
  void add_static_mac(const MacAddress& addr, std::uint16_t vlan, int port);
  void start();

  // Forwarding decision: admits, learns the source, resolves the
  // destination and returns the target interface list (logical ids for
  // trunks). Exposed for direct tests; forwarding uses the same path.
  std::vector<int> lookup_and_learn(const Frame& f, int ingress_port,
                                    std::uint16_t vlan);

  MacTable& mac_table() { return table_; }
  const SwitchConfig& config() const { return cfg_; }
  const std::string& name() const { return cfg_.name; }
  int trunk_assignment_census(int logical_id, std::vector<std::size_t>& per_member) const;

  std::uint64_t count_queued(std::uint64_t flow_id) const;
  std::uint64_t total_queued_bytes() const;

  // exposed for age-driven tests
  std::size_t run_age_scan();

 private:
  struct PortEndpoint;
  struct QueuedFrame {
    Frame f;
    std::uint16_t vlan = 1;
    int egress = 0;  // physical egress port
  };
  struct EgressState {
    std::array<std::deque<Frame>, 8> q;
    std::uint64_t bytes = 0;
    std::uint64_t frames = 0;
    // deficit round robin state
    std::array<std::int64_t, 8> deficit{};
    int drr_cursor = 0;
    bool xoff_latched = false;
    std::set<int> contributors;     // ingress ports feeding since last resume
    std::deque<int> waiters;        // ingress ports with held head frames
    std::set<int> waiter_set;
  };
  struct IngressState {
    std::map<int, std::deque<QueuedFrame>> voq;  // by egress port
    std::deque<QueuedFrame> fifo;                // shared mode
    std::uint64_t bytes = 0;
    std::set<int> pause_reasons;  // egress ids; -1 = own buffer high
    int rr_cursor = 0;
  };
  struct PortState {
    Link* link = nullptr;
    int side = 0;
    SwitchPortVlanConfig vcfg;
    EgressState eq;
    IngressState in;
    std::unique_ptr<PortEndpoint> ep;
  };
  struct TrunkGroup {
    int logical_id = 0;
    std::vector<int> members;
    RngStream rng;
    std::map<std::pair<MacAddress, MacAddress>, int> assignment;
  };

  void on_arrival(int port, const Frame& f);
  void forward_stage2(Frame f, int ingress, std::uint16_t vlan);
  int vlan_admit(const Frame& f, int port);  // -1 = rejected
  int learn_interface(int physical_port) const;
  int trunk_select(TrunkGroup& g, const MacAddress& src, const MacAddress& dst);
  const std::vector<int>& vlan_interfaces(std::uint16_t vlan);
  void rebuild_vlan_cache();

  void ingress_enqueue(int ingress, int egress, Frame f, std::uint16_t vlan);
  void advance_ingress(int ingress);
  enum class MoveResult { Moved, Dropped, BlockedEgress, BlockedTokens };
  MoveResult try_move(int ingress, QueuedFrame& qf);
  void commit_move(int ingress, const QueuedFrame& qf);
  void ingress_xon_check(int ingress);

  void egress_enqueue(int egress, Frame f, int from_ingress);
  void pump_egress(int egress);
  void egress_drained(int egress);
  Frame* egress_peek(int egress, int* out_q);
  bool egress_select(int egress, Frame& out);

  void pause_upstream(int ingress, int reason);
  void unpause_upstream(int ingress, int reason);

  void schedule_fabric_retry(SimTime when);
  void fabric_retry();
  bool fabric_take(std::uint32_t wire_bytes, SimTime now);
  SimTime fabric_available_at(std::uint32_t wire_bytes, SimTime now);
  void fabric_refill(SimTime now);

  void enqueue_multicast_copies(const Frame& f, int ingress, std::uint16_t vlan,
                                const std::vector<int>& targets);
  void pump_multicast();

  std::uint64_t& ctr(const char* what);

  Engine& eng_;
  MetricSet* metrics_;
  SwitchConfig cfg_;
  MacTable table_;
  std::vector<PortState> ports_;
  std::vector<TrunkGroup> trunks_;
  std::map<int, int> member_to_trunk_;  // physical port -> logical id
  std::map<std::uint16_t, std::vector<int>> vlan_cache_;
  bool vlan_cache_dirty_ = true;

  bool fabric_enabled_ = false;
  std::uint64_t fabric_rate_bps_ = 0;
  std::int64_t fabric_tokens_bits_ = 0;
  std::int64_t fabric_carry_ = 0;
  SimTime fabric_last_refill_ = 0;
  SimTime fabric_retry_at_ = kNever;
  int fabric_rr_cursor_ = 0;

  struct PendingMulticast {
    Frame f;
    std::uint16_t vlan;
    int ingress;
    std::vector<int> targets;
  };
  std::deque<PendingMulticast> mcast_q_;
  std::uint64_t mcast_q_bytes_ = 0;
  SimTime mcast_next_allowed_ = 0;
  bool mcast_timer_armed_ = false;

  std::uint64_t xoff_threshold_e_ = 0, xon_threshold_e_ = 0;
  std::uint64_t xoff_threshold_i_ = 0, xon_threshold_i_ = 0;
};

}  // namespace fabsim
