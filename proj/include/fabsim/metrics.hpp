#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fabsim/frame.hpp"
#include "fabsim/time.hpp"

namespace fabsim {

// 300 ns per bin, matching the measurement precision of the testers.
constexpr SimTime kLatencyBinNs = 300;

struct LatencyHistogram {
  std::map<std::int64_t, std::uint64_t> bins;  // bin index -> count
  std::uint64_t total = 0;
  std::int64_t latency_sum_ns = 0;

  void record(SimTime latency_ns);
  double mean_ns() const {
    return total ? double(latency_sum_ns) / double(total) : 0.0;
  }
};

struct FlowStats {
  MacAddress src, dst;
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_switch = 0;
  std::uint64_t dropped_host = 0;
  std::uint64_t delivered_wire_bytes = 0;
  std::uint64_t reorders = 0;
  std::uint64_t highest_seq = 0;
  bool any_delivered = false;

  std::uint64_t in_flight() const {
    return sent - delivered - dropped_switch - dropped_host;
  }
};

// Terminal record of one dataflow event, exported to events.csv.
struct EventRow {
  std::uint64_t event_id = 0;
  std::string state;  // at-LVL1 | at-L2 | accepted | rejected | built | cleared | error
  SimTime t_lvl1 = -1;
  SimTime t_decision = -1;
  SimTime t_built = -1;
  SimTime t_cleared = -1;
};

// All measurements of one simulation instance. Export is deterministic:
// map-ordered rows, fixed columns, plain decimal formatting.
class MetricSet {
 public:
  explicit MetricSet(SimTime window_ns = msec(1)) : window_ns_(window_ns) {}

  void register_flow(std::uint64_t flow_id, const MacAddress& src,
                     const MacAddress& dst);
  void record_send(std::uint64_t flow_id);
  void record_delivery(std::uint64_t flow_id, std::uint32_t wire_bytes,
                       SimTime latency_ns, SimTime now, std::uint64_t seq,
                       bool measure_latency);
  void record_drop_switch(std::uint64_t flow_id);
  void record_drop_host(std::uint64_t flow_id);

  std::uint64_t& counter(const std::string& name) { return counters_[name]; }
  std::uint64_t counter_value(const std::string& name) const;

  const FlowStats* flow(std::uint64_t id) const;
  const std::map<std::uint64_t, FlowStats>& flows() const { return flows_; }
  const LatencyHistogram* histogram(std::uint64_t flow_id) const;
  const std::map<std::string, std::uint64_t>& counters() const { return counters_; }

  // Delivered wire bytes of a flow inside [t0, t1), summed over whole windows.
  std::uint64_t delivered_bytes_between(std::uint64_t flow_id, SimTime t0,
                                        SimTime t1) const;
  // Fraction of the line rate used by the flow inside [t0, t1).
  double goodput_fraction(std::uint64_t flow_id, SimTime t0, SimTime t1,
                          std::uint64_t line_bps) const;
  double loss_rate(std::uint64_t flow_id) const;  // NaN when sent == 0

  void add_event_row(EventRow row) { events_.push_back(std::move(row)); }
  std::vector<EventRow>& event_rows() { return events_; }

  void set_run_end(SimTime t) { run_end_ = t; }
  SimTime run_end() const { return run_end_; }
  SimTime window_ns() const { return window_ns_; }

  // Writers refuse to leave a partial file behind: output goes to a
  // temporary in the same directory and is renamed into place.
  void export_flows_csv(const std::string& path) const;
  void export_latency_csv(const std::string& path) const;
  void export_series_csv(const std::string& path) const;
  void export_events_csv(const std::string& path) const;
  void export_all(const std::string& dir) const;

 private:
  SimTime window_ns_;
  SimTime run_end_ = 0;
  std::map<std::uint64_t, FlowStats> flows_;
  std::map<std::uint64_t, LatencyHistogram> latency_;
  std::map<std::uint64_t, std::map<std::int64_t, std::uint64_t>> series_;
  std::map<std::string, std::uint64_t> counters_;
  std::vector<EventRow> events_;
};

}  // namespace fabsim
