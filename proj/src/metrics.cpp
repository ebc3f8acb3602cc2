#include "fabsim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fabsim/error.hpp"

namespace fabsim {

void LatencyHistogram::record(SimTime latency_ns) {
  if (latency_ns < 0) throw ModelError("negative latency recorded");
  ++bins[latency_ns / kLatencyBinNs];
  ++total;
  latency_sum_ns += latency_ns;
}

void MetricSet::register_flow(std::uint64_t flow_id, const MacAddress& src,
                              const MacAddress& dst) {
  auto& f = flows_[flow_id];
  f.src = src;
  f.dst = dst;
}

void MetricSet::record_send(std::uint64_t flow_id) { ++flows_[flow_id].sent; }

void MetricSet::record_delivery(std::uint64_t flow_id, std::uint32_t wire_bytes,
                                SimTime latency_ns, SimTime now,
                                std::uint64_t seq, bool measure_latency) {
  auto& f = flows_[flow_id];
  ++f.delivered;
  f.delivered_wire_bytes += wire_bytes;
  if (f.any_delivered && seq <= f.highest_seq) ++f.reorders;
  if (!f.any_delivered || seq > f.highest_seq) f.highest_seq = seq;
  f.any_delivered = true;
  if (measure_latency) latency_[flow_id].record(latency_ns);
  series_[flow_id][now / window_ns_] += wire_bytes;
}

void MetricSet::record_drop_switch(std::uint64_t flow_id) {
  ++flows_[flow_id].dropped_switch;
}

void MetricSet::record_drop_host(std::uint64_t flow_id) {
  ++flows_[flow_id].dropped_host;
}

std::uint64_t MetricSet::counter_value(const std::string& name) const {
  auto it = counters_.find(name);
  return it == counters_.end() ? 0 : it->second;
}

const FlowStats* MetricSet::flow(std::uint64_t id) const {
  auto it = flows_.find(id);
  return it == flows_.end() ? nullptr : &it->second;
}

const LatencyHistogram* MetricSet::histogram(std::uint64_t flow_id) const {
  auto it = latency_.find(flow_id);
  return it == latency_.end() ? nullptr : &it->second;
}

std::uint64_t MetricSet::delivered_bytes_between(std::uint64_t flow_id,
                                                 SimTime t0, SimTime t1) const {
  auto it = series_.find(flow_id);
  if (it == series_.end()) return 0;
  const std::int64_t w0 = t0 / window_ns_;
  const std::int64_t w1 = t1 / window_ns_;
  std::uint64_t bytes = 0;
  for (auto lo = it->second.lower_bound(w0);
       lo != it->second.end() && lo->first < w1; ++lo)
    bytes += lo->second;
  return bytes;
}

double MetricSet::goodput_fraction(std::uint64_t flow_id, SimTime t0, SimTime t1,
                                   std::uint64_t line_bps) const {
  if (t1 <= t0) return 0.0;
  const double bytes = double(delivered_bytes_between(flow_id, t0, t1));
  const double secs = to_seconds(t1 - t0);
  return bytes * 8.0 / (secs * double(line_bps));
}

double MetricSet::loss_rate(std::uint64_t flow_id) const {
  const FlowStats* f = flow(flow_id);
  if (!f || f->sent == 0) return std::nan("");
  return double(f->dropped_switch + f->dropped_host) / double(f->sent);
}

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path)
      : path_(path), tmp_(path + ".tmp"), out_(tmp_, std::ios::binary) {
    if (!out_) throw ConfigError("cannot open for writing: " + path);
  }
  ~CsvWriter() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }
  std::ofstream& stream() { return out_; }
  void commit() {
    out_.flush();
    if (!out_) throw ConfigError("write failed: " + path_);
    out_.close();
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::string path_, tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace

void MetricSet::export_flows_csv(const std::string& path) const {
  CsvWriter w(path);
  w.stream() << "flow_id,src,dst,sent,delivered,dropped_switch,dropped_host\n";
  for (const auto& [id, f] : flows_) {
    w.stream() << id << ',' << f.src.str() << ',' << f.dst.str() << ',' << f.sent
               << ',' << f.delivered << ',' << f.dropped_switch << ','
               << f.dropped_host << '\n';
  }
  w.commit();
}

void MetricSet::export_latency_csv(const std::string& path) const {
  CsvWriter w(path);
  w.stream() << "flow_id,bin_start_ns,count\n";
  for (const auto& [id, h] : latency_) {
    if (h.bins.empty()) continue;
    const std::int64_t first = h.bins.begin()->first;
    const std::int64_t last = h.bins.rbegin()->first;
    // occupied range is emitted gap-free
    for (std::int64_t b = first; b <= last; ++b) {
      auto it = h.bins.find(b);
      const std::uint64_t count = it == h.bins.end() ? 0 : it->second;
      w.stream() << id << ',' << b * kLatencyBinNs << ',' << count << '\n';
    }
  }
  w.commit();
}

void MetricSet::export_series_csv(const std::string& path) const {
  CsvWriter w(path);
  w.stream() << "flow_id,window_start_ns,bytes\n";
  const std::int64_t last_window =
      run_end_ > 0 ? (run_end_ - 1) / window_ns_ : -1;
  for (const auto& [id, windows] : series_) {
    for (std::int64_t wi = 0; wi <= last_window; ++wi) {
      auto it = windows.find(wi);
      const std::uint64_t bytes = it == windows.end() ? 0 : it->second;
      w.stream() << id << ',' << wi * window_ns_ << ',' << bytes << '\n';
    }
  }
  w.commit();
}

void MetricSet::export_events_csv(const std::string& path) const {
  CsvWriter w(path);
  w.stream() << "event_id,state,t_lvl1,t_decision,t_built,t_cleared\n";
  auto cell = [](std::ofstream& o, SimTime t) {
    if (t >= 0) o << t;
  };
  // rows sorted by event id
  std::vector<const EventRow*> rows;
  rows.reserve(events_.size());
  for (const auto& e : events_) rows.push_back(&e);
  std::sort(rows.begin(), rows.end(), [](const EventRow* a, const EventRow* b) {
    return a->event_id < b->event_id;
  });
  for (const EventRow* e : rows) {
    w.stream() << e->event_id << ',' << e->state << ',';
    cell(w.stream(), e->t_lvl1);
    w.stream() << ',';
    cell(w.stream(), e->t_decision);
    w.stream() << ',';
    cell(w.stream(), e->t_built);
    w.stream() << ',';
    cell(w.stream(), e->t_cleared);
    w.stream() << '\n';
  }
  w.commit();
}

void MetricSet::export_all(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  export_flows_csv(dir + "/flows.csv");
  export_latency_csv(dir + "/latency.csv");
  export_series_csv(dir + "/series.csv");
  export_events_csv(dir + "/events.csv");
}

}  // namespace fabsim
