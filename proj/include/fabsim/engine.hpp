#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "fabsim/error.hpp"
#include "fabsim/time.hpp"

namespace fabsim {

using EventId = std::uint64_t;

struct RunSummary {
  std::uint64_t events_processed = 0;
  SimTime final_time = 0;
};

// Single-threaded discrete-event loop. Events fire in (fire_at, seq) order;
// seq is the global scheduling counter, so ties resolve in scheduling order
// no matter how the underlying heap breaks them.
class Engine {
 public:
  EventId schedule_at(SimTime fire_at, std::string who, std::function<void()> fn) {
    if (fire_at < now_)
      throw ConfigError("schedule in the past (t=" + std::to_string(fire_at) +
                        " < now=" + std::to_string(now_) + ") by " + who);
    const EventId id = next_seq_++;
    heap_.push(HeapItem{fire_at, id});
    pending_.emplace_back(Pending{fire_at, id, std::move(who), std::move(fn)});
    ++live_;
    ++scheduled_;
    if (pending_.size() > 1024 && pending_.size() > live_ * 2) compact();
    return id;
  }

  EventId schedule_in(SimTime delay, std::string who, std::function<void()> fn) {
    return schedule_at(now_ + delay, std::move(who), std::move(fn));
  }

  void cancel(EventId id) {
    Pending* p = find_pending(id);
    if (p && p->fn) {
      p->fn = nullptr;
      --live_;
      ++cancelled_count_;
    }
  }

  SimTime now() const { return now_; }

  RunSummary run_until(SimTime t_end) {
    while (!heap_.empty() && heap_.top().at <= t_end) {
      const HeapItem top = heap_.top();
      heap_.pop();
      Pending* ev = find_pending(top.seq);
      if (ev == nullptr || !ev->fn) continue;  // cancelled
      now_ = top.at;
      auto fn = std::move(ev->fn);
      const std::string who = std::move(ev->who);
      ev->fn = nullptr;
      --live_;
      ++processed_;
      try {
        fn();
      } catch (ModelError& e) {
        throw ModelError("at t=" + std::to_string(now_) + " in '" + who +
                         "': " + e.what());
      }
    }
    if (t_end > now_) now_ = t_end;
    return RunSummary{processed_, now_};
  }

  std::uint64_t events_scheduled() const { return scheduled_; }
  std::uint64_t events_processed() const { return processed_; }
  std::uint64_t events_cancelled() const { return cancelled_count_; }
  std::uint64_t events_pending() const { return live_; }

 private:
  struct HeapItem {
    SimTime at;
    EventId seq;
    bool operator>(const HeapItem& o) const {
      if (at != o.at) return at > o.at;
      return seq > o.seq;
    }
  };
  struct Pending {
    SimTime at = 0;
    EventId seq = 0;
    std::string who;
    std::function<void()> fn;
  };

  // pending_ stays sorted by seq (append order, preserved by compact).
  Pending* find_pending(EventId seq) {
    auto it = std::lower_bound(
        pending_.begin(), pending_.end(), seq,
        [](const Pending& p, EventId s) { return p.seq < s; });
    if (it == pending_.end() || it->seq != seq) return nullptr;
    return &*it;
  }

  void compact() {
    std::vector<Pending> keep;
    keep.reserve(live_ + 16);
    for (auto& p : pending_)
      if (p.fn) keep.push_back(std::move(p));
    pending_ = std::move(keep);
  }

  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap_;
  std::vector<Pending> pending_;
  SimTime now_ = 0;
  EventId next_seq_ = 0;
  std::uint64_t scheduled_ = 0, processed_ = 0, cancelled_count_ = 0;
  std::uint64_t live_ = 0;
};

}  // namespace fabsim
