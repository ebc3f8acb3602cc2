#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fabsim/frame.hpp"
#include "fabsim/time.hpp"

namespace fabsim {

struct MacTableConfig {
  enum class Mode { Ideal, HashBucket };
  Mode mode = Mode::Ideal;
  // ideal mode: flat entry budget; insertions beyond it are silently refused
  std::size_t capacity = 8192;
  // hash-bucket mode: the bucket index is the key folded from the listed
  // octet positions (0..5, big-endian fold) modulo bucket_count. A bucket
  // holds at most bucket_depth entries; overflow is silently refused. This
  // reproduces the class of hardware whose table behaves well only when
  // specific address bytes vary.
  std::vector<int> key_octets = {4, 5};
  std::size_t bucket_count = 256;
  std::size_t bucket_depth = 70;
  SimTime aging_time = sec(300);
};

// Learned station table. Entries are keyed (address, vlan); static entries
// bypass both the capacity model and aging.
class MacTable {
 public:
  enum class LearnResult { Inserted, Refreshed, Moved, Refused };

  explicit MacTable(MacTableConfig cfg) : cfg_(std::move(cfg)) {}

  LearnResult learn(const MacAddress& addr, std::uint16_t vlan, int port,
                    SimTime now);
  void add_static(const MacAddress& addr, std::uint16_t vlan, int port);
  std::optional<int> lookup(const MacAddress& addr, std::uint16_t vlan) const;

  // Removes dynamic entries idle for longer than the aging time and
  // returns their keys.
  std::vector<std::pair<MacAddress, std::uint16_t>> age_scan(SimTime now);

  void clear_dynamic();
  std::size_t size() const { return entries_.size(); }
  std::size_t dynamic_size() const { return dynamic_count_; }
  std::uint64_t refused() const { return refused_; }
  std::uint64_t moves() const { return moves_; }
  std::size_t bucket_of(const MacAddress& addr) const;
  const MacTableConfig& config() const { return cfg_; }

 private:
  struct Entry {
    int port = 0;
    SimTime last_seen = 0;
    bool is_static = false;
  };
  using Key = std::pair<MacAddress, std::uint16_t>;

  bool has_room(const MacAddress& addr);
  void note_insert(const MacAddress& addr);
  void note_erase(const MacAddress& addr);

  MacTableConfig cfg_;
  std::map<Key, Entry> entries_;
  std::map<std::size_t, std::size_t> bucket_load_;
  std::size_t dynamic_count_ = 0;
  std::uint64_t refused_ = 0;
  std::uint64_t moves_ = 0;
};

}  // namespace fabsim
