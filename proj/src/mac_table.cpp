#include "fabsim/mac_table.hpp"

namespace fabsim {

std::size_t MacTable::bucket_of(const MacAddress& addr) const {
  std::uint64_t key = 0;
  for (int idx : cfg_.key_octets) key = (key << 8) | addr.octets[std::size_t(idx)];
  return std::size_t(key % cfg_.bucket_count);
}

bool MacTable::has_room(const MacAddress& addr) {
  if (cfg_.mode == MacTableConfig::Mode::Ideal)
    return dynamic_count_ < cfg_.capacity;
  return bucket_load_[bucket_of(addr)] < cfg_.bucket_depth;
}

void MacTable::note_insert(const MacAddress& addr) {
  ++dynamic_count_;
  if (cfg_.mode == MacTableConfig::Mode::HashBucket) ++bucket_load_[bucket_of(addr)];
}

void MacTable::note_erase(const MacAddress& addr) {
  --dynamic_count_;
  if (cfg_.mode == MacTableConfig::Mode::HashBucket) --bucket_load_[bucket_of(addr)];
}

MacTable::LearnResult MacTable::learn(const MacAddress& addr, std::uint16_t vlan,
                                      int port, SimTime now) {
  auto it = entries_.find(Key{addr, vlan});
  if (it != entries_.end()) {
    if (it->second.is_static) return LearnResult::Refreshed;
    it->second.last_seen = now;
    if (it->second.port != port) {
      it->second.port = port;
      ++moves_;
      return LearnResult::Moved;
    }
    return LearnResult::Refreshed;
  }
  if (!has_room(addr)) {
    ++refused_;  // silently refused: the measured pathology, not a fault
    return LearnResult::Refused;
  }
  entries_.emplace(Key{addr, vlan}, Entry{port, now, false});
  note_insert(addr);
  return LearnResult::Inserted;
}

void MacTable::add_static(const MacAddress& addr, std::uint16_t vlan, int port) {
  auto it = entries_.find(Key{addr, vlan});
  if (it != entries_.end() && !it->second.is_static) note_erase(addr);
  entries_.insert_or_assign(Key{addr, vlan}, Entry{port, 0, true});
}

std::optional<int> MacTable::lookup(const MacAddress& addr,
                                    std::uint16_t vlan) const {
  auto it = entries_.find(Key{addr, vlan});
  if (it == entries_.end()) return std::nullopt;
  return it->second.port;
}

std::vector<std::pair<MacAddress, std::uint16_t>> MacTable::age_scan(SimTime now) {
  std::vector<Key> evicted;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (!it->second.is_static && now - it->second.last_seen > cfg_.aging_time) {
      evicted.push_back(it->first);
      note_erase(it->first.first);
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
  return evicted;
}

void MacTable::clear_dynamic() {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (!it->second.is_static) {
      note_erase(it->first.first);
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace fabsim
