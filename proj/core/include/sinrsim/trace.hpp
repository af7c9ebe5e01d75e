#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sinrsim {

enum class TraceEventKind : std::uint8_t {
  transmit,
  receive,
  quit_color,
  wake,
  inform,
  phase_boundary,
};

std::string to_string(TraceEventKind kind);

/// One trace record. `station` is a station index; -1 marks global events
/// (phase boundaries). detail1/detail2 are event-specific:
///   transmit:        detail1 = transmit probability used
///   receive:         detail1 = sender index, detail2 = payload
///   quit_color:      detail1 = color
///   wake:            detail1 = wake round
///   inform:          detail1 = round first informed, detail2 = payload
///   phase_boundary:  detail1 = phase index
struct TraceEvent {
  std::int64_t round = 0;
  int station = -1;
  TraceEventKind event = TraceEventKind::transmit;
  double detail1 = 0.0;
  double detail2 = 0.0;
};

class Trace {
 public:
  void add(std::int64_t round, int station, TraceEventKind event,
           double detail1 = 0.0, double detail2 = 0.0) {
    events_.push_back({round, station, event, detail1, detail2});
  }

  const std::vector<TraceEvent>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  void clear() { events_.clear(); }

  /// Canonical CSV: header `round,station,event,detail1,detail2`, fixed
  /// decimal formatting, events in recording order (rounds nondecreasing).
  std::string to_csv() const;

  /// FNV-1a over the canonical CSV; the determinism fingerprint of a run.
  std::uint64_t hash() const;

  void write_csv(const std::string& path) const;

 private:
  std::vector<TraceEvent> events_;
};

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace sinrsim
