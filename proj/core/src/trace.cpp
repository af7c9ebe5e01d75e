#include "sinrsim/trace.hpp"

#include <cstdio>
#include <fstream>

#include "sinrsim/errors.hpp"

namespace sinrsim {

std::string to_string(TraceEventKind kind) {
  switch (kind) {
    case TraceEventKind::transmit: return "transmit";
    case TraceEventKind::receive: return "receive";
    case TraceEventKind::quit_color: return "quit-color";
    case TraceEventKind::wake: return "wake";
    case TraceEventKind::inform: return "inform";
    case TraceEventKind::phase_boundary: return "phase-boundary";
  }
  return "?";
}

std::string Trace::to_csv() const {
  std::string out = "round,station,event,detail1,detail2\n";
  char buf[160];
  for (const auto& e : events_) {
    std::snprintf(buf, sizeof buf, "%lld,%d,%s,%.17g,%.17g\n",
                  static_cast<long long>(e.round), e.station,
                  to_string(e.event).c_str(), e.detail1, e.detail2);
    out += buf;
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Trace::hash() const { return fnv1a64(to_csv()); }

void Trace::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open '" + path + "' for writing");
  out << to_csv();
}

}  // namespace sinrsim
