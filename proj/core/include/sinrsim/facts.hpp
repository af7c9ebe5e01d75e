#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sinrsim/sinr.hpp"

namespace sinrsim {

struct BoundCheck {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
};

/// Exact probability that exactly one station of the vector transmits,
/// checked against the [s/2, s] envelope for s = sum(p) <= 1/2.
/// Throws PreconditionError when sum(p) > 1/2 or any p outside [0,1].
BoundCheck check_fact_sum(const std::vector<double>& p);

/// Exact probability that no station transmits, checked against the
/// (1/4)^sum(p) lower bound for p_i <= 1/2 each.
BoundCheck check_fact_notransmit(const std::vector<double>& p);

/// Randomized checks of the deterministic reception implications:
///  - near reception: nearest transmitter at distance x <= 2^(-1/alpha) and
///    interference at most N/(2x^alpha) forces a decode of that transmitter;
///  - margin reception: interference at most N*alpha*x forces a decode from
///    distance 1-x;
///  - proxy coverage: a transmission decoded by every station within
///    1-eps/2 is decoded by all neighbors of all stations within eps/2.
/// Each instance is counted only when its hypothesis holds; failures carry a
/// serialized description for replay.
struct ReceptionFactsReport {
  std::int64_t near_checked = 0;
  std::int64_t near_failures = 0;
  std::int64_t margin_checked = 0;
  std::int64_t margin_failures = 0;
  std::int64_t proxy_checked = 0;
  std::int64_t proxy_failures = 0;
  std::string first_failure;

  bool pass() const {
    return near_failures == 0 && margin_failures == 0 && proxy_failures == 0;
  }
};

ReceptionFactsReport check_reception_facts(std::uint64_t seed,
                                           std::int64_t instances_per_fact);

}  // namespace sinrsim
