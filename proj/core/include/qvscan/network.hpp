#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvscan {

enum class BusKind { slack, pv, pq };
enum class HvdcScheme { p_pf, p_v };

const char* to_string(BusKind kind);
const char* to_string(HvdcScheme scheme);

/// One electrical node. Loads are in MW/MVAr, shunts in per-unit admittance
/// at the system MVA base, voltages in per-unit / radians.
struct Bus {
  int id = 0;
  BusKind kind = BusKind::pq;
  double v_mag = 1.0;
  double v_ang = 0.0;
  double base_kv = 1.0;
  int zone = 1;
  double p_load = 0.0;
  double q_load = 0.0;
  double g_shunt = 0.0;
  double b_shunt = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;

  friend bool operator==(const Bus&, const Bus&) = default;
};

/// A voltage-regulating machine. Fictitious generators are the probes used
/// by Q-V sweeps; they carry unbounded reactive limits and may sit on any
/// non-slack bus.
struct Generator {
  int bus = 0;
  double p_set = 0.0;  // MW
  double v_set = 1.0;  // per unit
  double q_min = 0.0;  // MVAr
  double q_max = 0.0;  // MVAr
  bool in_service = true;
  bool fictitious = false;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Pi-model series element. `tap` is the off-nominal ratio on the from side
/// (1.0 = none), `shift` a phase shift in radians, `b` the total line
/// charging susceptance.
struct Branch {
  int from_bus = 0;
  int to_bus = 0;
  double r = 0.0;
  double x = 0.0;
  double b = 0.0;
  double tap = 1.0;
  double shift = 0.0;
  double rating = 0.0;  // MVA, informational
  bool in_service = true;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// A VSC-HVDC link: one converter per end joined by a DC line. `p_set` MW
/// leave the from (sending) bus; `p_set * (1 - loss_factor)` arrive at the
/// to bus.
///
/// Under p_pf each end is a constant-power injection. Power factors live in
/// (0, 1]; the leading flags fix the reactive sign. The convention is role
/// based: the sending end behaves as a load (lagging = absorbs Q from its
/// bus), the receiving end as a source (lagging = delivers Q to its bus).
///
/// Under p_v each end holds its bus at v_set_* while its reactive output
/// stays inside [q_min_*, q_max_*]; at a binding limit the end pins and
/// releases voltage control, exactly like a generator.
struct HvdcLink {
  int from_bus = 0;
  int to_bus = 0;
  double p_set = 0.0;       // MW
  double loss_factor = 0.0; // fraction of p_set lost in the DC line
  HvdcScheme scheme = HvdcScheme::p_pf;

  // p_pf scheme
  double pf_from = 1.0;
  double pf_to = 1.0;
  bool leading_from = false;
  bool leading_to = false;

  // p_v scheme
  double v_set_from = 1.0;
  double v_set_to = 1.0;
  double q_min_from = 0.0;  // MVAr
  double q_max_from = 0.0;
  double q_min_to = 0.0;
  double q_max_to = 0.0;

  friend bool operator==(const HvdcLink&, const HvdcLink&) = default;
};

/// The solvable case. Immutable by convention once built: analyses that
/// modify topology (scenario construction, Q-V probes) work on copies, so a
/// Network is safe to share across concurrent readers.
struct Network {
  double mva_base = 100.0;
  std::string name;
  std::vector<Bus> buses;
  std::vector<Generator> generators;
  std::vector<Branch> branches;
  std::vector<HvdcLink> hvdc_links;
  std::map<int, std::string> zones;  // zone id -> human label

  /// Position of a bus id in `buses`, or -1.
  int bus_index(int bus_id) const;
  const Bus* find_bus(int bus_id) const;
  Bus* find_bus(int bus_id);

  /// First in-service branch joining the two buses, either orientation; -1
  /// if none.
  int find_branch(int bus_a, int bus_b) const;

  friend bool operator==(const Network&, const Network&) = default;
};

/// One failed validation rule. `buses` names the offending bus ids when the
/// rule concerns specific locations.
struct Violation {
  std::string code;
  std::string message;
  std::vector<int> buses;
};

/// Checks every structural invariant: cross-references resolve, exactly one
/// slack, positive voltages and base kV, generator/HVDC limit ordering,
/// regulating setpoint agreement per bus, and connectivity of the in-service
/// graph (branches and HVDC links both count as edges). Returns the empty
/// vector iff the network is clean. Never throws.
std::vector<Violation> validate(const Network& network);

}  // namespace qvscan
