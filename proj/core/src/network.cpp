#include "qvscan/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace qvscan {

const char* to_string(BusKind kind) {
  switch (kind) {
    case BusKind::slack: return "slack";
    case BusKind::pv: return "pv";
    case BusKind::pq: return "pq";
  }
  return "?";
}

const char* to_string(HvdcScheme scheme) {
  return scheme == HvdcScheme::p_pf ? "p_pf" : "p_v";
}

int Network::bus_index(int bus_id) const {
  for (std::size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == bus_id) return static_cast<int>(i);
  return -1;
}

const Bus* Network::find_bus(int bus_id) const {
  int i = bus_index(bus_id);
  return i < 0 ? nullptr : &buses[i];
}

Bus* Network::find_bus(int bus_id) {
  int i = bus_index(bus_id);
  return i < 0 ? nullptr : &buses[i];
}

int Network::find_branch(int bus_a, int bus_b) const {
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Branch& br = branches[i];
    if (!br.in_service) continue;
    if ((br.from_bus == bus_a && br.to_bus == bus_b) ||
        (br.from_bus == bus_b && br.to_bus == bus_a))
      return static_cast<int>(i);
  }
  return -1;
}

namespace {

void add_violation(std::vector<Violation>& out, std::string code, std::string message,
                   std::vector<int> buses = {}) {
  out.push_back({std::move(code), std::move(message), std::move(buses)});
}

std::string join_ids(const std::vector<int>& ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << ", ";
    os << ids[i];
  }
  return os.str();
}

}  // namespace

std::vector<Violation> validate(const Network& net) {
  std::vector<Violation> v;

  std::set<int> bus_ids;
  std::vector<int> slack_ids;
  for (const Bus& b : net.buses) {
    if (!bus_ids.insert(b.id).second)
      add_violation(v, "duplicate_bus", "bus id " + std::to_string(b.id) + " declared twice", {b.id});
    if (!(b.v_mag > 0.0))
      add_violation(v, "bad_voltage", "bus " + std::to_string(b.id) + " has non-positive v_mag", {b.id});
    if (!(b.base_kv > 0.0))
      add_violation(v, "bad_base_kv", "bus " + std::to_string(b.id) + " has non-positive base_kv", {b.id});
    if (!net.zones.count(b.zone))
      add_violation(v, "undeclared_zone",
                    "bus " + std::to_string(b.id) + " references undeclared zone " + std::to_string(b.zone),
                    {b.id});
    if (b.kind == BusKind::slack) slack_ids.push_back(b.id);
  }
  if (slack_ids.empty())
    add_violation(v, "no_slack", "network has no slack bus");
  else if (slack_ids.size() > 1)
    add_violation(v, "multiple_slack", "more than one slack bus: " + join_ids(slack_ids), slack_ids);

  if (!(net.mva_base > 0.0)) add_violation(v, "bad_mva_base", "mva_base must be positive");

  bool any_gen = false;
  // Regulating setpoints must agree per bus: one bus, one controlled voltage.
  std::map<int, double> reg_v_set;
  for (std::size_t i = 0; i < net.generators.size(); ++i) {
    const Generator& g = net.generators[i];
    const Bus* bus = net.find_bus(g.bus);
    if (!bus) {
      add_violation(v, "bad_reference",
                    "generator " + std::to_string(i) + " references undeclared bus " + std::to_string(g.bus),
                    {g.bus});
      continue;
    }
    if (g.q_min > g.q_max)
      add_violation(v, "bad_q_limits",
                    "generator " + std::to_string(i) + " at bus " + std::to_string(g.bus) + " has q_min > q_max",
                    {g.bus});
    if (!g.in_service) continue;
    any_gen = true;
    if (!g.fictitious && bus->kind == BusKind::pq)
      add_violation(v, "generator_at_pq_bus",
                    "in-service generator at bus " + std::to_string(g.bus) + " but the bus is pq",
                    {g.bus});
    auto [it, fresh] = reg_v_set.emplace(g.bus, g.v_set);
    if (!fresh && std::abs(it->second - g.v_set) > 1e-9)
      add_violation(v, "setpoint_conflict",
                    "units at bus " + std::to_string(g.bus) + " regulate to different voltage setpoints",
                    {g.bus});
  }
  if (!any_gen) add_violation(v, "no_generator", "network has no in-service generator");

  // Exactly one in-service machine may own the slack bus; it supplies the
  // angle reference and absorbs the system balance.
  for (int sid : slack_ids) {
    int count = 0;
    for (const Generator& g : net.generators)
      if (g.in_service && !g.fictitious && g.bus == sid) ++count;
    if (count != 1)
      add_violation(v, "slack_machine",
                    "slack bus " + std::to_string(sid) + " must host exactly one in-service generator, has " +
                        std::to_string(count),
                    {sid});
  }

  for (std::size_t i = 0; i < net.branches.size(); ++i) {
    const Branch& br = net.branches[i];
    for (int end : {br.from_bus, br.to_bus})
      if (!net.find_bus(end))
        add_violation(v, "bad_reference",
                      "branch " + std::to_string(i) + " references undeclared bus " + std::to_string(end),
                      {end});
    if (br.from_bus == br.to_bus)
      add_violation(v, "self_loop", "branch " + std::to_string(i) + " joins bus " +
                    std::to_string(br.from_bus) + " to itself", {br.from_bus});
    if (br.r == 0.0 && br.x == 0.0)
      add_violation(v, "zero_impedance", "branch " + std::to_string(i) + " (" +
                    std::to_string(br.from_bus) + "-" + std::to_string(br.to_bus) + ") has zero impedance",
                    {br.from_bus, br.to_bus});
  }

  for (std::size_t i = 0; i < net.hvdc_links.size(); ++i) {
    const HvdcLink& l = net.hvdc_links[i];
    for (int end : {l.from_bus, l.to_bus})
      if (!net.find_bus(end))
        add_violation(v, "bad_reference",
                      "hvdc link " + std::to_string(i) + " references undeclared bus " + std::to_string(end),
                      {end});
    if (l.from_bus == l.to_bus)
      add_violation(v, "self_loop", "hvdc link " + std::to_string(i) + " joins bus " +
                    std::to_string(l.from_bus) + " to itself", {l.from_bus});
    if (l.p_set < 0.0)
      add_violation(v, "bad_hvdc", "hvdc link " + std::to_string(i) +
                    " has negative p_set; direction is fixed by (from, to)", {l.from_bus, l.to_bus});
    if (!(l.loss_factor >= 0.0 && l.loss_factor < 1.0))
      add_violation(v, "bad_hvdc", "hvdc link " + std::to_string(i) + " loss_factor outside [0, 1)",
                    {l.from_bus, l.to_bus});
    if (l.scheme == HvdcScheme::p_pf) {
      if (!(l.pf_from > 0.0 && l.pf_from <= 1.0) || !(l.pf_to > 0.0 && l.pf_to <= 1.0))
        add_violation(v, "bad_hvdc", "hvdc link " + std::to_string(i) + " power factor outside (0, 1]",
                      {l.from_bus, l.to_bus});
    } else {
      if (l.q_min_from > l.q_max_from || l.q_min_to > l.q_max_to)
        add_violation(v, "bad_hvdc", "hvdc link " + std::to_string(i) + " has q_min > q_max at one end",
                      {l.from_bus, l.to_bus});
    }
  }

  // Connectivity of the in-service graph. HVDC links carry power, so they
  // count as edges here; AC-only islanding is a solver concern, not a data
  // defect.
  if (!net.buses.empty()) {
    std::map<int, std::vector<int>> adj;
    for (const Branch& br : net.branches)
      if (br.in_service && net.find_bus(br.from_bus) && net.find_bus(br.to_bus)) {
        adj[br.from_bus].push_back(br.to_bus);
        adj[br.to_bus].push_back(br.from_bus);
      }
    for (const HvdcLink& l : net.hvdc_links)
      if (net.find_bus(l.from_bus) && net.find_bus(l.to_bus)) {
        adj[l.from_bus].push_back(l.to_bus);
        adj[l.to_bus].push_back(l.from_bus);
      }
    std::set<int> seen;
    std::queue<int> frontier;
    frontier.push(net.buses.front().id);
    seen.insert(net.buses.front().id);
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop();
      auto it = adj.find(cur);
      if (it == adj.end()) continue;
      for (int nxt : it->second)
        if (seen.insert(nxt).second) frontier.push(nxt);
    }
    std::vector<int> stranded;
    for (const Bus& b : net.buses)
      if (!seen.count(b.id)) stranded.push_back(b.id);
    if (!stranded.empty())
      add_violation(v, "disconnected",
                    "buses not connected to the rest of the network: " + join_ids(stranded), stranded);
  }

  return v;
}

}  // namespace qvscan
