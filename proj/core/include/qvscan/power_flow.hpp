#pragma once

#include <array>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "qvscan/network.hpp"
#include "qvscan/ybus.hpp"

namespace qvscan {

struct SolverOptions {
  double tol = 1e-8;          // per-unit mismatch tolerance
  int max_iter = 30;          // Newton iteration cap per inner solve
  int max_switch_rounds = 10; // PV<->PQ re-solve cap
  bool flat_start = true;
  bool allow_switchback = true;
};

enum class SolveStatus {
  converged,
  iteration_limit,
  switch_limit,
  singular_jacobian,
  diverged,
};

const char* to_string(SolveStatus status);

enum class LimitEnd { at_min, at_max };

/// One pin or release of a regulating unit, in the order it happened.
struct SwitchEvent {
  int round = 0;
  bool is_hvdc = false;
  int unit = 0;  // generator index, or hvdc link index
  int end = 0;   // 0 = from, 1 = to (hvdc only)
  bool pinned = true;
  LimitEnd limit = LimitEnd::at_max;
};

/// Steady-state solution. Vectors follow network order (buses, generators,
/// links). Non-convergence is data, not failure: the Q-V sweep reads it as
/// voltage collapse. A structurally unsolvable system is reported as
/// singular_jacobian, distinct from running out of iterations.
struct PowerFlowSolution {
  bool converged = false;
  SolveStatus status = SolveStatus::diverged;
  int iterations = 0;     // Newton steps, summed over switch rounds
  int switch_rounds = 0;
  double max_mismatch = 0.0;  // per unit

  std::vector<double> v_mag;  // per unit
  std::vector<double> v_ang;  // radians

  std::vector<double> gen_p;  // MW; p_set except slack / island references
  std::vector<double> gen_q;  // MVAr
  std::map<int, LimitEnd> gen_at_limit;  // generator index -> binding limit

  std::vector<std::array<double, 2>> hvdc_q;          // MVAr {from, to}
  std::map<std::pair<int, int>, LimitEnd> hvdc_at_limit;  // {link, end}

  std::vector<BusKind> effective_kind;  // bus role after switching
  std::vector<SwitchEvent> switch_log;
};

/// The boundary behaviour of one converter end as seen by the AC equations.
struct HvdcEndBoundary {
  int bus = 0;                // bus id
  double p_inj_mw = 0.0;      // signed injection into the bus
  bool regulates = false;     // true for p_v ends
  double q_inj_mvar = 0.0;    // fixed-injection ends only
  double v_set = 1.0;         // regulating ends only
  double q_min_mvar = 0.0;
  double q_max_mvar = 0.0;
};

struct HvdcBoundary {
  HvdcEndBoundary from;
  HvdcEndBoundary to;
};

/// Translates a link into per-end boundary conditions. p_pf ends become
/// constant-power injections with Q = P * sqrt(1 - pf^2) / pf signed by the
/// lead/lag convention; p_v ends become voltage regulators with bounded Q.
/// Throws std::invalid_argument when a p_v end sits on the slack bus.
HvdcBoundary embed_hvdc(const Network& network, const HvdcLink& link);

/// Applies reactive-limit switching to a solved operating point: units whose
/// allocated Q lies beyond a limit are pinned there and their bus demoted to
/// pq once no regulator remains; when switchback is allowed, pinned units
/// whose voltage indicates a strictly interior regulating Q are released,
/// at most once per unit per solve (`released` carries that hysteresis
/// state across rounds). Units regulating above the bus target setpoint pin
/// at q_max, below it at q_min; that rule lets a Q-V probe coexist with
/// local machines. Updates the solution's pin sets, effective kinds and
/// switch log in place, returns whether anything changed.
bool check_limits_and_switch(const Network& network, PowerFlowSolution& solution,
                             const SolverOptions& options, int round = 0,
                             std::set<std::pair<int, int>>* released = nullptr);

/// Newton-Raphson in polar form with per-iteration sparse LU, generator
/// reactive-limit enforcement and HVDC boundary handling. Never throws for
/// non-convergence. AC islands created by converting a branch to DC stay
/// solvable: the first regulating unit of an island anchors its angle and
/// absorbs its power imbalance.
PowerFlowSolution solve(const Network& network, const SolverOptions& options = {},
                        const PowerFlowSolution* warm_start = nullptr);

/// Mismatch model for a frozen bus-type assignment; exposes the vector the
/// solver drives to zero and its analytic Jacobian so they can be checked
/// against finite differences. State layout: angles of every non-slack,
/// non-reference bus, then magnitudes of every unregulated bus.
class PolarSystem {
 public:
  /// Builds the system for the given network, with pin states (and HVDC
  /// boundary values) taken from `pins` when provided.
  PolarSystem(const Network& network, const PowerFlowSolution* pins = nullptr);
  ~PolarSystem();
  PolarSystem(PolarSystem&&) noexcept;
  PolarSystem& operator=(PolarSystem&&) noexcept;

  int size() const;
  Eigen::VectorXd pack(const std::vector<double>& v_mag, const std::vector<double>& v_ang) const;
  void unpack(const Eigen::VectorXd& state, std::vector<double>& v_mag,
              std::vector<double>& v_ang) const;
  Eigen::VectorXd mismatch(const Eigen::VectorXd& state) const;
  Eigen::SparseMatrix<double> jacobian(const Eigen::VectorXd& state) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  friend PowerFlowSolution solve(const Network&, const SolverOptions&, const PowerFlowSolution*);
};

/// Power entering a branch at each end, in MW/MVAr.
struct BranchFlow {
  double p_from = 0.0;
  double q_from = 0.0;
  double p_to = 0.0;
  double q_to = 0.0;
};

std::vector<BranchFlow> branch_flows(const Network& network, const PowerFlowSolution& solution);

/// MW / MVAr bookkeeping at a solved point; generation should cover load
/// plus losses to within n_bus * tol * mva_base.
struct PowerBalance {
  double generation_mw = 0.0;
  double load_mw = 0.0;
  double branch_loss_mw = 0.0;
  double shunt_mw = 0.0;       // consumption (g_shunt)
  double hvdc_loss_mw = 0.0;   // loss_factor * p_set
  double generation_mvar = 0.0;  // includes HVDC converter reactive output
  double load_mvar = 0.0;
  double branch_mvar = 0.0;    // net branch consumption, charging included
  double shunt_mvar = 0.0;     // consumption (-b_shunt V^2)
  double residual_mw = 0.0;
  double residual_mvar = 0.0;
};

PowerBalance power_balance(const Network& network, const PowerFlowSolution& solution);

}  // namespace qvscan
