#pragma once

#include <complex>

#include <Eigen/SparseCore>

#include "qvscan/network.hpp"

namespace qvscan {

/// Complex nodal admittance matrix, per unit, rows/columns in network bus
/// order. HVDC links contribute nothing: they enter the power flow as
/// boundary injections, not admittances.
struct YbusMatrix {
  int dimension = 0;
  Eigen::SparseMatrix<std::complex<double>> matrix;
};

/// Standard pi-model assembly with off-nominal tap on the from side and
/// phase shift; out-of-service branches are skipped, bus shunts land on the
/// diagonal.
YbusMatrix build_ybus(const Network& network);

}  // namespace qvscan
