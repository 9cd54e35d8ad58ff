#include "qvscan/ybus.hpp"

#include <vector>

namespace qvscan {

YbusMatrix build_ybus(const Network& net) {
  using cplx = std::complex<double>;
  const int n = static_cast<int>(net.buses.size());

  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(4 * net.branches.size() + net.buses.size());

  for (const Branch& br : net.branches) {
    if (!br.in_service) continue;
    int f = net.bus_index(br.from_bus);
    int t = net.bus_index(br.to_bus);
    cplx y_series = 1.0 / cplx(br.r, br.x);
    cplx y_charge(0.0, br.b / 2.0);
    cplx tap = std::polar(br.tap, br.shift);
    cplx tap2 = tap * std::conj(tap);  // |tap|^2
    entries.emplace_back(f, f, (y_series + y_charge) / tap2);
    entries.emplace_back(t, t, y_series + y_charge);
    entries.emplace_back(f, t, -y_series / std::conj(tap));
    entries.emplace_back(t, f, -y_series / tap);
  }

  for (int i = 0; i < n; ++i) {
    const Bus& b = net.buses[i];
    if (b.g_shunt != 0.0 || b.b_shunt != 0.0)
      entries.emplace_back(i, i, cplx(b.g_shunt, b.b_shunt));
  }

  YbusMatrix out;
  out.dimension = n;
  out.matrix.resize(n, n);
  out.matrix.setFromTriplets(entries.begin(), entries.end());
  out.matrix.makeCompressed();
  return out;
}

}  // namespace qvscan
