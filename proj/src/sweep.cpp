#include "pfgate/sweep.hpp"

#include <limits>

#include <omp.h>

#include "pfgate/errors.hpp"

namespace pfgate::sweep {

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

double static_zz_or_nan(const CircuitParams& params) {
  try {
    const HilbertSpace space = params.space();
    return zz_from_spectrum(diagonalize_and_label(build_static_hamiltonian(params, space), space));
  } catch (const AmbiguousLabeling&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<double> static_zz(const CircuitParams& params, const std::vector<double>& couplers,
                              Exec exec) {
  const int n = static_cast<int>(couplers.size());
  std::vector<double> out(n);
  if (exec == Exec::Serial) {
    for (int i = 0; i < n; ++i) out[i] = static_zz_or_nan(params.at_coupler_frequency(couplers[i]));
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) out[i] = static_zz_or_nan(params.at_coupler_frequency(couplers[i]));
  }
  return out;
}

std::vector<PauliCoefficients> pauli_vs_amplitude(const CircuitParams& params,
                                                  const std::vector<double>& omegas, Exec exec) {
  const DrivenModel model(params);
  const int n = static_cast<int>(omegas.size());
  std::vector<PauliCoefficients> out(n);
  if (exec == Exec::Serial) {
    for (int i = 0; i < n; ++i) out[i] = driven_point(model, omegas[i]).pauli;
  } else {
    // Exceptions cannot cross the OpenMP region; collect the first and rethrow.
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < n; ++i) {
      try {
        out[i] = driven_point(model, omegas[i]).pauli;
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }
  return out;
}

std::vector<std::vector<PauliCoefficients>> pauli_grid(const CircuitParams& params,
                                                       const std::vector<double>& couplers,
                                                       const std::vector<double>& omegas,
                                                       Exec exec) {
  const int n = static_cast<int>(couplers.size());
  std::vector<std::vector<PauliCoefficients>> out(n);
  if (exec == Exec::Serial) {
    for (int i = 0; i < n; ++i)
      out[i] = pauli_vs_amplitude(params.at_coupler_frequency(couplers[i]), omegas, Exec::Serial);
  } else {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) {
      try {
        out[i] = pauli_vs_amplitude(params.at_coupler_frequency(couplers[i]), omegas, Exec::Serial);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }
  return out;
}

}  // namespace pfgate::sweep
