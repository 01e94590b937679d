#pragma once

#include <vector>

#include "pfgate/circuit.hpp"
#include "pfgate/driven.hpp"

// Data-parallel sweep kernels. Each has a serial reference path and an OpenMP path that
// must agree exactly; the tests and the benchmark compare them.
namespace pfgate::sweep {

enum class Exec { Serial, Parallel };

void set_threads(int n);

// NaN when labeling fails at that point.
double static_zz_or_nan(const CircuitParams& params);

std::vector<double> static_zz(const CircuitParams& params, const std::vector<double>& couplers,
                              Exec exec);

// One static diagonalization, many amplitudes.
std::vector<PauliCoefficients> pauli_vs_amplitude(const CircuitParams& params,
                                                  const std::vector<double>& omegas, Exec exec);

// Row-major [coupler][omega] grid of Pauli coefficients.
std::vector<std::vector<PauliCoefficients>> pauli_grid(const CircuitParams& params,
                                                       const std::vector<double>& couplers,
                                                       const std::vector<double>& omegas, Exec exec);

}  // namespace pfgate::sweep
