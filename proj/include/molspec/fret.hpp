#pragma once

#include <vector>

#include "molspec/model.hpp"
#include "molspec/series.hpp"

namespace molspec {

struct TransferRates {
  double kappa_et = 0.0;             // direct rate, cavity ignored
  double j_cavity_dd = 0.0;          // cavity-modified dipole-dipole coefficient of P_D(0) e^{-2 gamma_D t}
  double j_cavity_pure_gamma = 0.0;  // purely cavity-mediated, P_D(0) e^{-2 gamma_D t} channel
  double j_cavity_pure_kappa = 0.0;  // purely cavity-mediated, P_D(0) e^{-2 kappa t} channel
  TruncationReport truncation_report;
  std::vector<std::string> flags;

  double j_cavity_pure() const { return j_cavity_pure_gamma + j_cavity_pure_kappa; }
};

struct PumpProbeTrace {
  std::vector<double> times;
  std::vector<double> p_donor;
  std::vector<double> p_acceptor;
  std::vector<double> p_donor_uncoupled;   // p_d0 e^{-2 gamma_D t}
  std::vector<double> p_acceptor_tangent;  // kappa_ET p_d0 t
  double kappa_et = 0.0;
  TruncationReport truncation_report;
  std::vector<std::string> flags;
};

// Shared Lorentzian brackets of the cavity-mediated rates for one (n1, n4).
// The closed forms pair each cavity bracket with its conjugate, so the
// conjugates are derived from one evaluation instead of being re-typed.
struct CavityBrackets {
  cplx donor_acceptor;  // (gamma_A - gamma_D + n1 Gamma_D + n4 Gamma_A) + i(Delta - n1 nu_D - n4 nu_A)
  cplx b1, b2, b3, b4;  // b3 = conj(b1), b4 = conj(b2)
  cplx acceptor_cavity_gamma;  // (gamma_A + kappa - 2 gamma_D + n4 Gamma_A) + i(Delta - Delta_c - n4 nu_A)
  cplx acceptor_cavity_kappa;  // (gamma_A - kappa + n4 Gamma_A) + i(Delta - Delta_c - n4 nu_A)
};

CavityBrackets cavity_brackets(const FretSpec& spec, int n1, int n4);

double fret_rate_direct(const FretSpec& spec, const TruncationPolicy& policy, TruncationReport* report = nullptr,
                        std::vector<std::string>* flags = nullptr);

TransferRates fret_rate_cavity(const FretSpec& spec, const TruncationPolicy& policy);

PumpProbeTrace pump_probe_dynamics(const FretSpec& spec, double p_d0, const std::vector<double>& times,
                                   const TruncationPolicy& policy);

}  // namespace molspec
