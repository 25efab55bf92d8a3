#pragma once

namespace qjump::special {

/// ln(n!) via log-Gamma, usable far beyond the n = 170 overflow of n!.
double log_factorial(int n);

/// Tricomi confluent hypergeometric function Psi(3; 2n+2; 2n), evaluated from
/// its integral representation
///   (1/Gamma(3)) int_0^inf t^2 (1+t)^{2n-2} exp(-2nt) dt
/// with the integrand normalized at its peak t* = 1/sqrt(n).
double tricomi_psi_3(int n);

/// Associated Laguerre polynomial L_k^{(alpha)}(x) by three-term recurrence.
double laguerre_assoc(int k, double alpha, double x);

/// Psi(3; 2n+2; 2n) through the Kummer transformation
///   Psi(3; 2n+2; 2n) = (2n-2)! / (2n)^{1+2n} * L_{2n-2}^{(-1-2n)}(2n).
double tricomi_psi_3_laguerre(int n);

}  // namespace qjump::special
