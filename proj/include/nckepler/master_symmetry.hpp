#pragma once

#include <vector>

#include <boost/rational.hpp>

#include "nckepler/bihamiltonian.hpp"
#include "nckepler/report.hpp"

namespace nckepler {

// All objects live in the Delaunay chart.

using Rational = boost::rational<long long>;

// X_h = m k^2 / I3^(h+3) d/dphi3
VectorField dynamical_symmetry(int h, const ReducedParams& rp);

struct MasterFamily {
  int i = 0;
  int mu = 0;
  VectorField Gamma;  // (1/(3+i)) sum N^mu I^(1-mu) (d/dI + d/dphi)
  ScalarField F;      // master integral as displayed (log branch at mu = 2)
};
MasterFamily master_symmetry(int i, int mu, const ReducedParams& rp);

// |iota_Gamma omega' + dF| (max component) at x
double pairing_residual(const MasterFamily& f, const PhasePoint& x, const ReducedParams& rp);

struct ConformalCoefficients {
  Rational alpha;  // L_Gamma P' = alpha P'
  Rational beta;   // L_Gamma P_1 = beta P_1
  Rational gamma;  // L_Gamma H' = gamma H'
};
ConformalCoefficients conformal_coefficients(int i);

enum class PotentialForm { corrected, as_printed };

struct RecursionFamily {
  int h = 0;
  VectorField X;       // m k^2 / I3^(3-h) d/dphi3
  BivectorField P;     // sum N^(h+1) I^h dI ^ dphi
  TwoForm omega;       // sum N^(h-1) I^h dI ^ dphi
  VectorField Gamma;   // (1/(3+i)) sum N^h I^(h+1) (d/dI + d/dphi)
  VectorField dH;      // covector components m k^2 / I3^(3-h) dI3
  ScalarField H;       // potential of dH (corrected) or the displayed H'_h
};
RecursionFamily recursion_family(int h, int i, const ReducedParams& rp,
                                 PotentialForm form = PotentialForm::corrected);

// Explicit ledger fractions and the (alpha, beta, gamma)-pattern forms.
enum class LedgerIdentity { gamma, x, p, omega, t, dh };
Rational ledger_fraction(LedgerIdentity id, int i, int h, int l);
Rational ledger_pattern(LedgerIdentity id, int i, int h, int l);
const char* to_string(LedgerIdentity id);

struct LedgerOptions {
  int i_max = 2;
  int h_max = 2;
  int l_max = 2;
  double tolerance = 1e-9;
};

// Ladder, dynamical symmetries, master integrals, conformal coefficients, family
// cross-checks and the Oevel-type identities, asserted at every point; displayed
// forms that disagree with the oracle are recorded as discrepancies.
VerificationReport oevel_ledger(const std::vector<PhasePoint>& delaunay_points, const ReducedParams& rp,
                                const LedgerOptions& opt = {});

}  // namespace nckepler
