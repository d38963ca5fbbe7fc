#pragma once

#include "quasihelm/types.hpp"

namespace quasihelm {

// The four local DtN matrices on the transverse space (weak-form entries
// T[p,q] = <T phi_q, phi_p>).
struct DtnQuad {
  CMatrix T00, T01, T10, T11;

  int size() const { return static_cast<int>(T00.rows()); }
  CMatrix sum_diag() const { return T00 + T11; }
};

// Dissipation sign of the diagonal blocks: Im(<T^kk phi, phi> / omega) < 0 for
// real nonzero phi. Returns the largest (worst) value over the given trials.
double coercivity_sign_margin(const DtnQuad& T, Complex omega, int trials,
                              unsigned seed = 0x5eed);

}  // namespace quasihelm
