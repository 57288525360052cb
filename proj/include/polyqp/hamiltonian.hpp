#pragma once

#include <ostream>

#include "polyqp/potential.hpp"

namespace polyqp {

// Dense truncated matrix H^{(n)}(k) = P_n H(k) P_n in the canonical index
// order of the truncation set. Immutable after assembly.
struct HamiltonianMatrix {
  Vec2 k;
  TruncationSetPtr set;
  Eigen::MatrixXcd entries;
  Eigen::VectorXd diag;  // |k + p + alpha m|^{2l} per index
};

// H(k) on the set: diagonal |k + b(idx)|^{2l}, off-diagonal g*V_{p-p',m-m'}.
// Requires a Hermitian-symmetric spec unless allow_non_hermitian.
HamiltonianMatrix assemble(const PotentialSpec& spec, const Vec2& k,
                           const TruncationSetPtr& set,
                           bool allow_non_hermitian = false);

// The shifted block H^{(s)}(k + p + alpha m): identical to assembling at the
// translated momentum.
HamiltonianMatrix assemble_shifted(const PotentialSpec& spec, const Vec2& k,
                                   const LatticeIndex& shift,
                                   const TruncationSetPtr& set_s,
                                   bool allow_non_hermitian = false);

// Debug dump: rows "row,col,re,im" of the nonzero entries, canonical order.
void write_matrix_csv(const HamiltonianMatrix& H, std::ostream& os);

}  // namespace polyqp
