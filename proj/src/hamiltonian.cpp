#include "polyqp/hamiltonian.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>

namespace polyqp {

HamiltonianMatrix assemble(const PotentialSpec& spec, const Vec2& k,
                           const TruncationSetPtr& set,
                           bool allow_non_hermitian) {
  if (!set || set->size() == 0)
    throw std::invalid_argument("assemble: empty truncation set");
  if (!k.allFinite())
    throw std::invalid_argument("assemble: momentum must be finite");
  auto violations = validate(spec);
  if (!violations.empty()) {
    bool hermitian_only = true;
    for (const auto& v : violations)
      if (v.message.find("Hermitian") == std::string::npos) hermitian_only = false;
    if (!hermitian_only || !allow_non_hermitian)
      throw std::invalid_argument("assemble: invalid potential spec: " +
                                  violations.front().message);
  }

  const auto n = static_cast<Eigen::Index>(set->size());
  HamiltonianMatrix H;
  H.k = k;
  H.set = set;
  H.entries = Eigen::MatrixXcd::Zero(n, n);
  H.diag.resize(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec2 b = dual_vector((*set)[i], spec.freq);
    const double q = (k + b).squaredNorm();
    H.diag(i) = pow2l(q, spec.l);
    H.entries(i, i) = H.diag(i);
  }

  // Row (p,m), column (p',m') carries V_{p-p',m-m'}; every stored key s
  // contributes entries (idx, idx-s). With a Hermitian-symmetric table the
  // (j,i) partner is written by the key -s, conjugate by construction.
  for (const auto& [key, value] : spec.coeffs) {
    const LatticeIndex s{key_s1(key), key_s2(key)};
    const Complex amp = spec.coupling * value;
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::ptrdiff_t j = set->position((*set)[i] - s);
      if (j >= 0 && j != i) H.entries(i, j) = amp;
    }
  }

#ifndef NDEBUG
  if (!allow_non_hermitian)
    assert(H.entries == H.entries.adjoint().eval());
#endif
  return H;
}

HamiltonianMatrix assemble_shifted(const PotentialSpec& spec, const Vec2& k,
                                   const LatticeIndex& shift,
                                   const TruncationSetPtr& set_s,
                                   bool allow_non_hermitian) {
  return assemble(spec, Vec2(k + dual_vector(shift, spec.freq)), set_s,
                  allow_non_hermitian);
}

void write_matrix_csv(const HamiltonianMatrix& H, std::ostream& os) {
  os << "row,col,re,im\n";
  char buf[80];
  const auto n = H.entries.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex v = H.entries(i, j);
      if (v == Complex(0, 0)) continue;
      std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g",
                    static_cast<long long>(i), static_cast<long long>(j),
                    v.real(), v.imag());
      os << buf << '\n';
    }
}

}  // namespace polyqp
