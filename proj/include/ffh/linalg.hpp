#ifndef FFH_LINALG_HPP
#define FFH_LINALG_HPP

#include "ffh/ratfun.hpp"
#include <vector>

namespace ffh {

using qmat = std::vector<std::vector<qpoly>>;
using kmat = std::vector<std::vector<rfun>>;

// fraction-free Bareiss determinant over Q[t]
qpoly det_bareiss(qmat m);

// determinant of a matrix with integer coefficients via evaluation,
// interpolation and CRT against a rigorous degree/coefficient bound;
// much faster than Bareiss for large matrices
qpoly det_modular(const qmat& m);

int rank_qmat(qmat m);

// one solution of A x = b over K (least-index pivot columns, free columns 0);
// returns false when inconsistent
bool solve_lin(kmat A, std::vector<rfun> b, std::vector<rfun>& x);

// determinant over K via row clearing + Bareiss
rfun det_kmat(const kmat& m);

} // namespace ffh

#endif
