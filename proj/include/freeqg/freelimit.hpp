#pragma once

#include "freeqg/word.hpp"

#include <gmpxx.h>

namespace freeqg {

/// Moments of free semicircular and free circular families, indexed by the
/// (row, col) labels of the letters. Both are counts of non-crossing pairings
/// whose pairs join equal labels (free Wick rule).

/// tau(s_{l_1} ... s_{l_k}); colors are ignored.
mpz_class semicircular_moment(const Word& word);

/// phi(c_{l_1}^{e_1} ... c_{l_k}^{e_k}); pairs must also join a 1 with a *.
mpz_class circular_moment(const Word& word);

/// k-th moment of the standard semicircle law: 0 for odd k, Catalan(k/2) otherwise.
mpz_class semicircle_moment_single(int k);

/// Dispatch on a limit model (semicircular or circular).
mpz_class limit_moment(const Word& word, Model model);

} // namespace freeqg
