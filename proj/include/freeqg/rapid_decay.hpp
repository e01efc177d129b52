#pragma once

#include "freeqg/big_real.hpp"
#include "freeqg/ncpoly.hpp"
#include "freeqg/weingarten.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace freeqg {

/// Three-vertex V_l -> V_n (x) V_k. Admissible when n + k - l is even and
/// 0 <= r = (n + k - l) / 2 <= min(n, k).
struct ThreeVertexParams {
    int n = 0;
    int k = 0;
    int l = 0;

    bool admissible() const;
    /// Throws InvalidArgument when inadmissible.
    int r() const;
};

/// ||phi_l^{n,k}||^{-2} = [r+1]! [l+1]! [n]! [k]! / ([l+1+r]! [n-r]! [k-r]! [r]!)
/// with the brackets q-factorials; [r+1]! / [r]! is written [r+1].
mpq_class three_vertex_norm_inv_factorial(const ThreeVertexParams& params, int N);

/// The same quantity as prod_{s=1}^{r} [1+s][n-r+s][k-r+s] / ([l+1+s][s]^2).
mpq_class three_vertex_norm_inv_product(const ThreeVertexParams& params, int N);

/// Radicand [k+1][n+1] / ([l+1][r+1]^2) of the dimension prefactor.
mpq_class prefactor(const ThreeVertexParams& params, int N);

/// Scan limits for dn_constant. n - r and k - r run over {0..side_max} and
/// infinity; r runs over {0..r_max}.
struct Truncation {
    int r_max = 64;
    int side_max = 32;
};

/// Location of the scanned maximum. An empty side means that side was sent
/// to infinity (its (1 - q^{2t}) factors replaced by 1).
struct ScanPoint {
    int r = 0;
    std::optional<int> n_minus_r;
    std::optional<int> k_minus_r;

    std::string n() const;
    std::string k() const;
    std::string l() const;
};

/// Bracket on the rapid-decay constant: value is the scanned maximum,
/// rigorous_upper a directed-rounding upper bound on the supremum.
struct RDBound {
    int N = 0;
    BigReal value;
    ScanPoint argmax;
    Truncation truncation;
    /// Upper bound on prod_{s > product_terms} (1 - q^{2s})^{-3} - 1.
    BigReal tail_error;
    int product_terms = 0;
    BigReal rigorous_upper;
};

/// Throws InvalidArgument for N < 3.
RDBound dn_constant(int N, const Truncation& truncation = {}, int precision_bits = BigReal::default_bits);

/// Only the rigorous upper bound (1 - q^2)^{-1} prod_s (1 - q^{2s})^{-3}.
BigReal dn_upper_bound(int N, int precision_bits = BigReal::default_bits);

struct PSelection {
    int m = 0;
    int p = 0;
    /// Upper bound of D^{1/2m} (2rm+1)^{3/4m} at the returned m.
    BigReal achieved;
};

/// Upper bound of D^{1/2m} (2 degree m + 1)^{3/4m}, directed rounding.
BigReal selector_bound(int degree, int m, const BigReal& d_star, Round rnd = Round::up);

/// Smallest m with D^{1/2m} (2 degree m + 1)^{3/4m} <= 1 + epsilon; p = 4m.
PSelection select_p(int degree, const BigReal& epsilon, const BigReal& d_star);

/// D_star used by the selector CLI: max of dn_upper_bound over N = 3..10.
BigReal selector_d_star(int precision_bits = BigReal::default_bits);

struct RDCheckRow {
    int p = 0;
    BigReal lp_norm;
    BigReal bound;
    BigReal margin;
    bool holds = false;
};

struct RDCheckReport {
    int N = 0;
    int degree = 0;
    BigReal d_upper;
    BigReal l2_norm;
    std::vector<RDCheckRow> rows;

    bool all_hold() const;
};

/// Checks ||P||_p <= D_N (deg P + 1)^{3/2} ||P||_2 for each p. P is an O_N^+
/// polynomial evaluated as given (apply scaled_generators first for P(S_N)).
RDCheckReport rd_check(const NCPolynomial& P, int N, const std::vector<int>& p_list, const Limits& limits = {},
                       int precision_bits = BigReal::default_bits);

} // namespace freeqg
