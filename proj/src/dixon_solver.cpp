#include "freeqg/dixon_solver.hpp"

#include "freeqg/error.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace freeqg {

namespace {

constexpr std::array<std::uint64_t, 3> candidate_primes{2147483647ULL, 2147483629ULL, 2147483587ULL};
constexpr std::int64_t entry_bound = std::int64_t{1} << 31;

template <std::uint64_t P>
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e) {
    std::uint64_t r = 1;
    base %= P;
    while (e) {
        if (e & 1) r = r * base % P;
        base = base * base % P;
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
    auto r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

// In-place LU with row pivoting modulo P. Returns false if singular mod P.
template <std::uint64_t P>
bool factor(std::vector<std::uint32_t>& lu, std::vector<std::size_t>& perm, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && lu[perm[pivot] * n + k] == 0) ++pivot;
        if (pivot == n) return false;
        std::swap(perm[k], perm[pivot]);
        std::uint32_t* row_k = &lu[perm[k] * n];
        const std::uint64_t inv = mod_pow<P>(row_k[k], P - 2);
        for (std::size_t i = k + 1; i < n; ++i) {
            std::uint32_t* row_i = &lu[perm[i] * n];
            if (row_i[k] == 0) continue;
            const std::uint64_t f = row_i[k] * inv % P;
            row_i[k] = static_cast<std::uint32_t>(f);
            const std::uint64_t neg = P - f;
            for (std::size_t j = k + 1; j < n; ++j)
                row_i[j] = static_cast<std::uint32_t>((row_i[j] + neg * row_k[j]) % P);
        }
    }
    return true;
}

template <std::uint64_t P>
std::vector<std::uint32_t> substitute(const std::vector<std::uint32_t>& lu, const std::vector<std::size_t>& perm,
                                      std::size_t n, std::vector<std::uint64_t> rhs) {
    // Forward: L y = P b (unit lower triangle).
    std::vector<std::uint64_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t* row = &lu[perm[i] * n];
        std::uint64_t acc = rhs[perm[i]] % P;
        for (std::size_t j = 0; j < i; ++j) acc = (acc + (P - row[j]) * y[j]) % P;
        y[i] = acc;
    }
    // Backward: U x = y.
    std::vector<std::uint32_t> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        const std::uint32_t* row = &lu[perm[ii] * n];
        std::uint64_t acc = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc = (acc + (P - row[j]) * x[j]) % P;
        x[ii] = static_cast<std::uint32_t>(acc * mod_pow<P>(row[ii], P - 2) % P);
    }
    return x;
}

// Rational reconstruction of u modulo m with |num| <= bound, 0 < den <= bound.
std::optional<mpq_class> reconstruct(const mpz_class& u, const mpz_class& m, const mpz_class& bound) {
    mpz_class r0 = m, r1 = u, t0 = 0, t1 = 1, q, tmp;
    while (r1 > bound) {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (sgn(t1) == 0 || abs(t1) > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpq_class out(r1, t1);
    out.canonicalize();
    return out;
}

} // namespace

DixonSolver::DixonSolver(const Matrix<mpz_class>& a) : n_(a.rows()) {
    if (a.rows() != a.cols()) throw InvalidArgument("DixonSolver: matrix must be square");
    a_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            const auto& v = a(i, j);
            if (!v.fits_slong_p() || abs(v) >= entry_bound) throw InvalidArgument("DixonSolver: entry exceeds 31 bits");
            a_[i * n_ + j] = v.get_si();
        }
    for (auto p : candidate_primes) {
        lu_.resize(n_ * n_);
        for (std::size_t i = 0; i < n_ * n_; ++i) lu_[i] = static_cast<std::uint32_t>(reduce(a_[i], p));
        perm_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
        bool ok = false;
        switch (p) {
        case candidate_primes[0]: ok = factor<candidate_primes[0]>(lu_, perm_, n_); break;
        case candidate_primes[1]: ok = factor<candidate_primes[1]>(lu_, perm_, n_); break;
        case candidate_primes[2]: ok = factor<candidate_primes[2]>(lu_, perm_, n_); break;
        default: break;
        }
        if (ok) {
            prime_ = p;
            return;
        }
    }
    throw SingularMatrix("DixonSolver: matrix is singular modulo every candidate prime");
}

std::vector<std::uint32_t> DixonSolver::solve_mod_p(std::vector<std::uint64_t> rhs) const {
    switch (prime_) {
    case candidate_primes[0]: return substitute<candidate_primes[0]>(lu_, perm_, n_, std::move(rhs));
    case candidate_primes[1]: return substitute<candidate_primes[1]>(lu_, perm_, n_, std::move(rhs));
    case candidate_primes[2]: return substitute<candidate_primes[2]>(lu_, perm_, n_, std::move(rhs));
    default: break;
    }
    throw Error("DixonSolver: no factorization");
}

std::vector<mpq_class> DixonSolver::solve(const std::vector<mpz_class>& b) const {
    if (b.size() != n_) throw InvalidArgument("DixonSolver: right-hand side has wrong length");
    std::vector<std::int64_t> residual(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (!b[i].fits_slong_p() || abs(b[i]) >= entry_bound) throw InvalidArgument("DixonSolver: rhs entry exceeds 31 bits");
        residual[i] = b[i].get_si();
    }
    if (n_ == 0) return {};

    // Hadamard bound on |det A| and on every Cramer numerator fixes the
    // number of digits after which reconstruction cannot fail.
    double log2_hadamard = 0;
    double max_row = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        double norm2 = 0;
        for (std::size_t j = 0; j < n_; ++j) norm2 += static_cast<double>(a_[i * n_ + j]) * static_cast<double>(a_[i * n_ + j]);
        log2_hadamard += 0.5 * std::log2(std::max(norm2, 1.0));
        max_row = std::max(max_row, norm2);
    }
    double b_norm2 = 1;
    for (auto v : residual) b_norm2 += static_cast<double>(v) * static_cast<double>(v);
    const double log2_bound = log2_hadamard + 0.5 * std::log2(b_norm2) + 1;
    const double log2_p = std::log2(static_cast<double>(prime_));
    const auto max_digits = static_cast<std::size_t>(std::ceil((2 * log2_bound + 2) / log2_p)) + 1;

    const mpz_class p(static_cast<unsigned long>(prime_));
    std::vector<mpz_class> x(n_);
    mpz_class modulus = 1;
    std::size_t digits = 0;
    std::size_t next_check = 16;

    while (true) {
        std::vector<std::uint64_t> rhs(n_);
        for (std::size_t i = 0; i < n_; ++i) rhs[i] = reduce(residual[i], prime_);
        auto digit = solve_mod_p(std::move(rhs));
        for (std::size_t i = 0; i < n_; ++i) mpz_addmul_ui(x[i].get_mpz_t(), modulus.get_mpz_t(), digit[i]);
        modulus *= p;
        ++digits;
        // residual <- (residual - A digit) / p, exact by construction.
        for (std::size_t i = 0; i < n_; ++i) {
            __int128 acc = residual[i];
            const std::int64_t* row = &a_[i * n_];
            for (std::size_t j = 0; j < n_; ++j) acc -= static_cast<__int128>(row[j]) * digit[j];
            residual[i] = static_cast<std::int64_t>(acc / static_cast<__int128>(prime_));
        }

        if (digits < next_check && digits < max_digits) continue;
        next_check = digits * 2;

        mpz_class bound;
        mpz_class half = modulus / 2;
        mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
        mpz_class den = 1;
        std::vector<mpz_class> num(n_);
        bool ok = true;
        for (std::size_t i = 0; i < n_ && ok; ++i) {
            mpz_class v = den * x[i] % modulus;
            if (v > half) v -= modulus;
            if (abs(v) <= bound) {
                num[i] = v;
                continue;
            }
            auto r = reconstruct(mpz_class(den * x[i] % modulus), modulus, bound);
            if (!r) {
                ok = false;
                break;
            }
            const mpz_class extra = r->get_den();
            den *= extra;
            if (den > bound) {
                ok = false;
                break;
            }
            for (std::size_t j = 0; j < i; ++j) num[j] *= extra;
            num[i] = r->get_num();
        }
        if (ok) {
            // A num == den b, checked exactly.
            for (std::size_t i = 0; i < n_ && ok; ++i) {
                mpz_class acc = 0;
                for (std::size_t j = 0; j < n_; ++j) {
                    const std::int64_t aij = a_[i * n_ + j];
                    if (aij > 0) mpz_addmul_ui(acc.get_mpz_t(), num[j].get_mpz_t(), static_cast<unsigned long>(aij));
                    else if (aij < 0) mpz_submul_ui(acc.get_mpz_t(), num[j].get_mpz_t(), static_cast<unsigned long>(-aij));
                }
                ok = acc == den * b[i];
            }
            if (ok) {
                std::vector<mpq_class> out(n_);
                for (std::size_t i = 0; i < n_; ++i) {
                    out[i] = mpq_class(num[i], den);
                    out[i].canonicalize();
                }
                return out;
            }
        }
        if (digits >= max_digits) throw Error("DixonSolver: reconstruction failed within the Hadamard bound");
    }
}

} // namespace freeqg
