#pragma once

#include "freeqg/dixon_solver.hpp"
#include "freeqg/exact_matrix.hpp"
#include "freeqg/pairings.hpp"
#include "freeqg/word.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <future>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace freeqg {

/// Largest word length for which tables are built without a cost warning.
inline constexpr int default_k_max = 12;

/// Word-length ceilings. Full tables are inverted up to k_max; longer words
/// up to solve_k_max are evaluated by an exact linear solve per moment.
struct Limits {
    int k_max = default_k_max;
    int solve_k_max = 16;
};

/// Exact Weingarten matrix: the inverse of the Gram matrix of a pairing
/// family, stored as an integer adjugate over a common determinant.
class WeingartenTable {
public:
    WeingartenTable(int k, int N, std::optional<ColorPattern> pattern);

    int k() const { return k_; }
    int dimension() const { return n_; }
    const std::optional<ColorPattern>& pattern() const { return pattern_; }
    const std::vector<NCPairPartition>& pairings() const { return pairings_; }
    std::size_t size() const { return pairings_.size(); }

    const Matrix<mpz_class>& gram() const { return gram_; }
    const Matrix<mpz_class>& adjugate() const { return inverse_.adjugate; }
    const mpz_class& determinant() const { return inverse_.determinant; }

    /// wg(p, q) as a reduced fraction.
    mpq_class wg(std::size_t p, std::size_t q) const { return inverse_.entry(p, q); }
    Matrix<mpq_class> wg_matrix() const;

    /// Pairings (by table index) whose pairs join equal entries of `indices`.
    std::vector<std::size_t> admissible(const std::vector<std::uint32_t>& indices) const;

    /// Sum of wg(p, q) over p admissible for `rows` and q admissible for `cols`.
    mpq_class moment(const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& cols) const;

private:
    int k_;
    int n_;
    std::optional<ColorPattern> pattern_;
    std::vector<NCPairPartition> pairings_;
    Matrix<mpz_class> gram_;
    IntegerInverse inverse_;
};

/// Weingarten sums for word lengths where inverting the whole Gram matrix
/// is too costly: each moment solves G y = 1_Q exactly and sums y over the
/// admissible row pairings.
class WeingartenSolver {
public:
    WeingartenSolver(int k, int N, std::optional<ColorPattern> pattern);

    int k() const { return k_; }
    int dimension() const { return n_; }
    std::size_t size() const { return pairings_.size(); }
    const std::vector<NCPairPartition>& pairings() const { return pairings_; }

    std::vector<std::size_t> admissible(const std::vector<std::uint32_t>& indices) const;

    /// y with sum_q gram(p, q) y_q = [q admissible for cols].
    std::vector<mpq_class> column_solution(const std::vector<std::uint32_t>& cols) const;

    mpq_class moment(const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& cols) const;

private:
    int k_;
    int n_;
    std::vector<NCPairPartition> pairings_;
    std::unique_ptr<DixonSolver> solver_;
};

/// Write-once cache of Weingarten tables keyed by (k, N, color pattern).
/// Concurrent requests for the same key build the table once.
class TableCache {
public:
    std::shared_ptr<const WeingartenTable> get(int k, int N, const std::optional<ColorPattern>& pattern,
                                               const Limits& limits = {});
    /// Solver for k_max < k <= solve_k_max; throws ResourceError outside that range.
    std::shared_ptr<const WeingartenSolver> get_solver(int k, int N, const std::optional<ColorPattern>& pattern,
                                                       const Limits& limits = {});
    std::size_t size() const;

private:
    using Key = std::tuple<int, int, std::string>;
    mutable std::mutex mutex_;
    std::map<Key, std::shared_future<std::shared_ptr<const WeingartenTable>>> tables_;
    std::map<Key, std::shared_future<std::shared_ptr<const WeingartenSolver>>> solvers_;
};

/// Process-wide cache used when no cache is passed explicitly.
TableCache& shared_table_cache();

/// Memoized table lookup; throws ResourceError if k exceeds limits.k_max.
std::shared_ptr<const WeingartenTable> weingarten_table(int k, int N, const std::optional<ColorPattern>& pattern = std::nullopt,
                                                        const Limits& limits = {});

/// A word in the generators of O_N^+ (every color plain) or U_N^+.
struct GeneratorWord {
    Word letters;
    Model model = Model::orthogonal;
};

/// Haar state of the word: sum over admissible pairs (p, q) of wg(p, q).
/// Odd length and unbalanced U_N^+ color patterns give 0 without tables.
mpq_class haar_moment(const GeneratorWord& word, int N, const Limits& limits = {}, TableCache* cache = nullptr);

/// Sum over j = 1..N of the moment with column j placed at both letters
/// `position` and `position + 1` (0-based). Rows at those letters are kept.
mpq_class unitarity_contraction(const GeneratorWord& word, int N, std::size_t position, const Limits& limits = {},
                                TableCache* cache = nullptr);

/// Value the contraction must equal by unitarity: [rows equal] times the
/// moment of the word with both letters removed.
mpq_class contracted_reference(const GeneratorWord& word, int N, std::size_t position, const Limits& limits = {},
                               TableCache* cache = nullptr);

/// Evaluates many words against shared tables, memoizing admissible sets
/// and column sums of the adjugate. Not thread-safe; use one per thread.
class MomentEvaluator {
public:
    MomentEvaluator(Model model, int N, Limits limits = {}, TableCache* cache = nullptr);

    mpq_class operator()(const Word& w);

private:
    struct PerTable {
        std::shared_ptr<const WeingartenTable> table;
        std::shared_ptr<const WeingartenSolver> solver;
        std::unordered_map<std::string, std::vector<std::size_t>> row_sets;
        std::unordered_map<std::string, std::vector<mpz_class>> column_sums;
        std::unordered_map<std::string, std::vector<mpq_class>> column_solutions;
    };

    PerTable& table_for(const Word& w);

    Model model_;
    int n_;
    Limits limits_;
    TableCache* cache_;
    std::map<std::string, PerTable> tables_;
};

} // namespace freeqg
