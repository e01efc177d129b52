#pragma once

#include "freeqg/exact_matrix.hpp"
#include "freeqg/word.hpp"

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

namespace freeqg {

/// Non-crossing perfect matching of the points {0, ..., k-1}.
/// Pairs are stored sorted, each as (a, b) with a < b.
class NCPairPartition {
public:
    /// Validates that `pairs` is a non-crossing perfect matching of k points.
    NCPairPartition(int k, std::vector<std::pair<int, int>> pairs);

    int size() const { return static_cast<int>(partner_.size()); }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int partner(int point) const { return partner_[static_cast<std::size_t>(point)]; }

    /// Every pair joins two equal entries of `labels` (labels.size() == k).
    template <class Seq, class Eq>
    bool respects(const Seq& labels, Eq eq) const {
        for (const auto& [a, b] : pairs_)
            if (!eq(labels[static_cast<std::size_t>(a)], labels[static_cast<std::size_t>(b)])) return false;
        return true;
    }

    /// 1-based text form, e.g. {(1,4),(2,3)}.
    std::string to_string() const;

    friend bool operator==(const NCPairPartition& a, const NCPairPartition& b) { return a.pairs_ == b.pairs_; }
    friend bool operator<(const NCPairPartition& a, const NCPairPartition& b) { return a.pairs_ < b.pairs_; }

private:
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> partner_;
};

/// All non-crossing pairings of k points, lexicographic on the sorted pair
/// list. Empty for odd k.
std::vector<NCPairPartition> enumerate_nc_pairings(int k);

/// Non-crossing pairings in which every pair joins a 1 with a *.
/// Canonical order is inherited from enumerate_nc_pairings.
std::vector<NCPairPartition> enumerate_colored_nc_pairings(const ColorPattern& pattern);

/// Catalan number C_n.
mpz_class catalan(int n);

/// Connected components of the union multigraph of the two matchings, i.e.
/// closed loops when p is glued to the mirror image of q.
int loop_count(const NCPairPartition& p, const NCPairPartition& q);

/// Gram matrix of a pairing family: entries N^{loop_count(p, q)}.
struct GramMatrix {
    int k = 0;
    int N = 0;
    std::optional<ColorPattern> pattern;
    std::vector<NCPairPartition> pairings;
    Matrix<mpz_class> entries;
};

/// Orthogonal Gram matrix when `pattern` is empty, colored otherwise.
GramMatrix gram_matrix(int k, int N, const std::optional<ColorPattern>& pattern = std::nullopt);

/// Gram matrix over an explicit pairing list.
Matrix<mpz_class> gram_entries(const std::vector<NCPairPartition>& pairings, int N);

} // namespace freeqg
