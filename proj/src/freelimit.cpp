#include "freeqg/freelimit.hpp"

#include "freeqg/error.hpp"
#include "freeqg/pairings.hpp"

#include <vector>

namespace freeqg {

namespace {

// Interval dynamic program: count[a][b] is the number of admissible
// non-crossing pairings of letters a..b-1. Letter a pairs with some c and
// splits the interval into (a, c) and (c, b).
template <class Compatible>
mpz_class count_pairings(std::size_t k, Compatible compatible) {
    if (k % 2 != 0) return 0;
    std::vector<std::vector<mpz_class>> count(k + 1, std::vector<mpz_class>(k + 1));
    for (std::size_t a = 0; a <= k; ++a) count[a][a] = 1;
    for (std::size_t len = 2; len <= k; len += 2)
        for (std::size_t a = 0; a + len <= k; ++a) {
            const std::size_t b = a + len;
            mpz_class total = 0;
            for (std::size_t c = a + 1; c < b; c += 2)
                if (compatible(a, c)) total += count[a + 1][c] * count[c + 1][b];
            count[a][b] = total;
        }
    return count[0][k];
}

bool same_label(const Letter& x, const Letter& y) { return x.row == y.row && x.col == y.col; }

} // namespace

mpz_class semicircular_moment(const Word& word) {
    return count_pairings(word.size(), [&](std::size_t a, std::size_t c) { return same_label(word[a], word[c]); });
}

mpz_class circular_moment(const Word& word) {
    return count_pairings(word.size(), [&](std::size_t a, std::size_t c) {
        return same_label(word[a], word[c]) && word[a].color != word[c].color;
    });
}

mpz_class semicircle_moment_single(int k) {
    if (k < 0) throw InvalidArgument("moment order must be non-negative");
    return k % 2 ? mpz_class(0) : catalan(k / 2);
}

mpz_class limit_moment(const Word& word, Model model) {
    switch (model) {
    case Model::semicircular: return semicircular_moment(word);
    case Model::circular: return circular_moment(word);
    default: throw InvalidArgument("limit_moment needs the semicircular or circular model");
    }
}

} // namespace freeqg
