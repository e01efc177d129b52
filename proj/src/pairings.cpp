#include "freeqg/pairings.hpp"

#include "freeqg/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace freeqg {

NCPairPartition::NCPairPartition(int k, std::vector<std::pair<int, int>> pairs)
    : pairs_(std::move(pairs)), partner_(static_cast<std::size_t>(k < 0 ? 0 : k), -1) {
    if (k < 0 || k % 2 != 0) throw InvalidArgument("pair partition needs an even number of points");
    if (pairs_.size() * 2 != static_cast<std::size_t>(k)) throw InvalidArgument("pair partition does not cover all points");
    for (auto& [a, b] : pairs_) {
        if (a > b) std::swap(a, b);
        if (a < 0 || b >= k || a == b) throw InvalidArgument("pair index out of range");
        if (partner_[a] != -1 || partner_[b] != -1) throw InvalidArgument("point used twice in pair partition");
        partner_[a] = b;
        partner_[b] = a;
    }
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t x = 0; x < pairs_.size(); ++x)
        for (std::size_t y = x + 1; y < pairs_.size(); ++y) {
            auto [a, b] = pairs_[x];
            auto [c, d] = pairs_[y];
            if (a < c && c < b && b < d) throw InvalidArgument("pair partition is crossing");
        }
}

std::string NCPairPartition::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (i) out += ',';
        out += '(' + std::to_string(pairs_[i].first + 1) + ',' + std::to_string(pairs_[i].second + 1) + ')';
    }
    return out + "}";
}

namespace {

using PairList = std::vector<std::pair<int, int>>;

// Non-crossing pairings of the interval [lo, hi), each as an unsorted pair list.
std::vector<PairList> pairings_of_interval(int lo, int hi) {
    if (lo >= hi) return {PairList{}};
    std::vector<PairList> out;
    for (int mate = lo + 1; mate < hi; mate += 2) {
        auto inner = pairings_of_interval(lo + 1, mate);
        auto outer = pairings_of_interval(mate + 1, hi);
        for (const auto& in : inner)
            for (const auto& ou : outer) {
                PairList p;
                p.reserve(1 + in.size() + ou.size());
                p.emplace_back(lo, mate);
                p.insert(p.end(), in.begin(), in.end());
                p.insert(p.end(), ou.begin(), ou.end());
                out.push_back(std::move(p));
            }
    }
    return out;
}

} // namespace

std::vector<NCPairPartition> enumerate_nc_pairings(int k) {
    if (k < 0) throw InvalidArgument("number of points must be non-negative");
    if (k % 2 != 0) return {};
    static std::mutex mutex;
    static std::map<int, std::vector<NCPairPartition>> memo;
    std::lock_guard lock(mutex);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::vector<NCPairPartition> out;
    for (auto& pairs : pairings_of_interval(0, k)) out.emplace_back(k, std::move(pairs));
    std::sort(out.begin(), out.end());
    memo.emplace(k, out);
    return out;
}

std::vector<NCPairPartition> enumerate_colored_nc_pairings(const ColorPattern& pattern) {
    const auto k = static_cast<int>(pattern.size());
    const auto ones = std::count(pattern.begin(), pattern.end(), Color::plain);
    if (k % 2 != 0 || 2 * ones != k) return {};
    std::vector<NCPairPartition> out;
    for (auto& p : enumerate_nc_pairings(k))
        if (p.respects(pattern, [](Color a, Color b) { return a != b; })) out.push_back(std::move(p));
    return out;
}

mpz_class catalan(int n) {
    if (n < 0) throw InvalidArgument("catalan: negative argument");
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    return c / (n + 1);
}

int loop_count(const NCPairPartition& p, const NCPairPartition& q) {
    if (p.size() != q.size()) throw InvalidArgument("loop_count: pairings on different numbers of points");
    const int k = p.size();
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    int loops = 0;
    for (int start = 0; start < k; ++start) {
        if (seen[start]) continue;
        ++loops;
        // Walk the cycle alternating between edges of p and of q.
        int v = start;
        do {
            seen[v] = 1;
            int w = p.partner(v);
            seen[w] = 1;
            v = q.partner(w);
        } while (v != start);
    }
    return loops;
}

Matrix<mpz_class> gram_entries(const std::vector<NCPairPartition>& pairings, int N) {
    if (N < 2) throw InvalidArgument("invalid dimension N=" + std::to_string(N) + " (need N >= 2)");
    const std::size_t n = pairings.size();
    const int k = n ? pairings.front().size() : 0;
    std::vector<mpz_class> powers(static_cast<std::size_t>(k / 2) + 1);
    for (std::size_t e = 0; e < powers.size(); ++e) mpz_ui_pow_ui(powers[e].get_mpz_t(), static_cast<unsigned long>(N), e);
    Matrix<mpz_class> g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            g(i, j) = powers[static_cast<std::size_t>(loop_count(pairings[i], pairings[j]))];
            g(j, i) = g(i, j);
        }
    return g;
}

GramMatrix gram_matrix(int k, int N, const std::optional<ColorPattern>& pattern) {
    if (k < 0 || k % 2 != 0) throw InvalidArgument("gram_matrix: k must be even and non-negative");
    if (pattern && static_cast<int>(pattern->size()) != k) throw InvalidArgument("gram_matrix: color pattern length differs from k");
    GramMatrix g;
    g.k = k;
    g.N = N;
    g.pattern = pattern;
    g.pairings = pattern ? enumerate_colored_nc_pairings(*pattern) : enumerate_nc_pairings(k);
    g.entries = gram_entries(g.pairings, N);
    return g;
}

} // namespace freeqg
