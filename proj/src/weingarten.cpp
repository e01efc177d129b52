#include "freeqg/weingarten.hpp"

#include "freeqg/error.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <string>

namespace freeqg {

WeingartenTable::WeingartenTable(int k, int N, std::optional<ColorPattern> pattern)
    : k_(k), n_(N), pattern_(std::move(pattern)) {
    if (k < 0 || k % 2 != 0) throw InvalidArgument("Weingarten table needs even k, got k=" + std::to_string(k));
    if (N < 2) throw InvalidArgument("invalid dimension N=" + std::to_string(N) + " (need N >= 2)");
    auto g = gram_matrix(k, N, pattern_);
    pairings_ = std::move(g.pairings);
    gram_ = std::move(g.entries);
    if (pairings_.empty()) throw InvalidArgument("color pattern admits no pairings");
    try {
        inverse_ = bareiss_inverse(gram_);
    } catch (const SingularMatrix&) {
        throw SingularMatrix("singular Gram matrix for k=" + std::to_string(k) + ", N=" + std::to_string(N));
    }
}

Matrix<mpq_class> WeingartenTable::wg_matrix() const {
    Matrix<mpq_class> out(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out(i, j) = wg(i, j);
    return out;
}

std::vector<std::size_t> WeingartenTable::admissible(const std::vector<std::uint32_t>& indices) const {
    if (static_cast<int>(indices.size()) != k_) throw InvalidArgument("index tuple length differs from table k");
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < pairings_.size(); ++p)
        if (pairings_[p].respects(indices, std::equal_to<>{})) out.push_back(p);
    return out;
}

mpq_class WeingartenTable::moment(const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& cols) const {
    const auto ps = admissible(rows);
    if (ps.empty()) return 0;
    const auto qs = admissible(cols);
    mpz_class sum = 0;
    for (auto p : ps)
        for (auto q : qs) sum += inverse_.adjugate(p, q);
    mpq_class r(sum, inverse_.determinant);
    r.canonicalize();
    return r;
}

WeingartenSolver::WeingartenSolver(int k, int N, std::optional<ColorPattern> pattern) : k_(k), n_(N) {
    auto g = gram_matrix(k, N, pattern);
    pairings_ = std::move(g.pairings);
    if (pairings_.empty()) throw InvalidArgument("color pattern admits no pairings");
    solver_ = std::make_unique<DixonSolver>(g.entries);
}

std::vector<std::size_t> WeingartenSolver::admissible(const std::vector<std::uint32_t>& indices) const {
    if (static_cast<int>(indices.size()) != k_) throw InvalidArgument("index tuple length differs from solver k");
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < pairings_.size(); ++p)
        if (pairings_[p].respects(indices, std::equal_to<>{})) out.push_back(p);
    return out;
}

std::vector<mpq_class> WeingartenSolver::column_solution(const std::vector<std::uint32_t>& cols) const {
    std::vector<mpz_class> rhs(size());
    for (auto q : admissible(cols)) rhs[q] = 1;
    return solver_->solve(rhs);
}

mpq_class WeingartenSolver::moment(const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& cols) const {
    const auto ps = admissible(rows);
    if (ps.empty()) return 0;
    const auto y = column_solution(cols);
    mpq_class sum = 0;
    for (auto p : ps) sum += y[p];
    return sum;
}

namespace {

std::size_t family_size(int k, const std::optional<ColorPattern>& pattern) {
    return pattern ? enumerate_colored_nc_pairings(*pattern).size() : static_cast<std::size_t>(catalan(k / 2).get_ui());
}

void require_table_args(int k, int N) {
    if (k < 0 || k % 2 != 0) throw InvalidArgument("Weingarten table needs even k, got k=" + std::to_string(k));
    if (N < 2) throw InvalidArgument("invalid dimension N=" + std::to_string(N) + " (need N >= 2)");
}

void warn_expensive(int k) {
    if (k <= default_k_max) return;
    static std::mutex warn_mutex;
    static std::set<int> warned;
    std::lock_guard lock(warn_mutex);
    if (warned.insert(k).second)
        std::cerr << "warning: Weingarten computations for k=" << k << " beyond the default kmax=" << default_k_max
                  << " are expensive\n";
}

// The first caller for a key builds the value; later callers wait on the
// same future. A failed build is forgotten so it can be retried.
template <class T, class Map, class Build>
std::shared_ptr<const T> get_or_build(std::mutex& mutex, Map& map, const typename Map::key_type& key, Build build) {
    std::promise<std::shared_ptr<const T>> promise;
    std::shared_future<std::shared_ptr<const T>> future;
    bool builder = false;
    {
        std::lock_guard lock(mutex);
        auto it = map.find(key);
        if (it == map.end()) {
            future = promise.get_future().share();
            map.emplace(key, future);
            builder = true;
        } else {
            future = it->second;
        }
    }
    if (builder) {
        try {
            promise.set_value(build());
        } catch (...) {
            {
                std::lock_guard lock(mutex);
                map.erase(key);
            }
            promise.set_exception(std::current_exception());
        }
    }
    return future.get();
}

} // namespace

std::shared_ptr<const WeingartenTable> TableCache::get(int k, int N, const std::optional<ColorPattern>& pattern,
                                                       const Limits& limits) {
    require_table_args(k, N);
    if (k > limits.k_max) throw ResourceError(k, N, family_size(k, pattern), limits.k_max);
    Key key{k, N, pattern ? to_string(*pattern) : std::string()};
    return get_or_build<WeingartenTable>(mutex_, tables_, key, [&] {
        warn_expensive(k);
        return std::make_shared<const WeingartenTable>(k, N, pattern);
    });
}

std::shared_ptr<const WeingartenSolver> TableCache::get_solver(int k, int N, const std::optional<ColorPattern>& pattern,
                                                               const Limits& limits) {
    require_table_args(k, N);
    if (k <= limits.k_max || k > limits.solve_k_max)
        throw ResourceError(k, N, family_size(k, pattern), std::max(limits.k_max, limits.solve_k_max));
    Key key{k, N, pattern ? to_string(*pattern) : std::string()};
    return get_or_build<WeingartenSolver>(mutex_, solvers_, key, [&] {
        warn_expensive(k);
        try {
            return std::make_shared<const WeingartenSolver>(k, N, pattern);
        } catch (const InvalidArgument&) {
            // Gram entries N^{k/2} too wide for the word-size solver.
            throw ResourceError(k, N, family_size(k, pattern), limits.k_max);
        }
    });
}

std::size_t TableCache::size() const {
    std::lock_guard lock(mutex_);
    return tables_.size() + solvers_.size();
}

TableCache& shared_table_cache() {
    static TableCache cache;
    return cache;
}

std::shared_ptr<const WeingartenTable> weingarten_table(int k, int N, const std::optional<ColorPattern>& pattern,
                                                        const Limits& limits) {
    return shared_table_cache().get(k, N, pattern, limits);
}

namespace {

void validate(const GeneratorWord& word, int N) {
    if (N < 2) throw InvalidArgument("invalid dimension N=" + std::to_string(N) + " (need N >= 2)");
    if (!is_finite(word.model)) throw InvalidArgument("haar_moment needs the o+ or u+ model");
    for (const auto& l : word.letters) {
        if (l.row < 1 || l.col < 1 || l.row > static_cast<std::uint32_t>(N) || l.col > static_cast<std::uint32_t>(N))
            throw InvalidArgument("invalid index (" + std::to_string(l.row) + "," + std::to_string(l.col) +
                                  ") for N=" + std::to_string(N));
        if (word.model == Model::orthogonal && l.color != Color::plain)
            throw InvalidArgument("orthogonal words have self-adjoint letters only");
    }
}

// Pattern key for the table lookup, or nullopt when the moment vanishes.
std::optional<std::optional<ColorPattern>> table_pattern(const Word& w, Model model) {
    if (w.size() % 2 != 0) return std::nullopt;
    if (model == Model::orthogonal) return std::optional<ColorPattern>{};
    auto pattern = color_pattern(w);
    if (2 * std::count(pattern.begin(), pattern.end(), Color::plain) != static_cast<long>(pattern.size())) return std::nullopt;
    return std::optional<ColorPattern>{std::move(pattern)};
}

std::vector<std::uint32_t> rows_of(const Word& w) {
    std::vector<std::uint32_t> out;
    for (const auto& l : w) out.push_back(l.row);
    return out;
}

std::vector<std::uint32_t> cols_of(const Word& w) {
    std::vector<std::uint32_t> out;
    for (const auto& l : w) out.push_back(l.col);
    return out;
}

void check_position(const GeneratorWord& word, std::size_t position) {
    if (position + 1 >= word.letters.size())
        throw InvalidArgument("contraction position " + std::to_string(position) + " out of range for word of length " +
                              std::to_string(word.letters.size()));
    if (word.model == Model::unitary && word.letters[position].color == word.letters[position + 1].color)
        throw InvalidArgument("unitary contraction needs letters of opposite colors");
}

} // namespace

mpq_class haar_moment(const GeneratorWord& word, int N, const Limits& limits, TableCache* cache) {
    validate(word, N);
    if (word.letters.empty()) return 1;
    auto pattern = table_pattern(word.letters, word.model);
    if (!pattern) return 0;
    auto& tables = cache ? *cache : shared_table_cache();
    const int k = static_cast<int>(word.letters.size());
    if (k > limits.k_max) return tables.get_solver(k, N, *pattern, limits)->moment(rows_of(word.letters), cols_of(word.letters));
    return tables.get(k, N, *pattern, limits)->moment(rows_of(word.letters), cols_of(word.letters));
}

mpq_class unitarity_contraction(const GeneratorWord& word, int N, std::size_t position, const Limits& limits,
                                TableCache* cache) {
    check_position(word, position);
    GeneratorWord probe = word;
    mpq_class sum = 0;
    for (int j = 1; j <= N; ++j) {
        probe.letters[position].col = static_cast<std::uint32_t>(j);
        probe.letters[position + 1].col = static_cast<std::uint32_t>(j);
        sum += haar_moment(probe, N, limits, cache);
    }
    return sum;
}

mpq_class contracted_reference(const GeneratorWord& word, int N, std::size_t position, const Limits& limits,
                               TableCache* cache) {
    check_position(word, position);
    if (word.letters[position].row != word.letters[position + 1].row) return 0;
    GeneratorWord rest = word;
    rest.letters.erase(rest.letters.begin() + static_cast<long>(position),
                       rest.letters.begin() + static_cast<long>(position) + 2);
    return haar_moment(rest, N, limits, cache);
}

MomentEvaluator::MomentEvaluator(Model model, int N, Limits limits, TableCache* cache)
    : model_(model), n_(N), limits_(limits), cache_(cache ? cache : &shared_table_cache()) {
    if (!is_finite(model)) throw InvalidArgument("MomentEvaluator needs the o+ or u+ model");
    if (N < 2) throw InvalidArgument("invalid dimension N=" + std::to_string(N) + " (need N >= 2)");
}

namespace {

std::string tuple_key(const std::vector<std::uint32_t>& v) {
    std::string key;
    key.reserve(v.size() * 2);
    for (auto x : v) {
        key += static_cast<char>(x & 0xff);
        key += static_cast<char>((x >> 8) & 0xff);
    }
    return key;
}

} // namespace

MomentEvaluator::PerTable& MomentEvaluator::table_for(const Word& w) {
    auto pattern = table_pattern(w, model_);
    std::string key = std::to_string(w.size()) + ':' + (pattern && *pattern ? to_string(**pattern) : std::string());
    auto it = tables_.find(key);
    if (it == tables_.end()) {
        PerTable entry;
        const int k = static_cast<int>(w.size());
        if (k > limits_.k_max) entry.solver = cache_->get_solver(k, n_, *pattern, limits_);
        else entry.table = cache_->get(k, n_, *pattern, limits_);
        it = tables_.emplace(key, std::move(entry)).first;
    }
    return it->second;
}

mpq_class MomentEvaluator::operator()(const Word& w) {
    validate(GeneratorWord{w, model_}, n_);
    if (w.empty()) return 1;
    if (!table_pattern(w, model_)) return 0;
    auto& entry = table_for(w);

    const auto rows = rows_of(w);
    auto row_key = tuple_key(rows);
    auto rit = entry.row_sets.find(row_key);
    if (rit == entry.row_sets.end())
        rit = entry.row_sets.emplace(row_key, entry.table ? entry.table->admissible(rows) : entry.solver->admissible(rows)).first;
    const auto& ps = rit->second;
    if (ps.empty()) return 0;

    const auto cols = cols_of(w);
    auto col_key = tuple_key(cols);
    if (entry.solver) {
        auto sit = entry.column_solutions.find(col_key);
        if (sit == entry.column_solutions.end())
            sit = entry.column_solutions.emplace(col_key, entry.solver->column_solution(cols)).first;
        mpq_class sum = 0;
        for (auto p : ps) sum += sit->second[p];
        return sum;
    }

    const auto& table = *entry.table;
    auto cit = entry.column_sums.find(col_key);
    if (cit == entry.column_sums.end()) {
        std::vector<mpz_class> sums(table.size());
        for (auto q : table.admissible(cols))
            for (std::size_t p = 0; p < table.size(); ++p) sums[p] += table.adjugate()(p, q);
        cit = entry.column_sums.emplace(col_key, std::move(sums)).first;
    }
    mpz_class sum = 0;
    for (auto p : ps) sum += cit->second[p];
    mpq_class r(sum, table.determinant());
    r.canonicalize();
    return r;
}

} // namespace freeqg
