#include "freeqg/sweep.hpp"

#include "freeqg/error.hpp"
#include "freeqg/ncpoly.hpp"
#include "freeqg/poly_parse.hpp"
#include "freeqg/rapid_decay.hpp"
#include "freeqg/version.hpp"

#include <json.hpp>

#include <cmath>
#include <future>
#include <ostream>

namespace freeqg {

void validate(const SweepConfig& config) {
    if (config.N_list.empty()) throw InvalidArgument("N list is empty");
    if (config.p_list.empty()) throw InvalidArgument("p list is empty");
    if (config.precision_bits < 16) throw InvalidArgument("precision must be at least 16 bits");
    const int n_min = config.rd ? 3 : 2;
    for (int N : config.N_list)
        if (N < n_min)
            throw InvalidArgument("N=" + std::to_string(N) + " is below " + std::to_string(n_min) +
                                  (config.rd ? " (rd_bound needs N >= 3; disable it to admit N=2)" : ""));
    for (int p : config.p_list)
        if (p < 2 || p % 2 != 0) throw InvalidArgument("p=" + std::to_string(p) + " is not an even integer >= 2");
    auto P = parse_polynomial(config.polynomial, Model::orthogonal);
    if (config.rd && P.model() != Model::orthogonal)
        throw InvalidArgument("rd_bound is defined for O_N^+ polynomials only; disable it for v letters");
}

namespace {

RowError row_error(const ResourceError& e) { return {e.k(), e.dimension(), e.table_size(), e.what()}; }

struct LimitValues {
    mpq_class moment;
    BigReal norm;
};

std::vector<SweepRow> rows_for_N(const NCPolynomial& P, int N, const SweepConfig& config,
                                 const std::vector<LimitValues>& limit, TableCache* cache) {
    const int bits = config.precision_bits;
    const auto scaled = scaled_generators(P, N);
    std::optional<BigReal> rd_bound;
    std::optional<RowError> rd_error;
    if (config.rd) {
        try {
            rd_bound = rd_check(scaled, N, {2}, config.limits, bits).rows.front().bound;
        } catch (const ResourceError& e) {
            rd_error = row_error(e);
        }
    }

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < config.p_list.size(); ++i) {
        const int p = config.p_list[i];
        SweepRow row{N, p, std::nullopt, std::nullopt, limit[i].moment, limit[i].norm, std::nullopt, rd_bound, rd_error};
        try {
            mpq_class moment = lp_moment(scaled, p / 2, N, config.limits, cache);
            BigReal norm = rational_root(moment, static_cast<unsigned long>(p), bits, Round::nearest);
            row.gap = abs(sub(norm, row.lp_limit, Round::nearest));
            row.moment_finite = std::move(moment);
            row.lp_finite = std::move(norm);
        } catch (const ResourceError& e) {
            row.error = row_error(e);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::vector<SweepRow> run_converge(const SweepConfig& config, TableCache* cache) {
    validate(config);
    if (cache == nullptr) cache = &shared_table_cache();
    const int bits = config.precision_bits;
    const auto P = parse_polynomial(config.polynomial, Model::orthogonal);
    const auto limit_poly = P.with_model(limit_of(P.model()));

    std::vector<LimitValues> limit;
    for (int p : config.p_list) {
        mpq_class moment = lp_moment(limit_poly, p / 2, std::nullopt, config.limits);
        BigReal norm = rational_root(moment, static_cast<unsigned long>(p), bits, Round::nearest);
        limit.push_back({std::move(moment), std::move(norm)});
    }

    std::vector<std::future<std::vector<SweepRow>>> jobs;
    for (int N : config.N_list)
        jobs.push_back(std::async(std::launch::async, rows_for_N, std::cref(P), N, std::cref(config), std::cref(limit), cache));

    std::vector<SweepRow> rows;
    for (auto& job : jobs)
        for (auto& row : job.get()) rows.push_back(std::move(row));

    // Limit rows: the finite-N columns are the limit values and D = 1.
    std::optional<BigReal> limit_rd;
    if (config.rd) {
        const BigReal l2 = rational_root(lp_moment(limit_poly, 1, std::nullopt), 2, bits, Round::down);
        const BigReal growth = pow(BigReal(static_cast<long>(P.degree()) + 1, bits),
                                   div(BigReal(3L, bits), BigReal(2L, bits), Round::down), Round::down);
        limit_rd = mul(growth, l2, Round::down);
    }
    for (std::size_t i = 0; i < config.p_list.size(); ++i) {
        rows.push_back(SweepRow{std::nullopt, config.p_list[i], limit[i].moment, limit[i].norm, limit[i].moment,
                                limit[i].norm, BigReal(0L, bits), limit_rd, std::nullopt});
    }
    return rows;
}

int decimal_digits(int bits) { return static_cast<int>(std::floor(bits * std::log10(2.0))); }

namespace {

std::string n_label(const SweepRow& row) { return row.N ? std::to_string(*row.N) : "inf"; }

std::string error_label(const RowError& e) {
    return "resource_error(k=" + std::to_string(e.k) + " N=" + std::to_string(e.N) + ")";
}

} // namespace

void write_csv(const std::vector<SweepRow>& rows, int precision_bits, std::ostream& out) {
    const int digits = decimal_digits(precision_bits);
    auto real = [&](const std::optional<BigReal>& v) { return v ? v->to_string(digits) : std::string("NA"); };
    out << "N,p,lp_finite,lp_limit,gap,rd_bound\n";
    for (const auto& row : rows) {
        std::string finite = row.lp_finite ? real(row.lp_finite) : row.error ? error_label(*row.error) : "NA";
        std::string bound = row.rd_bound ? real(row.rd_bound) : row.error ? error_label(*row.error) : "NA";
        out << n_label(row) << ',' << row.p << ',' << finite << ',' << real(row.lp_limit) << ',' << real(row.gap)
            << ',' << bound << '\n';
    }
}

void write_json(const SweepConfig& config, const std::vector<SweepRow>& rows, std::ostream& out) {
    using nlohmann::ordered_json;
    const int bits = config.precision_bits;
    const int digits = decimal_digits(bits);
    auto real = [&](const std::optional<BigReal>& v) -> ordered_json {
        if (!v) return nullptr;
        return ordered_json{{"value", v->to_string(digits)}, {"bits", v->bits()}};
    };
    auto rational = [](const std::optional<mpq_class>& v) -> ordered_json {
        if (!v) return nullptr;
        return v->get_str();
    };

    ordered_json doc;
    doc["config"] = {{"polynomial", config.polynomial},
                     {"N", config.N_list},
                     {"p", config.p_list},
                     {"rd", config.rd},
                     {"kmax", config.limits.k_max},
                     {"solve_kmax", config.limits.solve_k_max}};
    doc["rows"] = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["N"] = row.N ? ordered_json(*row.N) : ordered_json("inf");
        r["p"] = row.p;
        r["moment_finite"] = rational(row.moment_finite);
        r["lp_finite"] = real(row.lp_finite);
        r["moment_limit"] = row.moment_limit.get_str();
        r["lp_limit"] = real(row.lp_limit);
        r["gap"] = real(row.gap);
        r["rd_bound"] = real(row.rd_bound);
        if (row.error)
            r["error"] = {{"kind", "resource"},
                          {"k", row.error->k},
                          {"N", row.error->N},
                          {"table_size", row.error->table_size},
                          {"message", row.error->message}};
        doc["rows"].push_back(std::move(r));
    }
    doc["meta"] = {{"precision_bits", bits}, {"kmax", config.limits.k_max}, {"version", version}};
    out << doc.dump(2) << '\n';
}

} // namespace freeqg
