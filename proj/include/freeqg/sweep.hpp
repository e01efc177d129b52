#pragma once

#include "freeqg/big_real.hpp"
#include "freeqg/weingarten.hpp"

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace freeqg {

enum class OutputFormat { csv, json };

struct SweepConfig {
    std::string polynomial;
    std::vector<int> N_list;
    std::vector<int> p_list;
    /// Empty means standard output.
    std::string output;
    OutputFormat format = OutputFormat::csv;
    /// Compute the rd_bound column (needs N >= 3 and an O_N^+ polynomial).
    bool rd = true;
    Limits limits;
    int precision_bits = BigReal::default_bits;
};

/// Throws InvalidArgument for N < 2 (N < 3 with rd), odd or small p, or an
/// empty N or p list; ParseError for a malformed polynomial.
void validate(const SweepConfig& config);

struct RowError {
    int k = 0;
    int N = 0;
    std::size_t table_size = 0;
    std::string message;
};

/// One (N, p) point of a convergence sweep. N empty marks the limit row.
struct SweepRow {
    std::optional<int> N;
    int p = 0;
    std::optional<mpq_class> moment_finite;
    std::optional<BigReal> lp_finite;
    mpq_class moment_limit;
    BigReal lp_limit;
    std::optional<BigReal> gap;
    std::optional<BigReal> rd_bound;
    std::optional<RowError> error;
};

/// Rows for every N in config order (each with every p), then the limit
/// rows. N values are processed concurrently.
std::vector<SweepRow> run_converge(const SweepConfig& config, TableCache* cache = nullptr);

void write_csv(const std::vector<SweepRow>& rows, int precision_bits, std::ostream& out);
void write_json(const SweepConfig& config, const std::vector<SweepRow>& rows, std::ostream& out);

/// Decimal digits printed for a real carried at `bits` of precision.
int decimal_digits(int bits);

} // namespace freeqg
