#include "freeqg/cli.hpp"

#include "freeqg/error.hpp"
#include "freeqg/freelimit.hpp"
#include "freeqg/ncpoly.hpp"
#include "freeqg/pairings.hpp"
#include "freeqg/poly_parse.hpp"
#include "freeqg/qnum.hpp"
#include "freeqg/rapid_decay.hpp"
#include "freeqg/sweep.hpp"
#include "freeqg/version.hpp"
#include "freeqg/weingarten.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace freeqg {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string model;
    std::vector<int> N;
    std::vector<int> p;
    int k_max = default_k_max;
    int solve_k_max = 16;
    std::string out;
    std::string format = "csv";
    int bits = BigReal::default_bits;

    int k = 0;
    std::string pattern;
    std::string polynomial;
    int degree = 0;
    std::string epsilon;
    int r_max = Truncation{}.r_max;
    int side_max = Truncation{}.side_max;
    bool no_rd = false;
    bool scale = false;

    Limits limits() const { return {k_max, solve_k_max}; }
    OutputFormat output_format() const { return format == "json" ? OutputFormat::json : OutputFormat::csv; }
};

/// Header plus rows of JSON cells. Reals are {"value", "bits"} objects and
/// print as their value in CSV.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<ordered_json>> rows;
};

ordered_json real_cell(const BigReal& v) {
    return ordered_json{{"value", v.to_string(decimal_digits(v.bits()))}, {"bits", v.bits()}};
}

std::string csv_cell(const ordered_json& cell) {
    if (cell.is_string()) return cell.get<std::string>();
    if (cell.is_object() && cell.contains("value")) return cell["value"].get<std::string>();
    if (cell.is_null()) return "NA";
    return cell.dump();
}

void emit(const Table& table, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::csv) {
        for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
            out << '\n';
        }
        return;
    }
    ordered_json doc = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = row[i];
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

int single_N(const Options& o) {
    if (o.N.size() != 1) throw InvalidArgument("this command takes exactly one --N value");
    return o.N.front();
}

std::optional<Model> model_flag(const Options& o) {
    if (o.model.empty()) return std::nullopt;
    if (o.model == "o+") return Model::orthogonal;
    if (o.model == "u+") return Model::unitary;
    if (o.model == "limit") return Model::semicircular;
    throw InvalidArgument("unknown --model '" + o.model + "' (expected o+, u+ or limit)");
}

/// The polynomial argument read in the model selected by --model.
NCPolynomial polynomial_arg(const Options& o) {
    auto flag = model_flag(o);
    const bool limit = o.model == "limit";
    auto P = parse_polynomial(o.polynomial, flag && !limit ? flag : std::optional<Model>(Model::orthogonal));
    if (flag && !limit && P.model() != *flag)
        throw ParseError("polynomial letters do not match --model " + o.model);
    return limit ? P.with_model(limit_of(P.model())) : P;
}

BigReal parse_real(const std::string& text, int bits, Round rnd) {
    BigReal v(bits);
    char* end = nullptr;
    if (text.empty() || mpfr_strtofr(v.get(), text.c_str(), &end, 10, to_mpfr(rnd)), end != text.c_str() + text.size())
        throw ParseError("not a real number: '" + text + "'");
    return v;
}

std::optional<ColorPattern> pattern_arg(const Options& o) {
    auto flag = model_flag(o);
    if (!o.pattern.empty()) {
        if (flag && *flag == Model::orthogonal) throw InvalidArgument("--pattern applies to the u+ model");
        return parse_color_pattern(o.pattern);
    }
    if (flag && *flag == Model::unitary) throw InvalidArgument("the u+ model needs --pattern");
    return std::nullopt;
}

std::vector<std::string> pairing_names(const std::vector<NCPairPartition>& pairings) {
    std::vector<std::string> names;
    for (const auto& p : pairings) names.push_back(p.to_string());
    return names;
}

template <class T, class F>
void emit_matrix(const std::vector<NCPairPartition>& pairings, const Matrix<T>& m, F cell, ordered_json extra,
                 OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::json) {
        ordered_json doc = std::move(extra);
        doc["pairings"] = pairing_names(pairings);
        doc["matrix"] = ordered_json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(cell(m(i, j)));
            doc["matrix"].push_back(std::move(row));
        }
        out << doc.dump(2) << '\n';
        return;
    }
    for (auto it = extra.begin(); it != extra.end(); ++it) out << "# " << it.key() << " " << csv_cell(it.value()) << '\n';
    out << "index,pairing\n";
    for (std::size_t i = 0; i < pairings.size(); ++i) out << i << ",\"" << pairings[i].to_string() << "\"\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << cell(m(i, j));
        out << '\n';
    }
}

ordered_json header_json(const Options& o, int N, const std::optional<ColorPattern>& pattern) {
    return {{"k", o.k}, {"N", N}, {"pattern", pattern ? to_string(*pattern) : std::string("orthogonal")}};
}

void cmd_dim(const Options& o, std::ostream& out) {
    const int N = single_N(o);
    if (N < 2) throw InvalidArgument("N must be at least 2");
    Table t{{"k", "dim"}, {}};
    for (int k = 0; k <= o.k; ++k) t.rows.push_back({k, dim_irrep(k, N).get_str()});
    emit(t, o.output_format(), out);
}

void cmd_gram(const Options& o, std::ostream& out) {
    const int N = single_N(o);
    if (N < 2) throw InvalidArgument("N must be at least 2");
    if (o.k < 0) throw InvalidArgument("k must be non-negative");
    auto pattern = pattern_arg(o);
    if (pattern && static_cast<int>(pattern->size()) != o.k) throw InvalidArgument("--pattern length must equal --k");
    if (o.k > max_word_length(o.limits()))
        throw ResourceError(o.k, N, catalan(o.k / 2).get_ui(), max_word_length(o.limits()));
    auto g = gram_matrix(o.k, N, pattern);
    emit_matrix(g.pairings, g.entries, [](const mpz_class& v) { return v.get_str(); }, header_json(o, N, pattern),
                o.output_format(), out);
}

void cmd_wg(const Options& o, std::ostream& out) {
    const int N = single_N(o);
    auto pattern = pattern_arg(o);
    if (pattern && static_cast<int>(pattern->size()) != o.k) throw InvalidArgument("--pattern length must equal --k");
    auto table = weingarten_table(o.k, N, pattern, o.limits());
    auto extra = header_json(o, N, pattern);
    extra["determinant"] = table->determinant().get_str();
    emit_matrix(table->pairings(), table->wg_matrix(), [](const mpq_class& v) { return v.get_str(); }, extra,
                o.output_format(), out);
}

void cmd_moment(const Options& o, std::ostream& out) {
    auto P = polynomial_arg(o);
    std::optional<int> N;
    if (is_finite(P.model())) N = single_N(o);
    out << state_eval(P, N, o.limits()).to_string() << '\n';
}

void cmd_lp(const Options& o, std::ostream& out) {
    auto P = polynomial_arg(o);
    std::optional<int> N;
    if (is_finite(P.model())) {
        N = single_N(o);
        if (o.scale) P = scaled_generators(P, *N);
    }
    if (o.p.empty()) throw InvalidArgument("lp needs --p");
    Table t{{"p", "moment", "lp"}, {}};
    for (int p : o.p) {
        if (p < 2 || p % 2 != 0) throw InvalidArgument("p must be an even integer >= 2");
        mpq_class m = lp_moment(P, p / 2, N, o.limits());
        t.rows.push_back({p, m.get_str(), real_cell(rational_root(m, static_cast<unsigned long>(p), o.bits))});
    }
    emit(t, o.output_format(), out);
}

void cmd_dn(const Options& o, std::ostream& out) {
    std::vector<int> Ns = o.N.empty() ? std::vector<int>{3, 5, 10, 20, 50} : o.N;
    Table t{{"N", "scanned_max", "rigorous_upper", "tail_error", "argmax_n", "argmax_k", "argmax_l", "argmax_r"}, {}};
    for (int N : Ns) {
        auto b = dn_constant(N, Truncation{o.r_max, o.side_max}, o.bits);
        t.rows.push_back({N, real_cell(b.value), real_cell(b.rigorous_upper), real_cell(b.tail_error), b.argmax.n(),
                          b.argmax.k(), b.argmax.l(), b.argmax.r});
    }
    emit(t, o.output_format(), out);
}

void cmd_selectp(const Options& o, std::ostream& out) {
    if (o.degree < 0) throw InvalidArgument("degree must be non-negative");
    const BigReal epsilon = parse_real(o.epsilon, o.bits, Round::down);
    if (!(epsilon > 0L)) throw InvalidArgument("epsilon must be positive");
    const BigReal d_star = selector_d_star(o.bits);
    auto sel = select_p(o.degree, epsilon, d_star);
    Table t{{"degree", "epsilon", "m", "p", "achieved", "d_star"}, {}};
    t.rows.push_back({o.degree, o.epsilon, sel.m, sel.p, real_cell(sel.achieved), real_cell(d_star)});
    emit(t, o.output_format(), out);
}

void cmd_converge(const Options& o, std::ostream& out) {
    SweepConfig config;
    config.polynomial = o.polynomial;
    config.N_list = o.N.empty() ? std::vector<int>{4, 8, 16} : o.N;
    config.p_list = o.p.empty() ? std::vector<int>{2, 4} : o.p;
    config.output = o.out;
    config.format = o.output_format();
    config.rd = !o.no_rd;
    config.limits = o.limits();
    config.precision_bits = o.bits;
    auto rows = run_converge(config);
    if (config.format == OutputFormat::json) write_json(config, rows, out);
    else write_csv(rows, config.precision_bits, out);
}

int cmd_check(std::ostream& out) {
    auto results = run_invariant_suite();
    bool all = true;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << '\n';
        all = all && r.passed;
    }
    return all ? exit_ok : exit_check_failed;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Free quantum group Weingarten moments, free limits and rapid-decay bounds", "freeqg"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    Options o;
    app.add_option("--model", o.model, "o+, u+ or limit")->check(CLI::IsMember({"o+", "u+", "limit"}));
    app.add_option("--N", o.N, "dimension(s), comma separated")->delimiter(',');
    app.add_option("--p", o.p, "even exponent(s), comma separated")->delimiter(',');
    app.add_option("--kmax", o.k_max, "largest word length for full Weingarten tables")->capture_default_str();
    app.add_option("--solve-kmax", o.solve_k_max, "largest word length for per-moment exact solves")
        ->capture_default_str();
    app.add_option("--out", o.out, "output file (default: standard output)");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--bits", o.bits, "binary precision of real outputs")->capture_default_str()->check(CLI::Range(16, 1 << 16));
    app.fallthrough();

    auto* dim = app.add_subcommand("dim", "quantum dimensions [k+1]_q for k = 0..K");
    dim->add_option("--k", o.k, "largest k")->default_val(10);
    auto* gram = app.add_subcommand("gram", "Gram matrix of (colored) non-crossing pairings");
    gram->add_option("--k", o.k, "number of points")->required();
    gram->add_option("--pattern", o.pattern, "color pattern over {1,*} for u+");
    auto* wg = app.add_subcommand("wg", "exact Weingarten matrix");
    wg->add_option("--k", o.k, "number of points")->required();
    wg->add_option("--pattern", o.pattern, "color pattern over {1,*} for u+");
    auto* moment = app.add_subcommand("moment", "Haar state or free-limit state of a polynomial");
    moment->add_option("polynomial", o.polynomial)->required();
    auto* lp = app.add_subcommand("lp", "L^p norms h((a* a)^{p/2})^{1/p}");
    lp->add_option("polynomial", o.polynomial)->required();
    lp->add_flag("--scale", o.scale, "substitute sqrt(N) u_ij for x_ij first");
    auto* dn = app.add_subcommand("dn", "rapid-decay constants D_N");
    dn->add_option("--r-max", o.r_max)->capture_default_str();
    dn->add_option("--side-max", o.side_max)->capture_default_str();
    auto* selectp = app.add_subcommand("selectp", "smallest p = 4m meeting the (1 + epsilon) selector bound");
    selectp->add_option("--degree", o.degree)->required();
    selectp->add_option("--epsilon", o.epsilon)->required();
    auto* converge = app.add_subcommand("converge", "finite-N versus free-limit L^p sweep");
    converge->add_option("polynomial", o.polynomial)->required();
    converge->add_flag("--no-rd", o.no_rd, "skip the rd_bound column");
    auto* check = app.add_subcommand("check", "run the invariant suite");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << o.out << " for writing\n";
            return exit_usage;
        }
    }
    std::ostream& sink = o.out.empty() ? out : file;

    try {
        if (*dim) cmd_dim(o, sink);
        else if (*gram) cmd_gram(o, sink);
        else if (*wg) cmd_wg(o, sink);
        else if (*moment) cmd_moment(o, sink);
        else if (*lp) cmd_lp(o, sink);
        else if (*dn) cmd_dn(o, sink);
        else if (*selectp) cmd_selectp(o, sink);
        else if (*converge) cmd_converge(o, sink);
        else if (*check) return cmd_check(sink);
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "; raise --kmax or --solve-kmax\n";
        return exit_resource;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    sink.flush();
    return exit_ok;
}

namespace {

using Check = std::pair<std::string, std::function<std::string()>>;

// Each check returns an empty string on success, otherwise a description of
// the first counterexample.
std::vector<Check> invariant_checks() {
    std::vector<Check> checks;
    checks.emplace_back("dimension identity under fusion, n,k <= 12, N = 3..10", []() -> std::string {
        for (int N = 3; N <= 10; ++N)
            for (int n = 0; n <= 12; ++n)
                for (int k = 0; k <= 12; ++k) {
                    mpz_class sum = 0;
                    for (int l : fusion_summands(n, k)) sum += dim_irrep(l, N);
                    if (sum != dim_irrep(n, N) * dim_irrep(k, N))
                        return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " N=" + std::to_string(N);
                }
        return std::string();
    });
    checks.emplace_back("q-integers increase in a and N", []() -> std::string {
        for (int N = 2; N <= 10; ++N)
            for (int a = 1; a < 40; ++a)
                if (!(q_int(a + 1, N) > q_int(a, N)) || !(q_int(a + 1, N + 1) > q_int(a + 1, N)))
                    return "a=" + std::to_string(a) + " N=" + std::to_string(N);
        return std::string();
    });
    checks.emplace_back("pairing counts are Catalan numbers, k <= 16", []() -> std::string {
        for (int k = 0; k <= 16; k += 2)
            if (mpz_class(enumerate_nc_pairings(k).size()) != catalan(k / 2)) return "k=" + std::to_string(k);
        return std::string();
    });
    checks.emplace_back("Gram symmetric and wg * gram = I, k <= 8, N = 2..6", []() -> std::string {
        const std::vector<ColorPattern> patterns = {parse_color_pattern("1*1*1*"), parse_color_pattern("11**")};
        for (int N = 2; N <= 6; ++N) {
            for (int k = 0; k <= 8; k += 2) {
                auto t = weingarten_table(k, N);
                if (!t->gram().is_symmetric()) return "asymmetric gram k=" + std::to_string(k);
                auto prod = multiply(t->wg_matrix(), to_rational(t->gram()));
                if (!(prod == Matrix<mpq_class>::identity(t->size())))
                    return "k=" + std::to_string(k) + " N=" + std::to_string(N);
            }
            for (const auto& pattern : patterns) {
                auto t = weingarten_table(static_cast<int>(pattern.size()), N, pattern);
                auto prod = multiply(t->wg_matrix(), to_rational(t->gram()));
                if (!(prod == Matrix<mpq_class>::identity(t->size()))) return "pattern " + to_string(pattern);
            }
        }
        return std::string();
    });
    checks.emplace_back("unitarity contraction, words of length <= 4, N <= 4", []() -> std::string {
        for (int N = 2; N <= 4; ++N)
            for (int len = 2; len <= 4; ++len) {
                // All orthogonal words over indices {1, 2}.
                const std::size_t count = std::size_t{1} << (2 * len);
                for (std::size_t code = 0; code < count; ++code) {
                    Word w;
                    for (int i = 0; i < len; ++i)
                        w.push_back({static_cast<std::uint32_t>(1 + ((code >> (2 * i)) & 1)),
                                     static_cast<std::uint32_t>(1 + ((code >> (2 * i + 1)) & 1)), Color::plain});
                    GeneratorWord g{w, Model::orthogonal};
                    for (std::size_t pos = 0; pos + 1 < w.size(); ++pos)
                        if (unitarity_contraction(g, N, pos) != contracted_reference(g, N, pos))
                            return to_string(w, Model::orthogonal) + " N=" + std::to_string(N);
                }
            }
        return std::string();
    });
    checks.emplace_back("Haar state is tracial on words of length <= 6, N = 3", []() -> std::string {
        const Word w = {{1, 1}, {1, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 1}};
        MomentEvaluator h(Model::orthogonal, 3);
        for (std::size_t shift = 1; shift < w.size(); ++shift) {
            Word r(w.begin() + static_cast<long>(shift), w.end());
            r.insert(r.end(), w.begin(), w.begin() + static_cast<long>(shift));
            if (h(r) != h(w)) return "shift " + std::to_string(shift);
        }
        return std::string();
    });
    checks.emplace_back("single-label semicircular moments are Catalan, k <= 16", []() -> std::string {
        for (int k = 0; k <= 16; ++k) {
            Word w(static_cast<std::size_t>(k), Letter{1, 1, Color::plain});
            if (semicircular_moment(w) != semicircle_moment_single(k)) return "k=" + std::to_string(k);
        }
        return std::string();
    });
    checks.emplace_back("factorial and product three-vertex forms agree, n,k <= 10, N = 3..6", []() -> std::string {
        for (int N = 3; N <= 6; ++N)
            for (int n = 0; n <= 10; ++n)
                for (int k = 0; k <= 10; ++k)
                    for (int r = 0; r <= std::min(n, k); ++r) {
                        ThreeVertexParams t{n, k, n + k - 2 * r};
                        auto f = three_vertex_norm_inv_factorial(t, N);
                        if (f != three_vertex_norm_inv_product(t, N) || f < 1)
                            return "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(t.l) + ")";
                    }
        return std::string();
    });
    checks.emplace_back("D_N bracket: 1 <= scanned <= rigorous upper, N = 3, 5, 10", []() -> std::string {
        for (int N : {3, 5, 10}) {
            auto b = dn_constant(N);
            if (b.value < 1L || !(b.value <= b.rigorous_upper)) return "N=" + std::to_string(N);
        }
        return std::string();
    });
    checks.emplace_back("select_p returns the minimal m", []() -> std::string {
        const BigReal d_star = selector_d_star();
        for (int degree : {0, 1, 2, 4})
            for (const char* eps : {"0.1", "0.5", "1"}) {
                BigReal epsilon = parse_real(eps, BigReal::default_bits, Round::down);
                auto sel = select_p(degree, epsilon, d_star);
                BigReal target = add(BigReal(1L, BigReal::default_bits), epsilon, Round::down);
                if (!(selector_bound(degree, sel.m, d_star) <= target)) return "bound fails";
                if (sel.m > 1 && selector_bound(degree, sel.m - 1, d_star, Round::down) <= target) return "not minimal";
            }
        return std::string();
    });
    checks.emplace_back("rd_check holds for sqrt(N) u11, N = 3..6, p = 2, 4, 8", []() -> std::string {
        for (int N = 3; N <= 6; ++N) {
            auto P = scaled_generators(parse_polynomial("x[1,1]"), N);
            if (!rd_check(P, N, {2, 4, 8}).all_hold()) return "N=" + std::to_string(N);
        }
        return std::string();
    });
    return checks;
}

} // namespace

std::vector<CheckResult> run_invariant_suite() {
    std::vector<CheckResult> results;
    for (const auto& [name, run] : invariant_checks()) {
        CheckResult r{name, false, {}};
        try {
            r.detail = run();
            r.passed = r.detail.empty();
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace freeqg
