#include "cli_app.hpp"

#include "spider/bessel_law.hpp"
#include "spider/combinatorics.hpp"
#include "spider/d_factor.hpp"
#include "spider/laplace_inversion.hpp"
#include "spider/mgf.hpp"
#include "spider/moments.hpp"
#include "spider/quadrature.hpp"
#include "spider/sector.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace spider::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- helpers

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// ------------------------------------------------------- TOML subset input

struct TomlValue {
    enum class Kind { String, Number, Bool, Array } kind;
    std::string str;
    double num = 0;
    bool flag = false;
    std::vector<TomlValue> items;
};

class TomlParser {
public:
    explicit TomlParser(std::istream& in) : in_(in) {}

    std::map<std::string, TomlValue> parse() {
        std::map<std::string, TomlValue> out;
        std::string section;
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            const std::string t = trim(strip_comment(line));
            if (t.empty()) continue;
            if (t.front() == '[') {
                if (t.back() != ']') fail("unterminated section header");
                section = trim(t.substr(1, t.size() - 2));
                if (section.empty()) fail("empty section name");
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos) fail("expected key = value");
            const std::string key = trim(t.substr(0, eq));
            if (key.empty()) fail("empty key");
            std::string rest = trim(t.substr(eq + 1));
            // multi-line arrays: keep reading until brackets balance
            while (!balanced(rest)) {
                std::string more;
                if (!std::getline(in_, more)) fail("unterminated array");
                ++lineno_;
                rest += trim(strip_comment(more));
            }
            size_t pos = 0;
            TomlValue v = parse_value(rest, pos);
            if (pos != rest.size()) fail("trailing characters after value");
            out[section.empty() ? key : section + "." + key] = std::move(v);
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("config line " + std::to_string(lineno_) + ": " + what);
    }

    static std::string strip_comment(const std::string& line) {
        bool in_str = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) return line.substr(0, i);
        }
        return line;
    }

    static bool balanced(const std::string& s) {
        int depth = 0;
        bool in_str = false;
        for (char c : s) {
            if (c == '"') in_str = !in_str;
            if (in_str) continue;
            if (c == '[') ++depth;
            if (c == ']') --depth;
        }
        return depth <= 0;
    }

    TomlValue parse_value(const std::string& s, size_t& pos) {
        skip_ws(s, pos);
        if (pos >= s.size()) fail("missing value");
        TomlValue v;
        if (s[pos] == '"') {
            v.kind = TomlValue::Kind::String;
            ++pos;
            while (pos < s.size() && s[pos] != '"') v.str.push_back(s[pos++]);
            if (pos >= s.size()) fail("unterminated string");
            ++pos;
            return v;
        }
        if (s[pos] == '[') {
            v.kind = TomlValue::Kind::Array;
            ++pos;
            skip_ws(s, pos);
            if (pos < s.size() && s[pos] == ']') {
                ++pos;
                return v;
            }
            while (true) {
                v.items.push_back(parse_value(s, pos));
                skip_ws(s, pos);
                if (pos < s.size() && s[pos] == ',') {
                    ++pos;
                    skip_ws(s, pos);
                    if (pos < s.size() && s[pos] == ']') { ++pos; break; }  // trailing comma
                    continue;
                }
                if (pos < s.size() && s[pos] == ']') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ']' in array");
            }
            return v;
        }
        // bare token: bool or number
        size_t start = pos;
        while (pos < s.size() && s[pos] != ',' && s[pos] != ']' && !std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        const std::string tok = s.substr(start, pos - start);
        if (tok == "true" || tok == "false") {
            v.kind = TomlValue::Kind::Bool;
            v.flag = (tok == "true");
            return v;
        }
        try {
            size_t used = 0;
            v.num = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail("cannot parse value '" + tok + "'");
        }
        v.kind = TomlValue::Kind::Number;
        v.str = tok;  // keep the literal for exact rational reparsing
        return v;
    }

    static void skip_ws(const std::string& s, size_t& pos) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    std::istream& in_;
    long lineno_ = 0;
};

Rational rational_of(const TomlValue& v, const std::string& key) {
    if (v.kind == TomlValue::Kind::String || v.kind == TomlValue::Kind::Number)
        return Rational::parse(v.str.empty() ? fmt(v.num) : v.str);
    throw std::runtime_error("config key '" + key + "': expected a rational");
}

double number_of(const TomlValue& v, const std::string& key) {
    if (v.kind == TomlValue::Kind::Number) return v.num;
    throw std::runtime_error("config key '" + key + "': expected a number");
}

}  // namespace

double parse_angle(const std::string& token) {
    const std::string t = trim(token);
    const auto pi_pos = t.find("pi");
    if (pi_pos == std::string::npos) return std::stod(t);
    double mult = 1.0;
    const std::string before = trim(t.substr(0, pi_pos));
    if (!before.empty()) mult = std::stod(before);
    double div = 1.0;
    std::string after = trim(t.substr(pi_pos + 2));
    if (!after.empty()) {
        if (after.front() != '/') throw std::invalid_argument("bad angle '" + token + "'");
        div = std::stod(after.substr(1));
    }
    return mult * std::numbers::pi / div;
}

RunSpec load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    TomlParser parser(in);
    const auto values = parser.parse();

    RunSpec spec;
    for (const auto& [key, v] : values) {
        if (key == "spider.nu") {
            spec.nu = rational_of(v, key);
        } else if (key == "spider.beta") {
            if (v.kind != TomlValue::Kind::Array) throw std::runtime_error("spider.beta: expected array");
            for (const auto& item : v.items) spec.beta.push_back(rational_of(item, key));
        } else if (key == "spider.sectors") {
            if (v.kind != TomlValue::Kind::Array) throw std::runtime_error("spider.sectors: expected array");
            for (const auto& item : v.items)
                spec.sector_boundaries.push_back(
                    item.kind == TomlValue::Kind::String ? parse_angle(item.str) : item.num);
        } else if (key == "query.idx") {
            if (v.kind != TomlValue::Kind::Array) throw std::runtime_error("query.idx: expected array");
            const bool nested = !v.items.empty() && v.items.front().kind == TomlValue::Kind::Array;
            if (nested) {
                for (const auto& row : v.items) {
                    std::vector<int> idx;
                    for (const auto& item : row.items)
                        idx.push_back(static_cast<int>(number_of(item, key)));
                    spec.indices.push_back(std::move(idx));
                }
            } else {
                std::vector<int> idx;
                for (const auto& item : v.items) idx.push_back(static_cast<int>(number_of(item, key)));
                spec.indices.push_back(std::move(idx));
            }
        } else if (key == "query.lambda") {
            spec.lambda = number_of(v, key);
        } else if (key == "query.z") {
            if (v.kind != TomlValue::Kind::Array) throw std::runtime_error("query.z: expected array");
            for (const auto& item : v.items) spec.z.push_back(number_of(item, key));
        } else if (key == "query.order") {
            spec.series_order = static_cast<int>(number_of(v, key));
        } else if (key == "sim.steps") {
            spec.step = number_of(v, key);
        } else if (key == "sim.eps") {
            spec.eps = number_of(v, key);
        } else if (key == "sim.reps") {
            spec.reps = static_cast<long>(number_of(v, key));
        } else if (key == "sim.seed") {
            spec.seed = static_cast<std::uint64_t>(number_of(v, key));
        } else if (key == "sim.threads") {
            spec.threads = static_cast<int>(number_of(v, key));
        } else if (key == "output.path") {
            spec.out_path = v.str;
        } else if (key == "output.format") {
            spec.format = v.str;
        } else {
            throw std::runtime_error("unknown config key '" + key + "'");
        }
    }
    return spec;
}

namespace {

// --------------------------------------------------------- input assembly

struct Inputs {
    Rational nu;
    SpiderConfig config;
    std::vector<MultiIndex> indices;
};

SpiderConfig build_config(const RunSpec& spec) {
    if (!spec.sector_boundaries.empty()) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        return sector_weights([](double a) { return a / two_pi; }, spec.sector_boundaries);
    }
    if (spec.beta.empty())
        throw std::invalid_argument("no spider weights: give --beta or --sectors (or [spider] in a config)");
    return SpiderConfig(spec.beta);
}

Inputs build_inputs(const RunSpec& spec, bool need_indices) {
    if (!spec.nu) throw std::invalid_argument("--nu is required (rational in (-1,0), e.g. -1/2)");
    BesselOrder order(*spec.nu);  // validates the range
    SpiderConfig config = build_config(spec);
    std::vector<MultiIndex> indices;
    for (const auto& row : spec.indices) {
        MultiIndex idx = MultiIndex::dense(row);
        if (idx.empty()) throw std::invalid_argument("a multi-index must have a positive exponent");
        idx.validate_against(config);
        indices.push_back(std::move(idx));
    }
    if (need_indices && indices.empty())
        throw std::invalid_argument("no multi-index given: pass --idx n1,n2,... (repeatable)");
    return {order.nu(), std::move(config), std::move(indices)};
}

// ------------------------------------------------------------ output layer

ordered_json config_json(const Inputs& in, const RunSpec& spec) {
    ordered_json cfg;
    cfg["command"] = spec.command;
    cfg["nu"] = in.nu.to_string();
    ordered_json betas = ordered_json::array();
    for (const auto& b : in.config.weights()) betas.push_back(b.to_string());
    cfg["beta"] = betas;
    cfg["legs"] = in.config.leg_count();
    if (spec.command == "simulate") {
        cfg["steps"] = spec.step;
        cfg["eps"] = spec.eps;
        cfg["reps"] = spec.reps;
        cfg["seed"] = spec.seed;
    }
    return cfg;
}

ordered_json check_json(const CheckResult& c) {
    ordered_json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["tolerance"] = c.tolerance;
    j["achieved"] = c.achieved;
    j["detail"] = c.detail;
    return j;
}

struct Report {
    ordered_json config;
    ordered_json engine_results = ordered_json::array();
    std::vector<CheckResult> checks;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;

    ordered_json to_json() const {
        ordered_json j;
        j["config"] = config;
        j["engine_results"] = engine_results;
        ordered_json cs = ordered_json::array();
        for (const auto& c : checks) cs.push_back(check_json(c));
        j["checks"] = cs;
        return j;
    }

    std::string to_csv() const {
        std::ostringstream os;
        for (size_t i = 0; i < csv_header.size(); ++i) os << (i ? "," : "") << csv_header[i];
        os << "\n";
        for (const auto& row : csv_rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "");
                const bool quote = row[i].find(',') != std::string::npos;
                if (quote) os << '"' << row[i] << '"';
                else os << row[i];
            }
            os << "\n";
        }
        return os.str();
    }
};

int write_report(const Report& report, const RunSpec& spec, std::ostream& err) {
    if (spec.out_path.empty()) return 0;
    std::ofstream out(spec.out_path, std::ios::binary);
    if (!out) {
        err << "error: cannot write to '" << spec.out_path << "'\n";
        return 2;
    }
    if (spec.format == "csv")
        out << report.to_csv();
    else
        out << report.to_json().dump(2) << "\n";
    return 0;
}

// ------------------------------------------------- random draw utilities

Rational random_nu(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> qd(2, 40);
    const int q = qd(rng);
    std::uniform_int_distribution<int> pd(1, q - 1);
    return Rational(-pd(rng), q);
}

SpiderConfig random_config(std::mt19937_64& rng, int legs) {
    std::uniform_int_distribution<long> wd(1, 20);
    std::vector<long> w(static_cast<size_t>(legs));
    long total = 0;
    for (auto& x : w) {
        x = wd(rng);
        total += x;
    }
    std::vector<Rational> beta;
    beta.reserve(w.size());
    for (long x : w) beta.emplace_back(x, total);
    return SpiderConfig(std::move(beta));
}

// All exponent vectors over `legs` entries with total order in [1, max_total].
void enumerate_indices(int legs, int max_total, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<size_t>(legs), 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == legs) {
            if (remaining < max_total) out.push_back(cur);  // at least order 1 consumed
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<size_t>(pos)] = e;
            rec(pos + 1, remaining - e);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    rec(0, max_total);
}

}  // namespace

// ------------------------------------------------------------- the checks

namespace checks {

CheckResult stirling_identities(int max_n, int max_bessel_n) {
    long tested = 0;
    for (int n = 1; n <= max_n; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int m = 0; k + m <= n; ++m) {
                BigInt lhs1 = 0, lhs2 = 0;
                for (int i = k; i <= n - m; ++i) {
                    lhs1 += stirling1(i, k) * stirling1(n - i, m) * binomial(n, i);
                    lhs2 += stirling1(i + 1, k + 1) * stirling1(n - i, m) * binomial(n, i);
                }
                if (lhs1 != binomial(k + m, k) * stirling1(n, k + m))
                    return {"stirling-identities", false, 0, 1,
                            "first convolution fails at n=" + std::to_string(n)};
                if (lhs2 != binomial(k + m, k) * stirling1(n + 1, k + m + 1))
                    return {"stirling-identities", false, 0, 1,
                            "second convolution fails at n=" + std::to_string(n)};
                tested += 2;
            }
            BigInt lhs3 = 0, lhs4 = 0;
            for (int i = k; i <= n; ++i) {
                lhs3 += stirling2(i, k) * binomial(n, i);
                if (i >= 1) lhs4 += stirling2(i, k) * binomial(n, i - 1);
            }
            if (lhs3 != stirling2(n + 1, k + 1))
                return {"stirling-identities", false, 0, 1,
                        "second-kind binomial sum fails at n=" + std::to_string(n)};
            if (lhs4 != k * stirling2(n + 1, k + 1))
                return {"stirling-identities", false, 0, 1,
                        "shifted second-kind sum fails at n=" + std::to_string(n)};
            tested += 2;
        }
    }
    for (int n = 1; n <= max_bessel_n; ++n) {
        for (int k = 1; k <= n; ++k) {
            BigInt acc = 0;
            BigInt pow_m2 = 1;  // (-2)^(n-i) built backwards
            for (int i = n; i >= k; --i) {
                acc += stirling1(n, i) * stirling2(i, k) * pow_m2;
                pow_m2 *= -2;
            }
            if (acc != bessel_number(n, k))
                return {"stirling-identities", false, 0, 1,
                        "Bessel-number identity fails at (n,k)=(" + std::to_string(n) + "," +
                            std::to_string(k) + ")"};
            ++tested;
        }
    }
    return {"stirling-identities", true, 0, 0,
            std::to_string(tested) + " identity instances, all exact"};
}

CheckResult three_way_engine_equality(int num_configs, int max_total, int max_legs,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> rows;
    enumerate_indices(max_legs, max_total, rows);
    long comparisons = 0;
    for (int c = 0; c < num_configs; ++c) {
        const Rational nu = random_nu(rng);
        const SpiderConfig config = random_config(rng, max_legs);
        const auto closed_provider = DFactorProvider::closed_form(nu, config);
        const SpiderConfig half_config = config;  // same weights, Brownian order
        const Rational half(-1, 2);
        const auto half_provider = DFactorProvider::closed_form(half, half_config);
        for (const auto& row : rows) {
            const MultiIndex idx = MultiIndex::dense(row);
            const Rational a = joint_moment_closed(nu, config, idx);
            const Rational b = joint_moment_recursive(closed_provider, config, idx);
            if (a != b)
                return {"three-way-engine-equality", false, 0, 1,
                        "closed != recursive at nu=" + nu.to_string() + ", idx=" + idx.to_string()};
            const Rational ah = joint_moment_closed(half, half_config, idx);
            const Rational bh = joint_moment_recursive(half_provider, half_config, idx);
            const Rational ch = brownian_joint_moment(half_config, idx);
            if (ah != ch || bh != ch)
                return {"three-way-engine-equality", false, 0, 1,
                        "Brownian form disagrees at idx=" + idx.to_string()};
            comparisons += 5;
        }
    }
    return {"three-way-engine-equality", true, 0, 0,
            std::to_string(comparisons) + " exact comparisons over " + std::to_string(num_configs) +
                " random configurations"};
}

CheckResult first_moment_corollary(int max_r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int r = 1; r <= max_r; ++r) {
        const Rational nu = random_nu(rng);
        const SpiderConfig config = random_config(rng, r);
        const MultiIndex idx = MultiIndex::dense(std::vector<int>(static_cast<size_t>(r), 1));
        Rational expected = pow(-nu, r - 1);
        for (int i = 0; i < r; ++i) expected *= config.beta(i);
        const auto provider = DFactorProvider::closed_form(nu, config);
        if (joint_moment_closed(nu, config, idx) != expected ||
            joint_moment_recursive(provider, config, idx) != expected)
            return {"first-moment-corollary", false, 0, 1, "mismatch at r=" + std::to_string(r)};
    }
    return {"first-moment-corollary", true, 0, 0,
            "product first moments exact for r <= " + std::to_string(max_r)};
}

CheckResult arcsine_reproduction(int max_n, double quad_tol) {
    const Rational nu(-1, 2), beta(1, 2);
    double worst = 0;
    for (int n = 1; n <= max_n; ++n) {
        const Rational expected(binomial(2 * static_cast<unsigned long>(n), static_cast<unsigned long>(n)),
                                pow(Rational(4), n).num());
        if (single_moment_closed(nu, beta, n) != expected)
            return {"arcsine-moments", false, 0, 1, "exact arcsine moment fails at n=" + std::to_string(n)};
        // Independent oracle: E[A^n] = int_0^1 x^n / (pi sqrt(x(1-x))) dx.
        const auto quad = integrate(
            [n](double x) {
                return std::pow(x, n) / (std::numbers::pi * std::sqrt(x * (1.0 - x)));
            },
            0.0, 1.0, 1e-12);
        worst = std::max(worst, std::fabs(quad.value - expected.to_double()));
    }
    return {"arcsine-moments", worst <= quad_tol, quad_tol, worst,
            "moments equal binom(2n,n)/4^n exactly for n <= " + std::to_string(max_n) +
                "; quadrature oracle max deviation " + fmt(worst, "%.3g")};
}

CheckResult d_factor_agreement(const std::vector<Rational>& nus, const std::vector<double>& lambdas,
                               int max_k, double tol_low, double tol_high) {
    const Rational beta(1, 2);
    double worst_ratio = 0;
    std::string worst_at = "-";
    for (const auto& nu : nus) {
        const BesselLaw law{BesselOrder(nu)};
        for (int k = 1; k <= max_k; ++k) {
            const double tol = (k <= 2) ? tol_low : tol_high;
            const double closed = d_factor_closed(nu, beta, k).to_double();
            for (double lambda : lambdas) {
                const double numeric = d_factor_numeric(law, beta.to_double(), k, lambda);
                const double ratio = std::fabs(numeric - closed) / tol;
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    worst_at = "nu=" + nu.to_string() + ", k=" + std::to_string(k) +
                               ", lambda=" + fmt(lambda, "%g") + ", |diff|=" +
                               fmt(std::fabs(numeric - closed), "%.3g");
                }
            }
        }
    }
    return {"d-factor-quadrature", worst_ratio <= 1.0, 1.0, worst_ratio,
            "max |numeric-closed|/tol at " + worst_at + " (lambda-independence grid)"};
}

CheckResult mgf_quadrature_agreement(const std::vector<Rational>& nus,
                                     const std::vector<double>& lambdas,
                                     const std::vector<double>& z_grid, double tol) {
    const SpiderConfig config({Rational(1, 3), Rational(2, 3)});
    double worst = 0;
    for (const auto& nu : nus) {
        const BesselLaw law{BesselOrder(nu)};
        for (double lambda : lambdas) {
            for (double z1 : z_grid) {
                for (double z2 : z_grid) {
                    const MgfQuery query(lambda, {{0, z1}, {1, z2}});
                    const double closed = mgf_bessel_closed(nu, config, query);
                    const double quad = mgf_general_quadrature(law, config, query);
                    worst = std::max(worst, std::fabs(closed - quad));
                }
            }
        }
    }
    return {"mgf-quadrature-agreement", worst <= tol, tol, worst,
            "max |closed - quadrature| over the z-grid"};
}

CheckResult mgf_series_cross_check(int max_total, bool wrong_ratio, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Rational nu = random_nu(rng);
    const SpiderConfig config = random_config(rng, 3);
    SeriesMomentsOptions options;
    if (wrong_ratio) options.ratio_exponent_slope = Rational(-1, 2);

    const auto moments = mgf_series_moments(nu, config, max_total, {0, 1, 2}, options);
    long compared = 0;
    for (const auto& [idx, value] : moments) {
        if (value != joint_moment_closed(nu, config, idx))
            return {"mgf-series-cross-check", false, 0, 1,
                    std::string(wrong_ratio ? "[injected -nu/2 ratio] " : "") +
                        "series moment != closed moment at idx=" + idx.to_string() +
                        " (nu=" + nu.to_string() + ")"};
        ++compared;
    }
    // Subset extraction must agree as well.
    const auto subset = mgf_series_moments(nu, config, std::min(max_total, 4), {0, 2}, options);
    for (const auto& [idx, value] : subset) {
        if (value != joint_moment_closed(nu, config, idx))
            return {"mgf-series-cross-check", false, 0, 1,
                    std::string(wrong_ratio ? "[injected -nu/2 ratio] " : "") +
                        "subset series moment mismatch at idx=" + idx.to_string()};
        ++compared;
    }
    return {"mgf-series-cross-check", true, 0, 0,
            std::to_string(compared) + " series-extracted moments equal the closed formula exactly"};
}

CheckResult laplace_engine_consistency(int max_total, const std::vector<Rational>& lambdas,
                                       std::uint64_t seed, bool paper_literal) {
    std::mt19937_64 rng(seed);
    const Rational nu = random_nu(rng);
    const SpiderConfig config = random_config(rng, 3);
    const auto provider = DFactorProvider::closed_form(nu, config);
    std::vector<std::vector<int>> rows;
    enumerate_indices(3, max_total, rows);
    long compared = 0;
    for (const auto& row : rows) {
        const MultiIndex idx = MultiIndex::dense(row);
        const int total = idx.total_order();
        const Rational closed = joint_moment_closed(nu, config, idx);
        const Rational nfact(factorial(static_cast<unsigned long>(total)));
        for (const auto& lambda : lambdas) {
            const Rational transform =
                laplace_joint_moment_exact(provider, config, idx, lambda, paper_literal);
            if (transform * pow(lambda, total + 1) / nfact != closed)
                return {"laplace-self-similarity", false, 0, 1,
                        "transform * lambda^(N+1)/N! != moment at idx=" + idx.to_string() +
                            ", lambda=" + lambda.to_string()};
            ++compared;
        }
    }
    return {"laplace-self-similarity", true, 0, 0,
            std::to_string(compared) + " exact transform identities at " +
                std::to_string(lambdas.size()) + " lambda values"};
}

CheckResult stehfest_inversion(double rel_tol) {
    // F(lambda) = N! m / lambda^(N+1)  <->  f(t) = m t^N
    const double m = 0.7;
    const int N = 3;
    double worst = 0;
    for (double t : {0.5, 1.5, 3.0}) {
        const double inverted = gaver_stehfest(
            [m](long double lam) {
                long double p = lam * lam * lam * lam;  // lambda^4
                return 6.0L * static_cast<long double>(m) / p;
            },
            t, 18);
        const double expected = m * std::pow(t, N);
        worst = std::max(worst, std::fabs(inverted - expected) / expected);
    }
    return {"stehfest-inversion", worst <= rel_tol, rel_tol, worst,
            "max relative error recovering m*t^3"};
}

std::vector<CheckResult> monte_carlo(double step, double eps, long reps, std::uint64_t seed,
                                     int threads, double bias_allowance) {
    std::vector<CheckResult> out;
    SimConfig sim(step, eps, 1.0, reps, seed);
    sim.threads = threads;

    const auto band_check = [&](const std::string& name, const MomentEstimate& est, double reference) {
        const double band = 3.0 * est.std_error + bias_allowance * std::fabs(reference);
        const double diff = std::fabs(est.mean - reference);
        const double zscore = est.std_error > 0 ? (est.mean - reference) / est.std_error : 0.0;
        return CheckResult{name, diff <= band, band, diff,
                           "estimate " + fmt(est.mean, "%.6g") + " vs " + fmt(reference, "%.6g") +
                               ", SE " + fmt(est.std_error, "%.3g") + ", z " + fmt(zscore, "%.2f")};
    };

    {
        const Rational nu(-1, 2);
        const SpiderConfig config({Rational(1, 2), Rational(1, 2)});
        const BesselLaw law{BesselOrder(nu)};
        const std::vector<MultiIndex> indices = {MultiIndex::dense({1, 1}), MultiIndex::dense({2, 1})};
        const auto ests = estimate_joint_moments(law, config, indices, sim);
        out.push_back(band_check("mc-brownian-A1A2", ests[0],
                                 joint_moment_closed(nu, config, indices[0]).to_double()));
        out.push_back(band_check("mc-brownian-A1sqA2", ests[1],
                                 joint_moment_closed(nu, config, indices[1]).to_double()));
    }
    {
        const Rational nu(-1, 4);
        const SpiderConfig config({Rational(1, 3), Rational(2, 3)});
        const BesselLaw law{BesselOrder(nu)};
        const MultiIndex idx = MultiIndex::dense({1, 1});
        const auto est = estimate_joint_moment(law, config, idx, sim);
        out.push_back(band_check("mc-bessel-quarter-A1A2", est,
                                 joint_moment_closed(nu, config, idx).to_double()));
    }
    {
        const Rational nu(-1, 2);
        const SpiderConfig config({Rational(1, 2), Rational(1, 2)});
        const BesselLaw law{BesselOrder(nu)};
        const MgfQuery query(1.0, {{0, 1.0}, {1, 0.0}});
        const auto est = estimate_mgf(law, config, query, sim);
        const double reference = mgf_bessel_closed(nu, config, query);
        const double band = 3.0 * est.std_error;  // exponential horizon: SE-only band
        const double diff = std::fabs(est.mean - reference);
        out.push_back({"mc-mgf-exponential-time", diff <= band, band, diff,
                       "estimate " + fmt(est.mean, "%.6g") + " vs " + fmt(reference, "%.6g") +
                           ", SE " + fmt(est.std_error, "%.3g")});
    }
    return out;
}

}  // namespace checks

// ------------------------------------------------------------- commands

namespace {

std::string decimal(const Rational& r) { return r.to_decimal_string(30); }

}  // namespace

int cmd_moments(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    Inputs in = build_inputs(spec, /*need_indices=*/true);
    const bool brownian = (in.nu == Rational(-1, 2));
    const auto provider = DFactorProvider::closed_form(in.nu, in.config);

    int max_total = 0;
    for (const auto& idx : in.indices) max_total = std::max(max_total, idx.total_order());
    std::map<MultiIndex, Rational> series;
    const bool series_ok = max_total <= 10;
    if (series_ok) {
        std::vector<int> legs(static_cast<size_t>(in.config.leg_count()));
        for (int i = 0; i < in.config.leg_count(); ++i) legs[static_cast<size_t>(i)] = i;
        SeriesMomentsOptions options;
        if (spec.debug_wrong_c_ratio) options.ratio_exponent_slope = Rational(-1, 2);
        series = mgf_series_moments(in.nu, in.config, std::max(1, max_total), legs, options);
    }

    Report report;
    report.config = config_json(in, spec);
    report.csv_header = {"multi_index", "closed",   "closed_decimal",  "recursive",
                         "recursive_decimal",        "brownian", "brownian_decimal", "series",
                         "series_decimal"};

    out << "nu = " << in.nu.to_string() << ", beta = (";
    for (int i = 0; i < in.config.leg_count(); ++i)
        out << (i ? ", " : "") << in.config.beta(i).to_string();
    out << ")\n";

    for (const auto& idx : in.indices) {
        const Rational closed = joint_moment_closed(in.nu, in.config, idx);
        const Rational recursive = joint_moment_recursive(provider, in.config, idx);
        std::string brownian_str = "", brownian_dec = "";
        if (brownian) {
            const Rational b = brownian_joint_moment(in.config, idx);
            brownian_str = b.to_string();
            brownian_dec = decimal(b);
        }
        std::string series_str = "", series_dec = "";
        if (series_ok) {
            auto it = series.find(idx);
            if (it != series.end()) {
                series_str = it->second.to_string();
                series_dec = decimal(it->second);
            }
        }

        ordered_json row;
        row["index"] = idx.to_string();
        row["closed"] = closed.to_string();
        row["closed_decimal"] = decimal(closed);
        row["recursive"] = recursive.to_string();
        row["recursive_decimal"] = decimal(recursive);
        if (!brownian_str.empty()) {
            row["brownian"] = brownian_str;
            row["brownian_decimal"] = brownian_dec;
        }
        if (!series_str.empty()) {
            row["series"] = series_str;
            row["series_decimal"] = series_dec;
        }
        report.engine_results.push_back(row);
        report.csv_rows.push_back({idx.to_string(), closed.to_string(), decimal(closed),
                                   recursive.to_string(), decimal(recursive), brownian_str,
                                   brownian_dec, series_str, series_dec});

        out << "  " << idx.to_string() << "  closed=" << closed.to_string() << " ("
            << closed.to_decimal_string(12) << ")  recursive=" << recursive.to_string();
        if (!brownian_str.empty()) out << "  brownian=" << brownian_str;
        if (!series_str.empty()) out << "  series=" << series_str;
        out << "\n";
    }
    return write_report(report, spec, err);
}

int cmd_mgf(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    Inputs in = build_inputs(spec, /*need_indices=*/false);
    if (!(spec.lambda > 0)) throw std::invalid_argument("--lambda must be positive");
    std::vector<std::pair<int, double>> legs_z;
    for (int i = 0; i < in.config.leg_count(); ++i) {
        const double z = i < static_cast<int>(spec.z.size()) ? spec.z[static_cast<size_t>(i)] : 0.0;
        legs_z.emplace_back(i, z);
    }
    const MgfQuery query(spec.lambda, legs_z);
    const BesselLaw law{BesselOrder(in.nu)};

    const double closed = mgf_bessel_closed(in.nu, in.config, query);
    const double quad = mgf_general_quadrature(law, in.config, query);

    Report report;
    report.config = config_json(in, spec);
    report.csv_header = {"lambda", "z", "closed", "quadrature", "abs_diff"};
    std::string zs;
    for (size_t i = 0; i < legs_z.size(); ++i) zs += (i ? ";" : "") + fmt(legs_z[i].second, "%g");
    ordered_json row;
    row["lambda"] = spec.lambda;
    row["z"] = zs;
    row["closed"] = closed;
    row["quadrature"] = quad;
    row["abs_diff"] = std::fabs(closed - quad);
    report.engine_results.push_back(row);
    report.csv_rows.push_back({fmt(spec.lambda), zs, fmt(closed), fmt(quad), fmt(std::fabs(closed - quad))});

    out << "mgf at lambda=" << fmt(spec.lambda, "%g") << ", z=(" << zs << "): closed=" << fmt(closed, "%.12g")
        << ", quadrature=" << fmt(quad, "%.12g") << ", |diff|=" << fmt(std::fabs(closed - quad), "%.3g")
        << "\n";
    return write_report(report, spec, err);
}

int cmd_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    Inputs in = build_inputs(spec, /*need_indices=*/true);
    const double step = spec.step > 0 ? spec.step : 1e-4;
    const double eps = spec.eps > 0 ? spec.eps : 1e-2;
    const long reps = spec.reps > 0 ? spec.reps : 100000;
    SimConfig sim(step, eps, 1.0, reps, spec.seed);
    sim.threads = spec.threads;

    RunSpec echo = spec;
    echo.step = step;
    echo.eps = eps;
    echo.reps = reps;

    const BesselLaw law{BesselOrder(in.nu)};
    const auto estimates = estimate_joint_moments(law, in.config, in.indices, sim);

    Report report;
    report.config = config_json(in, echo);
    report.csv_header = {"statistic", "estimate", "std_error", "reference", "z_score"};

    out << "nu = " << in.nu.to_string() << ", beta = (";
    for (int i = 0; i < in.config.leg_count(); ++i)
        out << (i ? ", " : "") << in.config.beta(i).to_string();
    out << "), steps=" << fmt(step, "%g") << ", eps=" << fmt(eps, "%g") << ", reps=" << reps
        << ", seed=" << spec.seed << "\n";

    for (size_t q = 0; q < in.indices.size(); ++q) {
        const double reference = joint_moment_closed(in.nu, in.config, in.indices[q]).to_double();
        const auto& est = estimates[q];
        const double z = est.std_error > 0 ? (est.mean - reference) / est.std_error : 0.0;
        ordered_json row;
        row["statistic"] = in.indices[q].to_string();
        row["estimate"] = est.mean;
        row["std_error"] = est.std_error;
        row["reference"] = reference;
        row["z_score"] = z;
        report.engine_results.push_back(row);
        report.csv_rows.push_back(
            {in.indices[q].to_string(), fmt(est.mean), fmt(est.std_error), fmt(reference), fmt(z)});
        out << "  " << in.indices[q].to_string() << "  estimate=" << fmt(est.mean, "%.8g")
            << "  SE=" << fmt(est.std_error, "%.3g") << "  reference=" << fmt(reference, "%.8g")
            << "  z=" << fmt(z, "%.2f") << "\n";
    }

    const bool any_z = std::any_of(spec.z.begin(), spec.z.end(), [](double v) { return v != 0.0; });
    if (any_z) {
        std::vector<std::pair<int, double>> legs_z;
        for (int i = 0; i < in.config.leg_count(); ++i)
            legs_z.emplace_back(i, i < static_cast<int>(spec.z.size()) ? spec.z[static_cast<size_t>(i)]
                                                                       : 0.0);
        const MgfQuery query(spec.lambda, legs_z);
        const auto est = estimate_mgf(law, in.config, query, sim);
        const double reference = mgf_bessel_closed(in.nu, in.config, query);
        const double z = est.std_error > 0 ? (est.mean - reference) / est.std_error : 0.0;
        std::string name = "mgf(lambda=" + fmt(spec.lambda, "%g") + ")";
        ordered_json row;
        row["statistic"] = name;
        row["estimate"] = est.mean;
        row["std_error"] = est.std_error;
        row["reference"] = reference;
        row["z_score"] = z;
        report.engine_results.push_back(row);
        report.csv_rows.push_back({name, fmt(est.mean), fmt(est.std_error), fmt(reference), fmt(z)});
        out << "  " << name << "  estimate=" << fmt(est.mean, "%.8g") << "  SE="
            << fmt(est.std_error, "%.3g") << "  reference=" << fmt(reference, "%.8g") << "  z="
            << fmt(z, "%.2f") << "\n";
    }
    return write_report(report, spec, err);
}

int cmd_validate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    // The validation run exercises every cross-route the library has. The
    // default grids are sized for an interactive run; --full restores the
    // acceptance-scale grids everywhere.
    const bool full = spec.full_grids;

    std::vector<CheckResult> results;
    results.push_back(checks::stirling_identities(full ? 30 : 20, full ? 25 : 15));
    results.push_back(checks::three_way_engine_equality(full ? 20 : 6, full ? 8 : 6, full ? 4 : 3,
                                                        spec.seed ^ 0x5eed5eedULL));
    results.push_back(checks::first_moment_corollary(5, spec.seed ^ 0xc0ffeeULL));
    results.push_back(checks::arcsine_reproduction(10, 1e-10));
    {
        std::vector<Rational> nus = {Rational(-1, 2), Rational(-1, 4)};
        std::vector<double> lambdas = {1.0};
        if (full) {
            nus.push_back(Rational(-3, 4));
            lambdas = {0.5, 1.0, 2.0};
        }
        results.push_back(checks::d_factor_agreement(nus, lambdas, full ? 4 : 3, 1e-6, 1e-4));
    }
    {
        std::vector<Rational> nus = {Rational(-1, 2), Rational(-1, 4)};
        const std::vector<double> lambdas = full ? std::vector<double>{1.0, 2.0}
                                                 : std::vector<double>{1.0};
        const std::vector<double> z_grid = full ? std::vector<double>{0.1, 1.0, 5.0}
                                                : std::vector<double>{0.1, 1.0};
        results.push_back(checks::mgf_quadrature_agreement(nus, lambdas, z_grid, 1e-6));
    }

    if (spec.paper_literal) {
        // Single-leg transform request under the literal reading: refuse.
        try {
            checks::laplace_engine_consistency(2, {Rational(1)}, spec.seed, /*paper_literal=*/true);
            err << "error: paper-literal refusal did not trigger\n";
            return 1;
        } catch (const PaperLiteralRefusal& e) {
            err << "refused: " << e.what() << "\n";
            return 2;
        }
    }

    results.push_back(checks::mgf_series_cross_check(full ? 6 : 5, spec.debug_wrong_c_ratio,
                                                     spec.seed ^ 0xabcdULL));
    results.push_back(checks::laplace_engine_consistency(full ? 6 : 4,
                                                         {Rational(1, 2), Rational(1), Rational(3)},
                                                         spec.seed ^ 0x1234ULL, false));
    results.push_back(checks::stehfest_inversion(1e-4));
    {
        const double step = spec.step > 0 ? spec.step : (full ? 1e-4 : 1e-3);
        const double eps = spec.eps > 0 ? spec.eps : (full ? 1e-2 : std::sqrt(step));
        const long reps = spec.reps > 0 ? spec.reps : (full ? 100000 : 20000);
        auto mc = checks::monte_carlo(step, eps, reps, spec.seed, spec.threads, 0.02);
        results.insert(results.end(), mc.begin(), mc.end());
    }

    Report report;
    ordered_json cfg;
    cfg["command"] = "validate";
    cfg["seed"] = spec.seed;
    cfg["full"] = full;
    report.config = cfg;
    report.checks = results;
    report.csv_header = {"name", "passed", "tolerance", "achieved", "detail"};

    bool all_passed = true;
    for (const auto& c : results) {
        all_passed = all_passed && c.passed;
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
        if (c.tolerance > 0) out << " (achieved " << fmt(c.achieved, "%.3g") << " <= " << fmt(c.tolerance, "%.3g") << ")";
        out << ": " << c.detail << "\n";
        report.csv_rows.push_back({c.name, c.passed ? "true" : "false", fmt(c.tolerance),
                                   fmt(c.achieved), c.detail});
    }
    out << (all_passed ? "all checks passed\n" : "SOME CHECKS FAILED\n");

    const int write_rc = write_report(report, spec, err);
    if (write_rc != 0) return write_rc;
    return all_passed ? 0 : 1;
}

// --------------------------------------------------------------- wiring

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"joint occupation-time moments on Bessel and Brownian spiders"};
    app.require_subcommand(1);

    std::string config_path, nu_str, beta_str, sectors_str, z_str, out_path, format;
    std::vector<std::string> idx_strs;
    double lambda = 0, step = 0, eps = 0;
    long reps = 0;
    std::uint64_t seed = 0;
    int order = 0, threads = 0;
    bool paper_literal = false, debug_wrong_c_ratio = false, full = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "TOML config file; flags override its values");
        cmd->add_option("--nu", nu_str, "Bessel order as a rational in (-1,0), e.g. -1/2");
        cmd->add_option("--beta", beta_str, "comma list of rational leg weights summing to 1");
        cmd->add_option("--sectors", sectors_str,
                        "comma list of sector boundaries (uniform angle law), e.g. 0,pi/2,2pi");
        cmd->add_option("--idx", idx_strs, "multi-index as comma list of exponents; repeatable");
        cmd->add_option("--lambda", lambda, "transform / exponential-time rate");
        cmd->add_option("--z", z_str, "comma list of MGF arguments, one per leg");
        cmd->add_option("--order", order, "series truncation order");
        cmd->add_option("--steps", step, "simulation grid spacing");
        cmd->add_option("--eps", eps, "leg-reassignment threshold");
        cmd->add_option("--reps", reps, "Monte Carlo replicates");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--threads", threads, "worker threads (0 = auto)");
        cmd->add_option("--out", out_path, "output file path");
        cmd->add_option("--format", format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--paper-literal", paper_literal,
                      "refuse computations relying on the corrected single-leg transform reading");
        cmd->add_flag("--debug-wrong-c-ratio", debug_wrong_c_ratio,
                      "deliberately use the -nu/2 local-time ratio exponent in series mode");
        return cmd;
    };

    auto* moments_cmd = add_common(app.add_subcommand("moments", "exact joint moment tables"));
    auto* validate_cmd = add_common(app.add_subcommand("validate", "cross-route validation suites"));
    validate_cmd->add_flag("--full", full, "acceptance-scale grids");
    auto* simulate_cmd = add_common(app.add_subcommand("simulate", "Monte Carlo estimates"));
    auto* mgf_cmd = add_common(app.add_subcommand("mgf", "moment generating function values"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunSpec spec;
        if (!config_path.empty()) spec = load_config_file(config_path);

        CLI::App* active = moments_cmd->parsed()   ? moments_cmd
                           : validate_cmd->parsed() ? validate_cmd
                           : simulate_cmd->parsed() ? simulate_cmd
                                                    : mgf_cmd;
        spec.command = active->get_name();

        if (active->count("--nu")) spec.nu = Rational::parse(nu_str);
        if (active->count("--beta")) {
            spec.beta.clear();
            for (const auto& tok : split(beta_str, ',')) spec.beta.push_back(Rational::parse(tok));
        }
        if (active->count("--sectors")) {
            spec.sector_boundaries.clear();
            for (const auto& tok : split(sectors_str, ',')) spec.sector_boundaries.push_back(parse_angle(tok));
        }
        if (active->count("--idx")) {
            spec.indices.clear();
            for (const auto& s : idx_strs) {
                std::vector<int> row;
                for (const auto& tok : split(s, ',')) row.push_back(std::stoi(trim(tok)));
                spec.indices.push_back(std::move(row));
            }
        }
        if (active->count("--lambda")) spec.lambda = lambda;
        if (active->count("--z")) {
            spec.z.clear();
            for (const auto& tok : split(z_str, ',')) spec.z.push_back(std::stod(trim(tok)));
        }
        if (active->count("--order")) spec.series_order = order;
        if (active->count("--steps")) spec.step = step;
        if (active->count("--eps")) spec.eps = eps;
        if (active->count("--reps")) spec.reps = reps;
        if (active->count("--seed")) spec.seed = seed;
        if (active->count("--threads")) spec.threads = threads;
        if (active->count("--out")) spec.out_path = out_path;
        if (active->count("--format")) spec.format = format;
        if (paper_literal) spec.paper_literal = true;
        if (debug_wrong_c_ratio) spec.debug_wrong_c_ratio = true;
        if (full) spec.full_grids = true;

        if (spec.command == "moments") return cmd_moments(spec, out, err);
        if (spec.command == "validate") return cmd_validate(spec, out, err);
        if (spec.command == "simulate") return cmd_simulate(spec, out, err);
        return cmd_mgf(spec, out, err);
    } catch (const PaperLiteralRefusal& e) {
        err << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace spider::cli
