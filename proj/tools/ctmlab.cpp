// ctmlab command line: finite universal-distribution approximations,
// Busy Beaver censuses, ECA reference distributions, market binarization,
// and rank-correlation comparisons, with reproducible seeded runs and a
// JSON manifest per invocation.

#include "ctmlab/census.hpp"
#include "ctmlab/codec.hpp"
#include "ctmlab/distribution.hpp"
#include "ctmlab/eca.hpp"
#include "ctmlab/market.hpp"
#include "ctmlab/serialize.hpp"
#include "ctmlab/sha256.hpp"
#include "ctmlab/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ctmlab;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 0 ok, 2 validation, 3 budget refused, 4 data error
enum ExitCode { kOk = 0, kValidation = 2, kBudget = 3, kData = 4 };

struct Output {
    std::string out_path;   // empty: stdout
    std::string format = "csv";
    ordered_json config;    // every flag actually used
    std::vector<std::pair<std::string, std::string>> artifacts; // path, digest

    void emit(const std::string& content, const std::string& path) {
        if (path.empty()) {
            std::cout << content;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw DataError("cannot open output file " + path);
        f << content;
        artifacts.emplace_back(path, Sha256::of(content));
    }

    void write_manifest(const std::string& command_line) {
        if (out_path.empty()) return;
        ordered_json m;
        m["command"] = command_line;
        m["version"] = kVersion;
        m["config"] = config;
        ordered_json files = ordered_json::array();
        for (const auto& [path, digest] : artifacts)
            files.push_back({{"path", path}, {"sha256", digest}});
        m["outputs"] = std::move(files);
        std::ofstream f(out_path + ".manifest.json", std::ios::binary);
        f << m.dump(2) << '\n';
    }
};

std::string render_distribution(const FrequencyDistribution& d,
                                const std::string& format) {
    std::ostringstream out;
    if (format == "json")
        out << distribution_to_json(d).dump(2) << '\n';
    else
        distribution_to_csv(d, out);
    return out.str();
}

BlankMode parse_blank(const std::string& text) {
    if (text == "zero" || text == "0") return BlankMode::Zero;
    if (text == "one" || text == "1") return BlankMode::One;
    if (text == "both") return BlankMode::Both;
    throw CLI::ValidationError("--blank must be zero|one|both");
}

std::pair<size_t, size_t> parse_k_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const size_t k = std::stoull(text);
        return {k, k};
    }
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
}

FrequencyDistribution load_distribution(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open reference distribution " + path);
    FrequencyDistribution d;
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        ordered_json j;
        in >> j;
        d.source = j.value("source", path);
        d.total = j.at("total").get<uint64_t>();
        for (const auto& e : j.at("entries"))
            d.counts[e.at("string").get<std::string>()] = e.at("count").get<uint64_t>();
        return d;
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("string,count", 0) != 0)
        throw DataError("reference CSV must start with a string,count header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos) throw DataError("malformed CSV row: " + line);
        const uint64_t count = std::stoull(line.substr(c1 + 1, c2 - c1 - 1));
        d.counts[line.substr(0, c1)] = count;
        d.total += count;
    }
    d.source = path;
    return d;
}

PriceSeries load_series(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open price file " + path);
    return ingest_csv(in, schema, path);
}

// versioned cutoff constants; overrides the built-in table when supplied
struct CutoffConfig {
    std::map<uint32_t, uint64_t> bounds;
    uint64_t guess = kDefaultGuessCutoff;

    uint64_t resolve(const MachineClass& cls) const {
        const auto it = bounds.find(cls.states);
        return it != bounds.end() ? it->second : guess;
    }
};

CutoffConfig load_cutoff_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open cutoff config " + path);
    ordered_json j;
    in >> j;
    CutoffConfig cfg;
    cfg.guess = j.value("default_guess_cutoff", kDefaultGuessCutoff);
    for (const auto& e : j.at("known_step_bounds"))
        cfg.bounds[e.at("n").get<uint32_t>()] = e.at("s").get<uint64_t>();
    return cfg;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite algorithmic-probability distributions and market comparisons"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may appear after the subcommand

    unsigned workers = 1;
    std::string out_path, out_format = "csv";
    app.add_option("--workers", workers, "worker threads (never changes results)")
        ->capture_default_str();
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--out-format", out_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    std::string cutoff_config_path;
    app.add_option("--cutoff-config", cutoff_config_path,
                   "JSON file of known step bounds (default: built-in table)");

    // ---- ctm ----------------------------------------------------------
    auto* ctm = app.add_subcommand("ctm", "coding-theorem distributions");
    auto* dist = ctm->add_subcommand("dist", "compute D(n)");
    uint32_t dist_n = 1;
    std::string dist_mode = "exhaustive", dist_blank = "zero";
    uint64_t dist_size = 100000, dist_seed = 0;
    std::optional<uint64_t> dist_cutoff;
    uint32_t budget = kDefaultExhaustiveBudget;
    dist->add_option("-n,--states", dist_n, "machine states")->required();
    dist->add_option("--mode", dist_mode, "exhaustive|sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    dist->add_option("--size", dist_size, "sample size (sampled mode)");
    dist->add_option("--seed", dist_seed, "sample seed");
    dist->add_option("--cutoff", dist_cutoff, "step cutoff override");
    dist->add_option("--blank", dist_blank, "blank symbol: zero|one|both");
    dist->add_option("--budget", budget,
                     "largest n allowed in exhaustive mode (explicit acknowledgment)");

    auto* kcmd = ctm->add_subcommand("k", "coding-theorem complexity of a string");
    std::string k_string;
    uint32_t k_n = 2;
    std::string k_blank = "both";
    kcmd->add_option("-s,--string", k_string, "bit string")->required();
    kcmd->add_option("-n,--states", k_n, "machine states for D(n)");
    kcmd->add_option("--blank", k_blank, "blank symbol: zero|one|both");

    // ---- bb -----------------------------------------------------------
    auto* bb = app.add_subcommand("bb", "Busy Beaver censuses");
    auto* bbcensus = bb->add_subcommand("census", "exhaustive halting census");
    uint32_t bb_n = 2;
    std::string bb_blank = "both";
    std::optional<uint64_t> bb_cutoff;
    bbcensus->add_option("-n,--states", bb_n, "machine states")->required();
    bbcensus->add_option("--cutoff", bb_cutoff, "census cutoff override");
    bbcensus->add_option("--blank", bb_blank, "blank symbol: zero|one|both");

    // ---- eca ----------------------------------------------------------
    auto* eca = app.add_subcommand("eca", "elementary cellular automata");
    auto* ecadist = eca->add_subcommand("dist", "k-tuple reference distribution");
    std::string eca_rules = "all";
    size_t eca_k = 4, eca_width = 63, eca_steps = 63;
    std::string eca_boundary = "cyclic", eca_init = "single";
    uint64_t eca_seed = 0;
    double eca_density = 0.5;
    bool eca_columns = false;
    ecadist->add_option("--rules", eca_rules, "all or comma-separated rule list");
    ecadist->add_option("--k", eca_k, "tuple length")->capture_default_str();
    ecadist->add_option("--width", eca_width)->capture_default_str();
    ecadist->add_option("--steps", eca_steps)->capture_default_str();
    ecadist->add_option("--boundary", eca_boundary, "cyclic|fixed0")
        ->check(CLI::IsMember({"cyclic", "fixed0"}));
    ecadist->add_option("--init", eca_init, "single|random")
        ->check(CLI::IsMember({"single", "random"}));
    ecadist->add_option("--seed", eca_seed, "random init seed");
    ecadist->add_option("--density", eca_density, "random init density");
    ecadist->add_flag("--columns", eca_columns, "slice columns instead of rows");

    auto* ecaevolve = eca->add_subcommand("evolve", "emit an evolution as PBM text");
    uint32_t ev_rule = 30;
    size_t ev_width = 63, ev_steps = 63;
    std::string ev_boundary = "cyclic", ev_init = "single";
    uint64_t ev_seed = 0;
    double ev_density = 0.5;
    ecaevolve->add_option("--rule", ev_rule)->required();
    ecaevolve->add_option("--width", ev_width)->capture_default_str();
    ecaevolve->add_option("--steps", ev_steps)->capture_default_str();
    ecaevolve->add_option("--boundary", ev_boundary, "cyclic|fixed0")
        ->check(CLI::IsMember({"cyclic", "fixed0"}));
    ecaevolve->add_option("--init", ev_init, "single|random")
        ->check(CLI::IsMember({"single", "random"}));
    ecaevolve->add_option("--seed", ev_seed);
    ecaevolve->add_option("--density", ev_density);

    auto* ecacol = eca->add_subcommand("column", "central column bits");
    uint32_t col_rule = 30;
    size_t col_steps = 63;
    ecacol->add_option("--rule", col_rule)->capture_default_str();
    ecacol->add_option("--steps", col_steps)->capture_default_str();

    // ---- market -------------------------------------------------------
    auto* market = app.add_subcommand("market", "binarized price series");
    CsvSchema schema;
    std::string market_file;
    auto add_schema = [&](CLI::App* cmd) {
        cmd->add_option("file", market_file, "price CSV")->required();
        cmd->add_option("--date-col", schema.date_col)->capture_default_str();
        cmd->add_option("--close-col", schema.close_col)->capture_default_str();
        cmd->add_option("--date-format", schema.date_format)->capture_default_str();
    };
    auto* mencode = market->add_subcommand("encode", "rise/fall bit string");
    add_schema(mencode);
    auto* mtuples = market->add_subcommand("tuples", "k-tuple distribution");
    add_schema(mtuples);
    size_t m_k = 7;
    mtuples->add_option("--k", m_k, "tuple length")->capture_default_str();
    auto* mwalk = market->add_subcommand("walk", "walk series CSV");
    add_schema(mwalk);
    auto* mcompare = market->add_subcommand("compare", "rho|n table vs a reference");
    add_schema(mcompare);
    std::string m_ref = "eca", m_krange = "5..10", m_policy = "intersection";
    mcompare->add_option("--ref", m_ref, "eca | path to a distribution CSV/JSON")
        ->capture_default_str();
    mcompare->add_option("--k", m_krange, "k or k_lo..k_hi")->capture_default_str();
    mcompare->add_option("--policy", m_policy, "intersection|union")
        ->check(CLI::IsMember({"intersection", "union"}))
        ->capture_default_str();

    // ---- codec --------------------------------------------------------
    auto* codec = app.add_subcommand("codec", "baseline injective code");
    std::string codec_bits, codec_hex;
    auto* cencode = codec->add_subcommand("encode", "bit string -> hex codeword");
    cencode->add_option("bits", codec_bits)->required();
    auto* cdecode = codec->add_subcommand("decode", "hex codeword -> bit string");
    cdecode->add_option("hex", codec_hex)->required();
    auto* cbound = codec->add_subcommand("bound", "K upper bound in bits");
    cbound->add_option("bits", codec_bits)->required();

    CLI11_PARSE(app, argc, argv);

    Output output;
    output.out_path = out_path;
    output.format = out_format;
    output.config["workers"] = workers;
    output.config["out_format"] = out_format;

    try {
        std::optional<CutoffConfig> cutoff_cfg;
        if (!cutoff_config_path.empty()) {
            cutoff_cfg = load_cutoff_config(cutoff_config_path);
            output.config["cutoff_config"] = cutoff_config_path;
        }
        const auto resolve_cutoff = [&](const MachineClass& cls) {
            return cutoff_cfg ? cutoff_cfg->resolve(cls) : cutoff_for(cls);
        };
        if (dist->parsed()) {
            const MachineClass cls(dist_n);
            const BlankMode blank = parse_blank(dist_blank);
            const uint64_t cutoff = dist_cutoff.value_or(resolve_cutoff(cls));
            output.config["n"] = dist_n;
            output.config["mode"] = dist_mode;
            output.config["cutoff"] = cutoff;
            output.config["blank"] = to_string(blank);
            FrequencyDistribution d;
            if (dist_mode == "sampled") {
                output.config["size"] = dist_size;
                output.config["seed"] = dist_seed;
                d = compute_D(cls, cutoff, SampledMode{dist_size, dist_seed}, blank,
                              workers);
            } else {
                output.config["budget"] = budget;
                d = compute_D(cls, cutoff, blank, workers, budget);
            }
            output.emit(render_distribution(d, out_format), out_path);
        } else if (kcmd->parsed()) {
            const MachineClass cls(k_n);
            const BlankMode blank = parse_blank(k_blank);
            const uint64_t cutoff = resolve_cutoff(cls);
            output.config["n"] = k_n;
            output.config["cutoff"] = cutoff;
            output.config["blank"] = to_string(blank);
            const FrequencyDistribution d = compute_D(cls, cutoff, blank, workers);
            const ComplexityEstimate est = ctm_complexity(k_string, d);
            ordered_json j{{"string", est.string},
                           {"k_ctm", est.k_ctm},
                           {"probability", est.probability}};
            output.emit(j.dump(2) + "\n", out_path);
        } else if (bbcensus->parsed()) {
            const MachineClass cls(bb_n);
            const BlankMode blank = parse_blank(bb_blank);
            const uint64_t cutoff = bb_cutoff.value_or(resolve_cutoff(cls));
            output.config["n"] = bb_n;
            output.config["cutoff"] = cutoff;
            output.config["blank"] = to_string(blank);
            const CensusReport census = run_census(cls, cutoff, blank, workers);
            const BusyBeaverRecord record = busy_beaver(cls, {}, workers);
            ordered_json j;
            j["busy_beaver"] = busy_beaver_to_json(record);
            j["census"] = census_to_json(census);
            output.emit(j.dump(2) + "\n", out_path);
        } else if (ecadist->parsed()) {
            EcaConfig tmpl;
            tmpl.width = eca_width;
            tmpl.steps = eca_steps;
            tmpl.boundary = eca_boundary == "cyclic" ? Boundary::Cyclic
                                                     : Boundary::FixedZero;
            tmpl.random_init = eca_init == "random";
            tmpl.init = {eca_seed, eca_density};
            std::vector<uint32_t> rules;
            if (eca_rules == "all") {
                rules = all_eca_rules();
            } else {
                std::istringstream in(eca_rules);
                std::string tok;
                while (std::getline(in, tok, ',')) rules.push_back(std::stoul(tok));
            }
            output.config["rules"] = eca_rules;
            output.config["k"] = eca_k;
            output.config["width"] = eca_width;
            output.config["steps"] = eca_steps;
            output.config["boundary"] = eca_boundary;
            output.config["init"] = eca_init;
            if (tmpl.random_init) {
                output.config["seed"] = eca_seed;
                output.config["density"] = eca_density;
            }
            output.config["slice"] = eca_columns ? "columns" : "rows";
            const FrequencyDistribution d =
                eca_tuple_distribution(rules, eca_k, tmpl, eca_columns);
            output.emit(render_distribution(d, out_format), out_path);
        } else if (ecaevolve->parsed()) {
            EcaConfig cfg;
            cfg.rule = ev_rule;
            cfg.width = ev_width;
            cfg.steps = ev_steps;
            cfg.boundary =
                ev_boundary == "cyclic" ? Boundary::Cyclic : Boundary::FixedZero;
            cfg.random_init = ev_init == "random";
            cfg.init = {ev_seed, ev_density};
            output.config["rule"] = ev_rule;
            output.config["width"] = ev_width;
            output.config["steps"] = ev_steps;
            output.config["boundary"] = ev_boundary;
            output.config["init"] = ev_init;
            std::ostringstream out;
            evolution_to_pbm(evolve(cfg), out);
            output.emit(out.str(), out_path);
        } else if (ecacol->parsed()) {
            output.config["rule"] = col_rule;
            output.config["steps"] = col_steps;
            output.emit(central_column(col_rule, col_steps) + "\n", out_path);
        } else if (mencode->parsed()) {
            output.config["file"] = market_file;
            output.config["date_col"] = schema.date_col;
            output.config["close_col"] = schema.close_col;
            output.config["date_format"] = schema.date_format;
            const BinarySequence seq = encode_directions(load_series(market_file, schema));
            output.emit(seq.bits + "\n", out_path);
        } else if (mtuples->parsed()) {
            output.config["file"] = market_file;
            output.config["k"] = m_k;
            const BinarySequence seq = encode_directions(load_series(market_file, schema));
            output.emit(render_distribution(extract_tuples(seq, m_k), out_format),
                        out_path);
        } else if (mwalk->parsed()) {
            output.config["file"] = market_file;
            const BinarySequence seq = encode_directions(load_series(market_file, schema));
            std::ostringstream out;
            walk_to_csv(walk(seq), out);
            output.emit(out.str(), out_path);
        } else if (mcompare->parsed()) {
            const auto [k_lo, k_hi] = parse_k_range(m_krange);
            output.config["file"] = market_file;
            output.config["ref"] = m_ref;
            output.config["k"] = m_krange;
            output.config["policy"] = m_policy;
            const BinarySequence seq = encode_directions(load_series(market_file, schema));
            FrequencyDistribution reference;
            if (m_ref == "eca") {
                // default reference: all 256 rules, 63x63, single-1, cyclic
                for (size_t k = k_lo; k <= k_hi; ++k) {
                    const FrequencyDistribution part =
                        eca_tuple_distribution(all_eca_rules(), k, EcaConfig{});
                    for (const auto& [s, c] : part.counts) reference.counts[s] = c;
                    reference.total += part.total;
                }
                reference.source = "eca default (all 256 rules, 63x63, single-1, cyclic)";
            } else {
                reference = load_distribution(m_ref);
            }
            const AlignPolicy policy = m_policy == "union" ? AlignPolicy::UnionZeroFill
                                                           : AlignPolicy::Intersection;
            const auto cells = compare_table(seq, reference, k_lo, k_hi, policy);
            std::ostringstream out;
            compare_table_to_csv(cells, out);
            output.emit(out.str(), out_path);
            if (!out_path.empty()) {
                std::ostringstream pretty;
                compare_table_pretty(cells, pretty);
                std::cout << pretty.str();
            }
        } else if (cencode->parsed()) {
            output.config["bits"] = codec_bits;
            output.emit(encode(codec_bits).to_hex() + "\n", out_path);
        } else if (cdecode->parsed()) {
            output.config["hex"] = codec_hex;
            output.emit(decode(Codeword::from_hex(codec_hex)) + "\n", out_path);
        } else if (cbound->parsed()) {
            output.config["bits"] = codec_bits;
            output.emit(std::to_string(k_upper_bound(codec_bits)) + "\n", out_path);
        }
        output.write_manifest(join_args(argc, argv));
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kBudget;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const DecodeError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kOk;
}
