// pwe: command-line front end for weight-enumerator harvesting, estimation,
// bounds and simulation.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwe/bounds.hpp"
#include "pwe/code.hpp"
#include "pwe/decoders.hpp"
#include "pwe/estimator.hpp"
#include "pwe/harvest.hpp"
#include "pwe/io.hpp"
#include "pwe/simulation.hpp"
#include "pwe/validation.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { exit_ok = 0, exit_failed_check = 1, exit_usage = 2, exit_compute = 3 };

/// Parameter problems detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string iso_now()
{
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

class Manifest {
public:
    /// argv is read at write time, after any drawn seed was appended.
    Manifest(std::string command, const std::vector<std::string>& argv)
        : command_(std::move(command)), argv_(&argv), started_(iso_now())
    {
    }

    void param(const std::string& key, json value) { params_[key] = std::move(value); }
    void seed(std::uint64_t s) { seed_ = s; }
    void code(const std::string& name) { code_ = name; }
    void output(const fs::path& p) { outputs_.push_back(p.string()); }

    void write(const fs::path& path) const
    {
        json j;
        j["command"] = command_;
        j["argv"] = *argv_;
        j["parameters"] = params_;
        if (seed_) j["seed"] = *seed_;
        if (!code_.empty()) j["code"] = code_;
        j["started"] = started_;
        j["finished"] = iso_now();
        j["outputs"] = outputs_;
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream out(path);
        out << j.dump(2) << '\n';
        if (!out) throw std::runtime_error("cannot write manifest " + path.string());
    }

private:
    std::string command_;
    const std::vector<std::string>* argv_;
    std::string started_;
    json params_ = json::object();
    std::optional<std::uint64_t> seed_;
    std::string code_;
    std::vector<std::string> outputs_;
};

fs::path manifest_path_for(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

/// Uses the given seed, or draws one and appends it to argv so the manifest
/// replays the same run.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given, std::vector<std::string>& argv)
{
    if (given) return *given;
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    argv.push_back("--seed");
    argv.push_back(std::to_string(s));
    return s;
}

std::vector<double> parse_snr_argument(const std::string& text)
{
    if (text.find(':') != std::string::npos) return pwe::parse_snr_grid(text);
    return pwe::parse_snr_list(text);
}

pwe::WeightWindow parse_window(const std::string& text)
{
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const auto w = std::stoul(text);
            return {w, w};
        }
        const pwe::WeightWindow win{std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
        if (win.lo < 1 || win.hi < win.lo) throw std::invalid_argument("empty");
        return win;
    } catch (const std::exception&) {
        throw UsageError("bad weight range '" + text + "' (expected LO:HI with 1 <= LO <= HI)");
    }
}

pwe::ImpulseMode parse_impulse(const std::string& text)
{
    if (text == "gaussian") return pwe::ImpulseMode::gaussian_noise;
    if (text == "sweep") return pwe::ImpulseMode::single_impulse_sweep;
    throw UsageError("unknown impulse mode '" + text + "' (expected gaussian or sweep)");
}

pwe::TransmitMode parse_transmit(const std::string& text)
{
    if (text == "random") return pwe::TransmitMode::random_codeword;
    if (text == "zero") return pwe::TransmitMode::all_zero;
    throw UsageError("unknown transmit mode '" + text + "' (expected random or zero)");
}

void require_file(const std::string& path)
{
    if (!fs::is_regular_file(path)) throw UsageError("input file not found: " + path);
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// ---------------------------------------------------------------------------

struct Globals {
    unsigned threads = 0;
};

struct CodesArgs {
    std::string name;
};

void cmd_codes_list()
{
    for (const auto& name : pwe::catalog_names()) {
        const auto c = pwe::catalog_code(name);
        std::cout << std::left << std::setw(14) << name << " n=" << c->n() << " k=" << c->k();
        if (c->d_known()) std::cout << " d=" << *c->d_known();
        std::cout << '\n';
    }
}

void cmd_codes_show(const CodesArgs& a)
{
    const auto c = pwe::io::resolve_code(a.name);
    std::cout << "name=" << c->name() << "\nn=" << c->n() << "\nk=" << c->k() << '\n';
    if (c->d_known()) std::cout << "d=" << *c->d_known() << '\n';
    if (c->generator_poly()) std::cout << "g=" << join(c->generator_poly()->exponents()) << '\n';
    if (c->parent()) {
        const auto& p = *c->parent();
        std::cout << "parent=" << p.parent->name() << "\nshorten=" << p.removed.size() << '\n';
        if (p.parent->generator_poly()) std::cout << "parent_g=" << join(p.parent->generator_poly()->exponents()) << '\n';
    }
    std::cout << "cyclic=" << (c->is_cyclic() ? "yes" : "no") << '\n';
}

struct ExactArgs {
    std::string code;
    std::optional<std::size_t> max_weight;
    std::string out;
};

void cmd_exact(const ExactArgs& a, const Globals& g, Manifest& m)
{
    const auto code = pwe::io::resolve_code(a.code);
    if (code->k() > pwe::exhaustive_k_limit())
        throw UsageError(code->name() + " has k=" + std::to_string(code->k()) +
                         ", above the exhaustive limit " + std::to_string(pwe::exhaustive_k_limit()) +
                         " (PWE_EXHAUSTIVE_K_LIMIT)");
    m.code(code->name());
    m.param("max_weight", a.max_weight ? json(*a.max_weight) : json(nullptr));
    const auto wd = pwe::exact_weight_distribution(*code, a.max_weight, g.threads);
    pwe::io::write_weight_distribution(a.out, wd);
    m.output(a.out);
    m.write(manifest_path_for(a.out));
}

struct HarvestArgs {
    std::string code;
    std::string decoder = "mld";
    std::uint64_t trials = 0;
    std::uint64_t first_trial = 0;
    std::string snr = "0,1,2,3";
    std::optional<std::string> weights;
    std::optional<std::uint64_t> seed;
    std::string impulse = "gaussian";
    std::string transmit = "random";
    std::optional<std::size_t> target;
    std::string out;
};

void cmd_harvest(const HarvestArgs& a, const Globals& g, Manifest& m, std::vector<std::string>& argv)
{
    const auto code = pwe::io::resolve_code(a.code);
    pwe::HarvestConfig cfg;
    cfg.settings.decoder = pwe::DecoderKind::parse(a.decoder);
    cfg.settings.snr_grid_db = parse_snr_argument(a.snr);
    cfg.settings.impulse = parse_impulse(a.impulse);
    cfg.settings.transmit = parse_transmit(a.transmit);
    cfg.trials = a.trials;
    cfg.first_trial = a.first_trial;
    if (a.weights) cfg.weight_window = parse_window(*a.weights);
    cfg.seed = resolve_seed(a.seed, argv);
    cfg.threads = g.threads;
    cfg.target_size = a.target;

    pwe::HarvestLists existing;
    if (fs::is_directory(a.out)) existing = pwe::io::read_list_directory(a.out, code);
    std::size_t before = 0;
    for (const auto& [w, l] : existing) before += l.size();

    const auto result = pwe::harvest(code, cfg, std::move(existing));
    pwe::io::write_list_directory(a.out, code->name(), result.lists);

    m.code(code->name());
    m.seed(cfg.seed);
    m.param("decoder", cfg.settings.decoder.to_string());
    m.param("trials", a.trials);
    m.param("first_trial", a.first_trial);
    m.param("snr_db", cfg.settings.snr_grid_db);
    m.param("impulse", a.impulse);
    m.param("transmit", a.transmit);
    if (result.window) m.param("weights", std::to_string(result.window->lo) + ":" + std::to_string(result.window->hi));
    if (a.target) m.param("target_size", *a.target);
    m.param("trials_run", result.trials_run);
    m.param("decoder_errors", result.decoder_errors);
    m.param("words_before", before);

    std::size_t after = 0;
    for (const auto& [w, l] : result.lists) {
        std::cout << "w=" << w << " |L|=" << l.size() << '\n';
        m.output(pwe::io::list_file_path(a.out, code->name(), w));
        after += l.size();
    }
    std::cout << result.trials_run << " trials, " << result.decoder_errors << " decoder errors, "
              << after - before << " new words\n";
    m.write(fs::path(a.out) / (code->name() + ".harvest.manifest.json"));
}

struct EstimateArgs {
    std::string code;
    std::string lists;
    double mu = 0.99;
    std::size_t m = 10;
    std::size_t q = 100;
    std::string sampler = "impulse";
    std::string rate = "unbiased";
    std::string decoder = "mld";
    std::string snr = "0,1,2,3";
    std::string impulse = "gaussian";
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_estimate(const EstimateArgs& a, const Globals& g, Manifest& man, std::vector<std::string>& argv)
{
    const auto code = pwe::io::resolve_code(a.code);
    if (!(a.mu > 0.5 && a.mu < 1.0)) throw UsageError("--mu must lie in (0.5, 1)");
    if (a.q < 2) throw UsageError("--q must be at least 2");
    if (!fs::is_directory(a.lists)) throw UsageError("list directory not found: " + a.lists);

    pwe::EstimatorParams p;
    p.m = a.m;
    p.q = a.q;
    p.mu = a.mu;
    p.formula = pwe::rate_formula_from_string(a.rate);
    if (p.formula == pwe::RateFormula::unbiased && p.m < 2) throw UsageError("--M must be at least 2 with --rate unbiased");
    if (p.m < 1) throw UsageError("--M must be positive");
    p.threads = g.threads;
    const auto seed = resolve_seed(a.seed, argv);

    const auto lists = pwe::io::read_list_directory(a.lists, code);
    if (lists.empty()) throw UsageError("no list files for " + code->name() + " in " + a.lists);

    std::unique_ptr<pwe::WeightSampler> sampler;
    if (a.sampler == "exact") {
        if (code->k() > pwe::exhaustive_k_limit())
            throw UsageError("exact sampler needs k <= " + std::to_string(pwe::exhaustive_k_limit()));
        std::vector<std::size_t> ws;
        for (const auto& [w, l] : lists) ws.push_back(w);
        sampler = std::make_unique<pwe::ExactUniformSampler>(code, ws);
    } else if (a.sampler == "impulse") {
        pwe::ImpulseSettings s;
        s.decoder = pwe::DecoderKind::parse(a.decoder);
        s.snr_grid_db = parse_snr_argument(a.snr);
        s.impulse = parse_impulse(a.impulse);
        sampler = std::make_unique<pwe::ImpulseSampler>(code, s);
    } else {
        throw UsageError("unknown sampler '" + a.sampler + "' (expected exact or impulse)");
    }

    const auto result = pwe::estimate_pwe(*code, lists, *sampler, p, seed);
    pwe::io::write_pwe(a.out, result.pwe, {code->name(), a.mu, a.m, a.q});
    for (const auto& e : result.estimates)
        std::cout << "w=" << e.w << " |L|=" << e.list_size << " R=" << e.r_bar << " sigma=" << e.sigma
                  << " estimate=" << e.count_estimate << " [" << e.lower << ", " << e.upper << "]"
                  << (e.complete ? " complete" : "") << '\n';
    for (const auto& [w, why] : result.failures) std::cerr << "w=" << w << ": not estimated: " << why << '\n';

    man.code(code->name());
    man.seed(seed);
    man.param("lists", a.lists);
    man.param("mu", a.mu);
    man.param("M", a.m);
    man.param("q", a.q);
    man.param("sampler", a.sampler);
    man.param("rate", a.rate);
    if (a.sampler == "impulse") {
        man.param("decoder", a.decoder);
        man.param("snr_db", parse_snr_argument(a.snr));
        man.param("impulse", a.impulse);
    }
    man.output(a.out);
    man.write(manifest_path_for(a.out));
    return result.pwe.entries.empty() ? exit_compute : exit_ok;
}

struct BoundArgs {
    std::string code;
    std::optional<std::string> pwe;
    std::optional<std::string> we;
    bool bit = false;
    bool word = false;
    std::string snr;
    std::string out;
};

void cmd_bound(const BoundArgs& a, Manifest& m)
{
    const auto code = pwe::io::resolve_code(a.code);
    if (a.pwe.has_value() == a.we.has_value()) throw UsageError("give exactly one of --pwe and --we");
    if (a.bit && a.word) throw UsageError("--bit and --word are exclusive");
    const auto grid = pwe::parse_snr_grid(a.snr);
    const pwe::RateContext rc(code->n(), code->k());
    const auto kind = a.word ? pwe::CurveKind::word_bound : pwe::CurveKind::bit_bound;

    pwe::BoundCurve result;
    if (a.we) {
        require_file(*a.we);
        result = pwe::curve(pwe::io::read_weight_csv(*a.we), rc, grid, kind);
    } else {
        require_file(*a.pwe);
        const auto pwe = pwe::io::read_pwe(*a.pwe);
        if (kind == pwe::CurveKind::bit_bound) {
            result = pwe::curve(pwe, rc, grid);
        } else {
            pwe::WeightMap wm;
            for (const auto& e : pwe.entries) wm[e.w] = static_cast<double>(e.count_estimate);
            result = pwe::curve(wm, rc, grid, kind);
        }
    }
    pwe::io::write_curve(a.out, result);
    m.code(code->name());
    m.param("input", a.we ? *a.we : *a.pwe);
    m.param("input_kind", a.we ? "we" : "pwe");
    m.param("bound", a.word ? "word" : "bit");
    m.param("snr", a.snr);
    m.output(a.out);
    m.write(manifest_path_for(a.out));
}

struct SimulateArgs {
    std::string code;
    std::string decoder = "mld";
    std::string snr;
    std::uint64_t min_errors = 200;
    std::uint64_t min_blocks = 5000;
    std::uint64_t max_blocks = 10'000'000;
    std::optional<std::uint64_t> seed;
    std::string out;
};

void cmd_simulate(const SimulateArgs& a, const Globals& g, Manifest& m, std::vector<std::string>& argv)
{
    const auto code = pwe::io::resolve_code(a.code);
    const auto decoder = pwe::DecoderKind::parse(a.decoder);
    pwe::SimConfig cfg;
    cfg.snr_grid_db = parse_snr_argument(a.snr);
    cfg.min_bit_errors = a.min_errors;
    cfg.min_blocks = a.min_blocks;
    cfg.max_blocks = a.max_blocks;
    cfg.threads = g.threads;
    cfg.seed = resolve_seed(a.seed, argv);
    const auto points = pwe::simulate_points(*code, decoder, cfg);
    pwe::io::write_sim_curve(a.out, points);
    for (const auto& p : points)
        std::cout << p.ebn0_db << " dB: ber=" << p.ber() << " (" << p.bit_errors << " errors in " << p.blocks
                  << " blocks" << (p.capped ? ", capped" : "") << ")\n";
    m.code(code->name());
    m.seed(cfg.seed);
    m.param("decoder", decoder.to_string());
    m.param("snr_db", cfg.snr_grid_db);
    m.param("min_errors", a.min_errors);
    m.param("min_blocks", a.min_blocks);
    m.param("max_blocks", a.max_blocks);
    m.output(a.out);
    m.write(manifest_path_for(a.out));
}

struct ValidateArgs {
    std::vector<int> only;
    bool verbose = false;
    bool timing = false;
};

int cmd_validate(const ValidateArgs& a, const Globals& g)
{
    pwe::validation::Options o;
    o.only.insert(a.only.begin(), a.only.end());
    o.threads = g.threads;
    o.verbose = a.verbose;
    const auto results = pwe::validation::run_acceptance(o, std::cout);
    int failed = 0;
    double total = 0.0;
    for (const auto& r : results) {
        failed += !r.passed;
        total += r.seconds;
    }
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed in " << std::fixed
              << std::setprecision(1) << total << " s\n" << std::defaultfloat;
    if (a.timing) pwe::validation::run_timing_table(o, std::cout);
    return failed == 0 ? exit_ok : exit_failed_check;
}

int run(std::vector<std::string> argv);

int cmd_replay(const std::string& manifest)
{
    require_file(manifest);
    std::ifstream in(manifest);
    const auto j = json::parse(in);
    auto argv = j.at("argv").get<std::vector<std::string>>();
    if (argv.empty()) throw UsageError("manifest has an empty argv");
    return run(std::move(argv));
}

int run(std::vector<std::string> argv)
{
    CLI::App app{"Partial weight enumerators of binary linear codes"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)");

    auto* codes = app.add_subcommand("codes", "Inspect the code catalog");
    codes->require_subcommand(1);
    codes->add_subcommand("list", "List catalog codes");
    CodesArgs ca;
    auto* show = codes->add_subcommand("show", "Show one code");
    show->add_option("name", ca.name, "Catalog name or definition file")->required();

    ExactArgs ea;
    auto* exact = app.add_subcommand("exact-we", "Exhaustive weight distribution");
    exact->add_option("code", ea.code)->required();
    exact->add_option("--max-weight", ea.max_weight);
    exact->add_option("--out", ea.out)->required();

    HarvestArgs ha;
    auto* harv = app.add_subcommand("harvest", "Collect low-weight codewords by error impulses");
    harv->add_option("code", ha.code)->required();
    harv->add_option("--decoder", ha.decoder, "mld or osd:N")->capture_default_str();
    harv->add_option("--trials", ha.trials)->required();
    harv->add_option("--first-trial", ha.first_trial, "Index of the first trial (resume point)");
    harv->add_option("--snr", ha.snr, "Eb/N0 list (a,b,c) or grid LO:HI:STEP")->capture_default_str();
    harv->add_option("--weights", ha.weights, "Weight window LO:HI");
    harv->add_option("--seed", ha.seed);
    harv->add_option("--impulse", ha.impulse, "gaussian or sweep")->capture_default_str();
    harv->add_option("--transmit", ha.transmit, "random or zero")->capture_default_str();
    harv->add_option("--target-size", ha.target, "Stop once every window weight has this many words");
    harv->add_option("--out", ha.out, "Directory of list files (merged when present)")->required();

    EstimateArgs sa;
    auto* est = app.add_subcommand("estimate", "Estimate weight-class sizes from lists");
    est->add_option("code", sa.code)->required();
    est->add_option("--lists", sa.lists)->required();
    est->add_option("--mu", sa.mu)->capture_default_str();
    est->add_option("--M", sa.m)->capture_default_str();
    est->add_option("--q", sa.q)->capture_default_str();
    est->add_option("--sampler", sa.sampler, "exact or impulse")->capture_default_str();
    est->add_option("--rate", sa.rate, "unbiased or ratio")->capture_default_str();
    est->add_option("--decoder", sa.decoder, "Impulse sampler decoder")->capture_default_str();
    est->add_option("--snr", sa.snr, "Impulse sampler Eb/N0 values")->capture_default_str();
    est->add_option("--impulse", sa.impulse, "Impulse sampler mode")->capture_default_str();
    est->add_option("--seed", sa.seed);
    est->add_option("--out", sa.out)->required();

    BoundArgs ba;
    auto* bnd = app.add_subcommand("bound", "Union bounds from a (partial) weight enumerator");
    bnd->add_option("code", ba.code)->required();
    bnd->add_option("--pwe", ba.pwe);
    bnd->add_option("--we", ba.we);
    bnd->add_flag("--bit", ba.bit);
    bnd->add_flag("--word", ba.word);
    bnd->add_option("--snr", ba.snr, "LO:HI:STEP")->required();
    bnd->add_option("--out", ba.out)->required();

    SimulateArgs ma;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo BER over BPSK/AWGN");
    sim->add_option("code", ma.code)->required();
    sim->add_option("--decoder", ma.decoder)->capture_default_str();
    sim->add_option("--snr", ma.snr, "LO:HI:STEP or a,b,c")->required();
    sim->add_option("--min-errors", ma.min_errors)->capture_default_str();
    sim->add_option("--min-blocks", ma.min_blocks)->capture_default_str();
    sim->add_option("--max-blocks", ma.max_blocks)->capture_default_str();
    sim->add_option("--seed", ma.seed);
    sim->add_option("--out", ma.out)->required();

    ValidateArgs va;
    auto* val = app.add_subcommand("validate", "Run the acceptance suite");
    val->add_option("--only", va.only, "Criterion numbers to run")->delimiter(',');
    val->add_flag("--verbose", va.verbose);
    val->add_flag("--timing-table", va.timing, "Also time harvest plus estimation on BCH(63,39) and QR(71,36)");

    std::string manifest;
    auto* rep = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    rep->add_option("manifest", manifest)->required();

    std::vector<const char*> cargv;
    for (const auto& s : argv) cargv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    try {
        std::string name;
        for (auto* s : app.get_subcommands()) name = s->get_name();
        Manifest m(name, argv);
        if (codes->parsed()) {
            if (show->parsed()) cmd_codes_show(ca);
            else cmd_codes_list();
            return exit_ok;
        }
        if (exact->parsed()) cmd_exact(ea, g, m);
        if (harv->parsed()) cmd_harvest(ha, g, m, argv);
        if (bnd->parsed()) cmd_bound(ba, m);
        if (sim->parsed()) cmd_simulate(ma, g, m, argv);
        if (est->parsed()) return cmd_estimate(sa, g, m, argv);
        if (val->parsed()) return cmd_validate(va, g);
        if (rep->parsed()) return cmd_replay(manifest);
        return exit_ok;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return exit_compute;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    return run(std::vector<std::string>(argv, argv + argc));
}
