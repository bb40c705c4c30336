#include "pwe/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "pwe/bounds.hpp"
#include "pwe/channel.hpp"
#include "pwe/code.hpp"
#include "pwe/decoders.hpp"
#include "pwe/estimator.hpp"
#include "pwe/gf2.hpp"
#include "pwe/harvest.hpp"
#include "pwe/rng.hpp"
#include "pwe/simulation.hpp"

namespace pwe::validation {

const std::vector<BetaReference> beta_reference_table = {
    {0.9999, 3.89},
    {0.99, 2.57},
    {0.98, 2.32},
};

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Context {
    const Options& options;
    std::ostream& out;

    void note(const std::string& text) const
    {
        if (options.verbose) out << "    " << text << '\n' << std::flush;
    }
};

template <typename... Args>
std::string fmt(Args&&... args)
{
    std::ostringstream s;
    s << std::setprecision(6);
    (s << ... << args);
    return s.str();
}

WeightMap full_weight_map(const CodeSpec& code)
{
    const auto wd = exact_weight_distribution(code);
    WeightMap map;
    for (auto w : wd.nonzero_weights())
        if (w > 0) map[w] = static_cast<double>(wd[w]);
    return map;
}

BitWord random_codeword(const CodeSpec& code, Rng& rng)
{
    BitWord info(code.k());
    for (std::size_t i = 0; i < code.k(); ++i)
        if (rng.next() & 1) info.set(i);
    return code.encode(info);
}

// ---------------------------------------------------------------------------

Outcome golay_exact(const Context&)
{
    const auto t0 = Clock::now();
    const auto wd = exact_weight_distribution(*catalog_code("golay-24-12"));
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const std::map<std::size_t, std::uint64_t> expected{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
    bool ok = wd.complete && secs < 1.0;
    for (std::size_t w = 0; w <= 24; ++w) {
        auto it = expected.find(w);
        ok = ok && wd[w] == (it == expected.end() ? 0 : it->second);
    }
    return {ok, fmt("A8=", wd[8], " A12=", wd[12], " A16=", wd[16], " A24=", wd[24], " in ", secs, " s")};
}

Outcome qr47_exact(const Context&)
{
    const auto wd = exact_weight_distribution(*catalog_code("qr-47-24"));
    const bool ok = wd[11] == 4324 && wd[12] == 12972 && wd[15] == 178365;
    return {ok, fmt("A11=", wd[11], " A12=", wd[12], " A15=", wd[15])};
}

Outcome beta_table(const Context&)
{
    bool ok = true;
    std::string detail;
    for (const auto& ref : beta_reference_table) {
        const double b = beta_from_mu(ref.mu);
        ok = ok && std::abs(b - ref.beta) <= 0.01;
        detail += fmt("mu=", ref.mu, "->", std::setprecision(4), b, " (ref ", ref.beta, ") ");
    }
    return {ok, detail};
}

Outcome interval_golden(const Context&)
{
    const auto w27 = recovery_estimate_from_stats(27, 10000, 0.26045736, 0.086847, 100, 2.57);
    const auto w28 = recovery_estimate_from_stats(28, 10000, 0.06536888, 0.023571, 100, 2.57);
    auto near = [](std::uint64_t a, std::uint64_t b) { return (a > b ? a - b : b - a) <= 1; };
    const bool ok = near(w27.lower, 35364) && near(w27.upper, 41993) &&
                    near(w27.count_estimate, 38394) && near(w28.count_estimate, 152978);
    return {ok, fmt("w27 [", w27.lower, ", ", w27.upper, "] est ", w27.count_estimate, "; w28 est ",
                    w28.count_estimate)};
}

struct CalibrationCase {
    std::string code;
    std::size_t w;
    std::size_t keep;
};

Outcome calibration(const Context& ctx)
{
    const std::vector<CalibrationCase> cases{
        {"hamming-7-4", 3, 4}, {"hamming-7-4", 4, 3}, {"hamming-7-4", 7, 1}, {"golay-24-12", 8, 380}};
    constexpr int runs = 200;
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto code = catalog_code(c.code);
        const std::size_t weights[] = {c.w};
        ExactUniformSampler sampler(code, weights);
        const auto all = enumerate_weight_class(*code, c.w);
        WeightClassList list(code, c.w);
        // Every other member, so the partial list is spread over the class.
        for (std::size_t i = 0; i < all.size() && list.size() < c.keep; i += 2) list.insert(all[i]);
        for (std::size_t i = 1; i < all.size() && list.size() < c.keep; i += 2) list.insert(all[i]);

        int covered = 0, covered_ratio = 0;
        for (int r = 0; r < runs; ++r) {
            EstimatorParams p;
            p.threads = ctx.options.threads;
            const auto est = estimate_recovery(list, sampler, p, 5000 + static_cast<std::uint64_t>(r));
            covered += est.lower <= all.size() && all.size() <= est.upper;
            p.formula = RateFormula::ratio;
            const auto alt = estimate_recovery(list, sampler, p, 5000 + static_cast<std::uint64_t>(r));
            covered_ratio += alt.lower <= all.size() && all.size() <= alt.upper;
        }
        const double coverage = static_cast<double>(covered) / runs;
        ok = ok && coverage >= 0.94;
        detail += fmt(c.code, " w", c.w, " ", c.keep, "/", all.size(), ": ", coverage * 100, "% (ratio ",
                      static_cast<double>(covered_ratio) / runs * 100, "%); ");
    }
    return {ok, detail};
}

Outcome golay_harvest_complete(const Context& ctx)
{
    const auto code = catalog_code("golay-24-12");
    HarvestConfig cfg;
    cfg.settings.decoder = DecoderKind::mld();
    cfg.settings.snr_grid_db = {1.0};
    cfg.trials = 100'000;
    cfg.weight_window = WeightWindow{8, 8};
    cfg.seed = 6;
    cfg.threads = ctx.options.threads;
    const auto h = harvest(code, cfg);
    const auto& l8 = h.lists.at(8);
    ctx.note(fmt("harvest: ", h.trials_run, " trials, ", h.decoder_errors, " decoder errors, |L8|=", l8.size()));

    ImpulseSampler sampler(code, cfg.settings);
    EstimatorParams p;
    p.threads = ctx.options.threads;
    const auto est = estimate_recovery(l8, sampler, p, 66);
    const bool ok = l8.size() == 759 && est.complete && est.r_bar == 1.0 && est.sigma == 0.0;
    return {ok, fmt("|L8|=", l8.size(), " R=", est.r_bar, " sigma=", est.sigma,
                    " complete=", est.complete ? "yes" : "no")};
}

Outcome golay_simulation(const Context& ctx)
{
    const auto code = catalog_code("golay-24-12");
    const auto weights = full_weight_map(*code);
    const RateContext rc(code->n(), code->k());
    SimConfig cfg;
    cfg.snr_grid_db = {3.0, 4.0, 5.0};
    cfg.seed = 7;
    cfg.threads = ctx.options.threads;
    bool ok = true;
    std::string detail;
    const auto points = simulate_points(*code, DecoderKind::mld(), cfg);
    for (const auto& p : points) {
        const double bound = union_bound_bit(weights, rc, p.ebn0_db);
        const double ratio = p.ber() / bound;
        const bool within = ratio >= 0.5 && ratio <= 2.0 && !p.capped &&
                            p.ber() <= bound + 3.0 * p.standard_error();
        ok = ok && within;
        detail += fmt(p.ebn0_db, " dB: ber=", p.ber(), " bound=", bound, " ratio=", ratio, " (", p.blocks,
                      " blocks)", within ? "" : " OUT", "; ");
    }
    return {ok, detail};
}

Outcome pwe_sufficiency(const Context&)
{
    const auto code = catalog_code("golay-24-12");
    const auto full = full_weight_map(*code);
    const WeightMap partial{{8, 759.0}};
    const RateContext rc(code->n(), code->k());
    bool ok = true;
    std::string detail = "partial/full: ";
    for (const double db : parse_snr_grid("2:10:0.5")) {
        const double r = union_bound_bit(partial, rc, db) / union_bound_bit(full, rc, db);
        const bool within = r >= 1.0 / 1.1;
        ok = ok && within;
        if (db <= 4.0 || !within) detail += fmt(db, " dB ", std::setprecision(4), r, within ? "" : " OUT", "; ");
    }
    return {ok, detail + "higher SNR within"};
}

Outcome bch127_statistical(const Context& ctx)
{
    const auto code = catalog_code("bch-127-50");
    HarvestConfig cfg;
    cfg.settings.decoder = DecoderKind::osd(1);
    cfg.settings.snr_grid_db = {1.0};
    cfg.trials = 1'000'000;
    cfg.weight_window = WeightWindow{27, 28};
    cfg.target_size = 10'000;
    cfg.seed = 1;
    cfg.threads = ctx.options.threads;
    const auto h = harvest(code, cfg);
    const auto& l27 = h.lists.at(27);
    const auto& l28 = h.lists.at(28);
    ctx.note(fmt("harvest: ", h.trials_run, " trials, |L27|=", l27.size(), " |L28|=", l28.size()));
    if (l27.size() < 10'000 || l28.size() < 10'000)
        return {false, fmt("lists too small: |L27|=", l27.size(), " |L28|=", l28.size())};

    ImpulseSampler sampler(code, cfg.settings);
    EstimatorParams p;
    p.threads = ctx.options.threads;
    int hits = 0;
    std::string detail = fmt("|L27|=", l27.size(), " |L28|=", l28.size(), "; ");
    for (std::uint64_t run = 0; run < 3; ++run) {
        const auto e27 = estimate_recovery(l27, sampler, p, 1000 + run);
        const auto e28 = estimate_recovery(l28, sampler, p, 1000 + run);
        const bool in27 = e27.lower <= 40894 && 40894 <= e27.upper;
        const bool in28 = e28.lower <= 146050 && 146050 <= e28.upper;
        hits += in27 && in28;
        detail += fmt("run ", run, ": [", e27.lower, ",", e27.upper, "] [", e28.lower, ",", e28.upper, "]; ");
        ctx.note(detail);
    }
    return {hits >= 2, fmt(hits, "/3 runs cover both; ", detail)};
}

Outcome shortened_stretch(const Context& ctx)
{
    const auto code = catalog_code("bch-130-66");
    HarvestConfig cfg;
    cfg.settings.decoder = DecoderKind::osd(3);
    cfg.settings.snr_grid_db = {4.0};
    cfg.settings.impulse = ImpulseMode::single_impulse_sweep;
    cfg.weight_window = WeightWindow{17, 17};
    cfg.seed = 10;
    cfg.threads = ctx.options.threads;
    cfg.trials = 500;
    cfg.batch_size = 100;

    // Stable once four consecutive rounds add nothing.
    constexpr int quiet_rounds = 4;
    constexpr int max_rounds = 600;
    HarvestLists lists;
    int quiet = 0, rounds = 0;
    std::size_t size = 0;
    const auto t0 = Clock::now();
    while (rounds < max_rounds && quiet < quiet_rounds) {
        cfg.first_trial = static_cast<std::uint64_t>(rounds) * cfg.trials;
        lists = harvest(code, cfg, std::move(lists)).lists;
        ++rounds;
        const std::size_t now = lists.at(17).size();
        quiet = now > size || now == 0 ? 0 : quiet + 1;
        if (now != size) ctx.note(fmt("round ", rounds, ": |L17|=", now));
        size = now;
    }
    const double harvest_secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (quiet < quiet_rounds)
        return {false, fmt("|L17| did not stabilize in ", rounds, " rounds (", size, ")")};

    ImpulseSettings sampling;
    sampling.decoder = DecoderKind::osd(2);
    sampling.snr_grid_db = {4.0};
    sampling.impulse = ImpulseMode::single_impulse_sweep;
    ImpulseSampler sampler(code, sampling);
    EstimatorParams p;
    p.m = 10;
    p.q = 30;
    p.threads = ctx.options.threads;
    const auto est = estimate_recovery(lists.at(17), sampler, p, 1010);
    return {est.complete,
            fmt("|L17| stable at ", size, " after ", rounds * cfg.trials, " trials (", harvest_secs,
                " s); R=", est.r_bar, " sigma=", est.sigma, "; reference count 58",
                size == 58 ? " matched" : " differs")};
}

Outcome decoder_equivalence(const Context&)
{
    bool ok = true;
    std::string detail;
    for (const auto* name : {"hamming-7-4", "golay-24-12"}) {
        const auto code = catalog_code(name);
        Rng rng(derive_seed(11, stream_sampler, code->n()));
        int mismatches = 0;
        for (int i = 0; i < 1000; ++i) {
            SoftVector r;
            if (i % 2 == 0) {
                r = transmit_awgn(random_codeword(*code, rng), noise_sigma(1.0 + (i % 7), code->rate()), rng);
            } else {
                r.resize(code->n());
                for (auto& v : r) v = rng.gaussian();
            }
            const double dm = squared_distance(mld_decode(*code, r), r);
            const double dosd = squared_distance(osd_decode(*code, r, code->k()), r);
            mismatches += std::abs(dm - dosd) > 1e-9 * std::max(1.0, dm);
        }
        ok = ok && mismatches == 0;
        detail += fmt(name, ": ", mismatches, " mismatches; ");
    }
    return {ok, detail};
}

// Criterion 12 ----------------------------------------------------------------

class PropertyBattery {
public:
    void check(const std::string& name, bool ok)
    {
        ++total_;
        if (!ok && std::find(failed_.begin(), failed_.end(), name) == failed_.end()) failed_.push_back(name);
    }
    int total() const { return total_; }
    const std::vector<std::string>& failed() const { return failed_; }

private:
    int total_ = 0;
    std::vector<std::string> failed_;
};

void gf2_properties(PropertyBattery& b, std::uint64_t seed)
{
    Rng rng(derive_seed(seed, stream_sampler, 1));
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng.below(200);
        BitWord a(n), c(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (rng.next() & 1) a.set(j);
            if (rng.next() & 1) c.set(j);
        }
        b.check("hex round trip", BitWord::from_hex(n, a.to_hex()) == a);
        b.check("xor involution", ((a ^ c) ^ c) == a);
        b.check("weight parity", (a ^ c).weight() % 2 == (a.weight() + c.weight()) % 2);
        b.check("full rotation", a.rotated(n) == a && a.rotated(1).rotated(n - 1) == a);

        std::vector<std::size_t> ea, eb;
        for (std::size_t j = 0; j < 90; ++j) {
            if (rng.next() & 1) ea.push_back(j);
            if (rng.next() & 1) eb.push_back(j);
        }
        eb.push_back(90);
        const auto pa = GF2Poly::from_exponents(ea), pb = GF2Poly::from_exponents(eb);
        const auto [q, r] = poly_divmod(pa, pb);
        b.check("division identity", poly_mul(q, pb) + r == pa && (r.is_zero() || *r.degree() < 90));
        b.check("product divisible", poly_divmod(poly_mul(pa, pb), pb).remainder.is_zero());
    }
    for (int i = 0; i < 20; ++i) {
        const std::size_t rows = 1 + rng.below(20), cols = 1 + rng.below(60);
        GF2Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng.next() & 1) m.set(r, c, true);
        const auto e = rref(m);
        const auto again = rref(e.reduced);
        b.check("rref idempotent", again.rank == e.rank && again.pivot_columns == e.pivot_columns);
        b.check("rank bound", e.rank <= std::min(rows, cols));
    }
}

void code_properties(PropertyBattery& b, std::uint64_t seed)
{
    Rng rng(derive_seed(seed, stream_sampler, 2));
    for (const auto& name : catalog_names()) {
        const auto code = catalog_code(name);
        for (std::size_t r = 0; r < code->k(); ++r) b.check("generator rows are codewords", code->contains(code->generator().row(r)));
        for (int i = 0; i < 20; ++i) {
            const auto a = random_codeword(*code, rng), c = random_codeword(*code, rng);
            b.check("closure under addition", code->contains(a ^ c));
            b.check("info round trip", code->encode(code->extract_info(a)) == a);
            if (code->parent())
                b.check("lift/project round trip", code->project_from_parent(code->lift_to_parent(a)) == a &&
                                                       code->parent()->parent->contains(code->lift_to_parent(a)));
        }
        b.check("zero word is a codeword", code->contains(BitWord(code->n())));
        if (code->k() <= 16) {
            const auto wd = exact_weight_distribution(*code);
            b.check("distribution sums to 2^k", wd.total() == (std::uint64_t{1} << code->k()));
            if (code->d_known())
                for (std::size_t w = 1; w < *code->d_known(); ++w) b.check("no words below d", wd[w] == 0);
        }
    }
}

void decoder_properties(PropertyBattery& b, std::uint64_t seed)
{
    Rng rng(derive_seed(seed, stream_sampler, 3));
    const auto golay = catalog_code("golay-24-12");
    for (int i = 0; i < 100; ++i) {
        const auto c = random_codeword(*golay, rng);
        const auto r = transmit_awgn(c, noise_sigma(1.0, golay->rate()), rng);
        const auto m = mld_decode(*golay, r);
        b.check("decoder output is a codeword", golay->contains(m));
        b.check("noiseless channel decodes", mld_decode(*golay, bpsk_modulate(c)) == c &&
                                                 osd_decode(*golay, bpsk_modulate(c), 1) == c);
        double prev = squared_distance(osd_decode(*golay, r, 0), r);
        for (std::size_t l = 1; l <= 3; ++l) {
            const double d = squared_distance(osd_decode(*golay, r, l), r);
            b.check("OSD order monotone", d <= prev + 1e-12);
            prev = d;
        }
        b.check("MLD never beaten", squared_distance(m, r) <= prev + 1e-12);
    }
}

void harvest_properties(PropertyBattery& b, std::uint64_t seed)
{
    const auto code = catalog_code("qr-23-12");
    HarvestConfig cfg;
    cfg.settings.snr_grid_db = {1.0, 2.0};
    cfg.trials = 2000;
    cfg.seed = seed;
    cfg.threads = 1;
    const auto one = harvest(code, cfg);
    cfg.threads = 3;
    cfg.batch_size = 97;
    const auto three = harvest(code, cfg);
    cfg.trials = 4000;
    const auto longer = harvest(code, cfg);
    for (const auto& [w, list] : one.lists) {
        const auto members = list.sorted_members();
        b.check("thread-count independent", three.lists.at(w).sorted_members() == members);
        for (const auto& m : members) {
            b.check("harvested words valid", m.weight() == w && code->contains(m));
            b.check("longer run is a superset", longer.lists.at(w).contains(m));
            b.check("lists closed under shifts", list.contains(m.rotated(1)));
        }
    }
}

void estimator_properties(PropertyBattery& b, std::uint64_t seed)
{
    const auto code = catalog_code("golay-24-12");
    const std::size_t weights[] = {8};
    ExactUniformSampler sampler(code, weights);
    const auto all = enumerate_weight_class(*code, 8);
    for (const std::size_t keep : {100, 300, 759}) {
        WeightClassList list(code, 8);
        for (std::size_t i = 0; i < keep; ++i) list.insert(all[i]);
        EstimatorParams p;
        p.q = 20;
        const auto est = estimate_recovery(list, sampler, p, seed);
        b.check("rate in (0, 1]", est.r_bar > 0.0 && est.r_bar <= 1.0);
        b.check("estimate inside interval", est.lower <= est.count_estimate && est.count_estimate <= est.upper);
        b.check("lower bound at least |L|", est.lower >= keep);
        b.check("complete list detected", (keep == 759) == est.complete);
    }
    for (const double mu : {0.6, 0.9, 0.99, 0.9999})
        b.check("Q(beta(mu)) = (1 - mu) / 2", std::abs(q_function(beta_from_mu(mu)) - (1.0 - mu) / 2.0) < 1e-6);
    const double rates[] = {0.25, 0.25, 0.25};
    b.check("equal rates give zero deviation", summarize_recovery(8, 10, rates, 0.99).sigma == 0.0);
}

void bound_properties(PropertyBattery& b, std::uint64_t seed)
{
    Rng rng(derive_seed(seed, stream_sampler, 5));
    const RateContext rc(127, 50);
    for (int i = 0; i < 50; ++i) {
        WeightMap m;
        for (int j = 0; j < 5; ++j) m[1 + rng.below(60)] = 1.0 + static_cast<double>(rng.below(100000));
        double prev_w = INFINITY, prev_b = INFINITY;
        for (const double db : parse_snr_grid("-2:10:0.5")) {
            const double w = union_bound_word(m, rc, db), bb = union_bound_bit(m, rc, db);
            b.check("bounds non-increasing in SNR", w <= prev_w && bb <= prev_b);
            b.check("bit bound below word bound", bb <= w * (1 + 1e-12));
            prev_w = w;
            prev_b = bb;
        }
        WeightMap more = m;
        more[61 + rng.below(20)] = 5.0;
        b.check("extra terms never lower the bound", union_bound_bit(more, rc, 3.0) >= union_bound_bit(m, rc, 3.0));
    }
}

void simulation_properties(PropertyBattery& b, std::uint64_t seed)
{
    const auto code = catalog_code("hamming-7-4");
    SimConfig cfg;
    cfg.snr_grid_db = {0.0, 2.0, 4.0};
    cfg.min_bit_errors = 200;
    cfg.min_blocks = 5000;
    cfg.seed = seed;
    for (const auto& p : simulate_points(*code, DecoderKind::mld(), cfg)) {
        b.check("stopping rule honored", p.capped || (p.blocks >= 5000 && p.bit_errors >= 200));
        b.check("ber at most 1", p.ber() <= 1.0);
    }
    Rng rng(derive_seed(seed, stream_simulate, 99));
    const double sigma = noise_sigma(2.0, 0.5);
    const auto r = transmit_awgn(BitWord(1'000'000), sigma, rng);
    double mean = 0.0, sq = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(r.size());
    for (double v : r) sq += (v - mean) * (v - mean);
    const double sample_sigma = std::sqrt(sq / static_cast<double>(r.size() - 1));
    b.check("noise deviation within 1%", std::abs(sample_sigma / sigma - 1.0) < 0.01 && std::abs(mean - 1.0) < 0.01);
}

Outcome property_suites(const Context& ctx)
{
    PropertyBattery battery;
    for (const std::uint64_t seed : {101u, 202u, 303u}) {
        gf2_properties(battery, seed);
        code_properties(battery, seed);
        decoder_properties(battery, seed);
        harvest_properties(battery, seed);
        estimator_properties(battery, seed);
        bound_properties(battery, seed);
        simulation_properties(battery, seed);
        ctx.note(fmt("seed ", seed, ": ", battery.total(), " checks so far"));
    }
    std::string detail = fmt(battery.total(), " checks");
    for (const auto& f : battery.failed()) detail += "; failed: " + f;
    return {battery.failed().empty(), detail};
}

struct Criterion {
    int id;
    const char* title;
    Outcome (*run)(const Context&);
};

const Criterion criteria[] = {
    {1, "Golay exact weight enumerator", golay_exact},
    {2, "QR(47,24) exhaustive partial enumerator", qr47_exact},
    {3, "beta from confidence level", beta_table},
    {4, "interval arithmetic golden values", interval_golden},
    {5, "estimator calibration", calibration},
    {6, "Golay harvest completeness", golay_harvest_complete},
    {7, "Golay simulation against bit bound", golay_simulation},
    {8, "partial enumerator sufficiency", pwe_sufficiency},
    {9, "BCH(127,50) statistical reproduction", bch127_statistical},
    {10, "shortened BCH(130,66) weight-17 class", shortened_stretch},
    {11, "OSD(k) and MLD agree", decoder_equivalence},
    {12, "property suites", property_suites},
};

}  // namespace

int criterion_count() { return static_cast<int>(std::size(criteria)); }

std::vector<CriterionResult> run_acceptance(const Options& options, std::ostream& out)
{
    std::vector<CriterionResult> results;
    const Context ctx{options, out};
    for (const auto& c : criteria) {
        if (!options.only.empty() && !options.only.contains(c.id)) continue;
        CriterionResult r;
        r.id = c.id;
        r.title = c.title;
        const auto t0 = Clock::now();
        try {
            const auto o = c.run(ctx);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        out << (r.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << "  " << r.title
            << "  [" << std::fixed << std::setprecision(2) << r.seconds << " s]  " << r.detail << '\n'
            << std::defaultfloat << std::flush;
        results.push_back(std::move(r));
    }
    return results;
}

// ---------------------------------------------------------------------------

void run_timing_table(const Options& options, std::ostream& out)
{
    struct Row {
        const char* code;
        std::size_t w;
        double reference_seconds;
        std::uint64_t trials;
    };
    const Row rows[] = {
        {"bch-63-39", 9, 73, 20000},   {"bch-63-39", 10, 383, 20000},   {"bch-63-39", 11, 5840, 20000},
        {"qr-71-36", 11, 43, 20000},   {"qr-71-36", 12, 254, 20000},    {"qr-71-36", 15, 10291, 20000},
    };
    out << "code        w   |L_w|   estimate  interval                 measured_s  reference_s\n";
    for (const auto& row : rows) {
        const auto code = catalog_code(row.code);
        const auto t0 = Clock::now();
        HarvestConfig cfg;
        cfg.settings.decoder = DecoderKind::osd(2);
        cfg.settings.snr_grid_db = {1.0};
        cfg.trials = row.trials;
        cfg.weight_window = WeightWindow{row.w, row.w};
        cfg.seed = 8;
        cfg.threads = options.threads;
        const auto h = harvest(code, cfg);
        const auto& list = h.lists.at(row.w);
        std::string cells = "(empty list)";
        if (!list.empty()) {
            ImpulseSampler sampler(code, cfg.settings);
            EstimatorParams p;
            p.threads = options.threads;
            try {
                const auto e = estimate_recovery(list, sampler, p, 88);
                cells = fmt(std::setw(9), e.count_estimate, "  [", e.lower, ", ", e.upper, "]");
            } catch (const EstimationFailure& e) {
                cells = e.what();
            }
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        out << std::left << std::setw(11) << row.code << ' ' << std::setw(3) << row.w << ' ' << std::right
            << std::setw(7) << list.size() << "  " << std::left << std::setw(34) << cells << std::right
            << std::fixed << std::setprecision(1) << std::setw(10) << secs << std::setw(13)
            << row.reference_seconds << '\n'
            << std::defaultfloat << std::flush;
    }
}

}  // namespace pwe::validation
