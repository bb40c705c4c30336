#include "pwe/code.hpp"

#include "pwe/detail/gray_walk.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace pwe {

using detail::flatten_rows;
using detail::gray_walk_dispatch;

// ---------------------------------------------------------------------------
// CodeSpec

CodeSpec::CodeSpec(std::string name, GF2Matrix generator, Options options)
    : name_(std::move(name)),
      generator_(std::move(generator)),
      generator_poly_(std::move(options.generator_poly)),
      is_cyclic_(options.is_cyclic),
      d_known_(options.d_known),
      parent_(std::move(options.parent))
{
    if (generator_.cols() == 0) throw std::invalid_argument("code length must be positive");
    auto ech = rref(generator_);
    if (ech.rank != generator_.rows())
        throw std::invalid_argument("generator matrix of " + name_ + " is rank deficient");
    systematic_ = std::move(ech.reduced);
    info_positions_ = std::move(ech.pivot_columns);

    auto sys = systematic_form(generator_);
    parity_check_ = GF2Matrix(n());
    const auto h_perm = parity_check_from_generator(sys.generator);
    for (std::size_t r = 0; r < h_perm.rows(); ++r)
        parity_check_.append_row(unpermute_columns(h_perm.row(r), sys.permutation));

    if (parent_) {
        const auto& p = *parent_->parent;
        if (p.n() != n() + parent_->removed.size())
            throw std::invalid_argument("shortened code length inconsistent with parent");
        std::vector<bool> removed(p.n(), false);
        for (auto c : parent_->removed) removed.at(c) = true;
        for (std::size_t c = 0; c < p.n(); ++c) {
            if (!removed[c]) kept_parent_coordinates_.push_back(c);
        }
    }
}

BitWord CodeSpec::encode(const BitWord& info) const
{
    if (info.size() != k())
        throw std::invalid_argument("information word has length " + std::to_string(info.size()) +
                                    ", expected " + std::to_string(k()));
    BitWord c(n());
    for (auto i : info.support()) c ^= systematic_.row(i);
    return c;
}

BitWord CodeSpec::extract_info(const BitWord& codeword) const
{
    if (codeword.size() != n()) throw std::invalid_argument("codeword length mismatch");
    BitWord info(k());
    for (std::size_t i = 0; i < k(); ++i) {
        if (codeword.test(info_positions_[i])) info.set(i);
    }
    return info;
}

bool CodeSpec::contains(const BitWord& word) const
{
    if (word.size() != n())
        throw std::invalid_argument("word has length " + std::to_string(word.size()) +
                                    ", code length is " + std::to_string(n()));
    return parity_check_.multiply_transposed(word).none();
}

BitWord CodeSpec::lift_to_parent(const BitWord& word) const
{
    if (!parent_) throw std::logic_error(name_ + " has no parent code");
    if (word.size() != n()) throw std::invalid_argument("word length mismatch");
    BitWord out(parent_->parent->n());
    for (auto i : word.support()) out.set(kept_parent_coordinates_[i]);
    return out;
}

std::optional<BitWord> CodeSpec::project_from_parent(const BitWord& parent_word) const
{
    if (!parent_) throw std::logic_error(name_ + " has no parent code");
    if (parent_word.size() != parent_->parent->n())
        throw std::invalid_argument("parent word length mismatch");
    for (auto c : parent_->removed) {
        if (parent_word.test(c)) return std::nullopt;
    }
    BitWord out(n());
    for (std::size_t i = 0; i < kept_parent_coordinates_.size(); ++i) {
        if (parent_word.test(kept_parent_coordinates_[i])) out.set(i);
    }
    return out;
}

CodeSpec CodeSpec::renamed(std::string name) const
{
    CodeSpec copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

// ---------------------------------------------------------------------------
// Constructions

CodeSpec cyclic_code(std::string name, const GF2Poly& g, std::size_t n)
{
    if (g.is_zero()) throw std::invalid_argument("zero generator polynomial");
    const std::size_t deg = *g.degree();
    if (deg >= n) throw std::invalid_argument("generator degree must be below the code length");
    if (!poly_divmod(GF2Poly::x_pow_n_plus_one(n), g).remainder.is_zero())
        throw std::invalid_argument("generator polynomial does not divide x^" + std::to_string(n) +
                                    " + 1");
    const std::size_t k = n - deg;
    GF2Matrix gen(n);
    const auto exps = g.exponents();
    for (std::size_t i = 0; i < k; ++i) {
        BitWord row(n);
        for (auto e : exps) row.set(e + i);
        gen.append_row(std::move(row));
    }
    CodeSpec::Options opt;
    opt.generator_poly = g;
    opt.is_cyclic = true;
    return CodeSpec(std::move(name), std::move(gen), std::move(opt));
}

CodeSpec shorten(std::string name, const CodePtr& parent, std::size_t s)
{
    if (!parent || !parent->is_cyclic() || !parent->generator_poly())
        throw std::invalid_argument("shortening requires a cyclic parent with a generator polynomial");
    if (s >= parent->k())
        throw std::invalid_argument("cannot shorten by " + std::to_string(s) +
                                    " coordinates a code of dimension " +
                                    std::to_string(parent->k()));
    const std::size_t n = parent->n() - s;
    const std::size_t k = parent->k() - s;
    const auto exps = parent->generator_poly()->exponents();
    GF2Matrix gen(n);
    for (std::size_t i = 0; i < k; ++i) {
        BitWord row(n);
        for (auto e : exps) row.set(e + i);
        gen.append_row(std::move(row));
    }
    ShortenedFrom link{parent, {}};
    for (std::size_t c = n; c < parent->n(); ++c) link.removed.push_back(c);

    CodeSpec::Options opt;
    opt.generator_poly = parent->generator_poly();
    opt.d_known = parent->d_known();
    opt.parent = std::move(link);
    return CodeSpec(std::move(name), std::move(gen), std::move(opt));
}

CodeSpec extend_with_parity(std::string name, const CodeSpec& code)
{
    const std::size_t n = code.n();
    GF2Matrix gen(n + 1);
    for (std::size_t r = 0; r < code.k(); ++r) {
        const auto& src = code.generator().row(r);
        BitWord row(n + 1);
        for (auto i : src.support()) row.set(i);
        if (src.weight() % 2 == 1) row.set(n);
        gen.append_row(std::move(row));
    }
    CodeSpec::Options opt;
    if (auto d = code.d_known()) opt.d_known = (*d % 2 == 1) ? *d + 1 : *d;
    return CodeSpec(std::move(name), std::move(gen), std::move(opt));
}

namespace {

bool is_prime(std::size_t p)
{
    if (p < 2) return false;
    for (std::size_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

}  // namespace

GF2Poly qr_generator_polynomial(std::size_t p)
{
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("QR length must be an odd prime");
    if (p % 8 != 1 && p % 8 != 7)
        throw std::invalid_argument("2 is not a quadratic residue modulo " + std::to_string(p));

    std::vector<bool> residue(p, false);
    for (std::size_t x = 1; x < p; ++x) residue[(x * x) % p] = true;
    std::vector<std::size_t> qr, nqr;
    for (std::size_t r = 1; r < p; ++r) (residue[r] ? qr : nqr).push_back(r);

    const auto theta = GF2Poly::from_exponents(qr);
    const auto theta_n = GF2Poly::from_exponents(nqr);
    const auto one = GF2Poly::one();
    const auto xn1 = GF2Poly::x_pow_n_plus_one(p);
    const std::size_t target = (p - 1) / 2;

    for (const auto& candidate : {theta, one + theta_n, theta + one, theta_n}) {
        if (candidate.is_zero()) continue;
        auto g = poly_gcd(xn1, candidate);
        if (g.degree() == target && poly_divmod(xn1, g).remainder.is_zero()) return g;
    }
    throw std::runtime_error("no quadratic-residue generator found for p = " + std::to_string(p));
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

std::size_t exhaustive_k_limit()
{
    if (const char* env = std::getenv("PWE_EXHAUSTIVE_K_LIMIT")) {
        char* end = nullptr;
        const auto v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 63) return static_cast<std::size_t>(v);
    }
    return 26;
}

namespace {

void check_exhaustive(const CodeSpec& code)
{
    const auto limit = exhaustive_k_limit();
    if (code.k() > limit)
        throw std::invalid_argument("exhaustive enumeration of " + code.name() + " needs k = " +
                                    std::to_string(code.k()) + " > limit " + std::to_string(limit));
}

}  // namespace

std::vector<std::size_t> WeightDistribution::nonzero_weights() const
{
    std::vector<std::size_t> out;
    for (std::size_t w = 1; w < counts.size(); ++w) {
        if (counts[w] != 0) out.push_back(w);
    }
    return out;
}

std::uint64_t WeightDistribution::total() const
{
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

WeightDistribution exact_weight_distribution(const CodeSpec& code,
                                             std::optional<std::size_t> max_weight,
                                             unsigned threads)
{
    check_exhaustive(code);
    const std::size_t n = code.n();
    const auto rows = flatten_rows(code.systematic());
    const std::size_t limbs = (n + 63) / 64;
    const std::uint64_t total = std::uint64_t{1} << code.k();

    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    const std::uint64_t chunks = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total >> 12));

    std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(n + 1, 0));
    auto work = [&](std::uint64_t c) {
        const std::uint64_t begin = total / chunks * c;
        const std::uint64_t end = c + 1 == chunks ? total : total / chunks * (c + 1);
        auto& counts = partial[c];
        gray_walk_dispatch(rows, limbs, begin, end, [&](const std::uint64_t* w) {
            std::size_t wt = 0;
            for (std::size_t l = 0; l < limbs; ++l) wt += static_cast<std::size_t>(std::popcount(w[l]));
            ++counts[wt];
        });
    };
    if (chunks == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t c = 0; c < chunks; ++c) pool.emplace_back(work, c);
        for (auto& t : pool) t.join();
    }

    WeightDistribution out;
    out.counts.assign(n + 1, 0);
    for (const auto& p : partial) {
        for (std::size_t w = 0; w <= n; ++w) out.counts[w] += p[w];
    }
    if (max_weight && *max_weight < n) {
        for (std::size_t w = *max_weight + 1; w <= n; ++w) out.counts[w] = 0;
        out.complete = false;
    }
    return out;
}

std::vector<BitWord> enumerate_weight_class(const CodeSpec& code, std::size_t w)
{
    check_exhaustive(code);
    const std::size_t n = code.n();
    const auto rows = flatten_rows(code.systematic());
    const std::size_t limbs = (n + 63) / 64;
    std::vector<BitWord> out;
    gray_walk_dispatch(rows, limbs, 0, std::uint64_t{1} << code.k(), [&](const std::uint64_t* cw) {
        std::size_t wt = 0;
        for (std::size_t l = 0; l < limbs; ++l) wt += static_cast<std::size_t>(std::popcount(cw[l]));
        if (wt != w) return;
        BitWord word(n);
        std::copy(cw, cw + limbs, word.limbs().begin());
        out.push_back(std::move(word));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Catalog

namespace generators {

std::vector<std::size_t> bch_127_50()
{
    return {0,  1,  2,  3,  5,  6,  9,  10, 11, 13, 14, 15, 17, 18, 26, 27, 28, 33, 35, 36,
            37, 38, 42, 43, 45, 47, 48, 51, 56, 57, 58, 59, 60, 64, 65, 68, 72, 75, 77};
}

std::vector<std::size_t> bch_255_191()
{
    return {0,  2,  3,  5,  6,  9,  10, 11, 14, 15, 16, 22, 23, 24, 25, 26, 27, 31, 34, 35,
            37, 39, 40, 42, 43, 45, 46, 47, 48, 49, 52, 53, 56, 58, 59, 60, 62, 63, 64};
}

std::vector<std::size_t> bch_127_71()
{
    return {0,  4,  10, 11, 13, 16, 17, 20, 23, 24, 25, 28, 32, 35,
            39, 40, 41, 42, 43, 44, 45, 46, 48, 49, 51, 53, 56};
}

// Product of the minimal polynomials of alpha, alpha^3, alpha^5, alpha^7 over
// GF(64) built on x^6 + x + 1.
std::vector<std::size_t> bch_63_39()
{
    return {0, 1, 2, 4, 5, 6, 8, 9, 10, 13, 16, 17, 19, 20, 22, 23, 24};
}

}  // namespace generators

namespace {

CodeSpec with_distance(CodeSpec code, std::size_t d)
{
    CodeSpec::Options opt;
    opt.generator_poly = code.generator_poly();
    opt.is_cyclic = code.is_cyclic();
    opt.d_known = d;
    opt.parent = code.parent();
    return CodeSpec(code.name(), code.generator(), std::move(opt));
}

CodePtr make_cyclic(const std::string& name, const GF2Poly& g, std::size_t n, std::size_t d)
{
    return std::make_shared<const CodeSpec>(with_distance(cyclic_code(name, g, n), d));
}

using Builder = std::function<CodePtr()>;

const std::vector<std::pair<std::string, Builder>>& builders()
{
    static const std::vector<std::pair<std::string, Builder>> table = {
        {"hamming-7-4", [] { return make_cyclic("hamming-7-4", GF2Poly::from_exponents({0, 1, 3}), 7, 3); }},
        {"qr-23-12", [] { return make_cyclic("qr-23-12", qr_generator_polynomial(23), 23, 7); }},
        {"golay-24-12",
         [] {
             return std::make_shared<const CodeSpec>(
                 extend_with_parity("golay-24-12", *catalog_code("qr-23-12")));
         }},
        {"qr-47-24", [] { return make_cyclic("qr-47-24", qr_generator_polynomial(47), 47, 11); }},
        {"qr-71-36", [] { return make_cyclic("qr-71-36", qr_generator_polynomial(71), 71, 11); }},
        {"qr-73-37", [] { return make_cyclic("qr-73-37", qr_generator_polynomial(73), 73, 13); }},
        {"bch-63-39",
         [] { return make_cyclic("bch-63-39", GF2Poly::from_exponents(generators::bch_63_39()), 63, 9); }},
        {"bch-127-50",
         [] { return make_cyclic("bch-127-50", GF2Poly::from_exponents(generators::bch_127_50()), 127, 27); }},
        {"bch-127-71",
         [] { return make_cyclic("bch-127-71", GF2Poly::from_exponents(generators::bch_127_71()), 127, 19); }},
        {"bch-255-191",
         [] { return make_cyclic("bch-255-191", GF2Poly::from_exponents(generators::bch_255_191()), 255, 17); }},
        {"bch-130-66",
         [] { return std::make_shared<const CodeSpec>(shorten("bch-130-66", catalog_code("bch-255-191"), 125)); }},
        {"bch-103-47",
         [] { return std::make_shared<const CodeSpec>(shorten("bch-103-47", catalog_code("bch-127-71"), 24)); }},
        {"bch-111-55",
         [] { return std::make_shared<const CodeSpec>(shorten("bch-111-55", catalog_code("bch-127-71"), 16)); }},
    };
    return table;
}

}  // namespace

std::vector<std::string> catalog_names()
{
    std::vector<std::string> out;
    for (const auto& [name, _] : builders()) out.push_back(name);
    return out;
}

CodePtr catalog_code(const std::string& name)
{
    static std::recursive_mutex mutex;
    static std::map<std::string, CodePtr> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    for (const auto& [entry, build] : builders()) {
        if (entry == name) return cache[name] = build();
    }
    throw std::out_of_range("unknown code: " + name);
}

}  // namespace pwe
