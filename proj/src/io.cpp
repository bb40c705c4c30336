#include "pwe/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace pwe::io {

namespace fs = std::filesystem;

FormatError::FormatError(const fs::path& path, std::size_t line, const std::string& what)
    : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what)
{
}

namespace {

std::ifstream open_in(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
    return in;
}

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const fs::path& path)
{
    out.flush();
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(s);
    while (std::getline(in, field, sep)) out.push_back(trim(field));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

/// "key=value" tokens of a "# a=1 b=2" header line.
std::map<std::string, std::string> header_fields(const std::string& line)
{
    std::map<std::string, std::string> out;
    std::istringstream in(line.substr(1));
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        out[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return out;
}

template <typename T>
T parse_number(const fs::path& path, std::size_t line, const std::string& text)
{
    T value{};
    const char* b = text.data();
    const char* e = b + text.size();
    auto [ptr, ec] = std::from_chars(b, e, value);
    if (ec != std::errc{} || ptr != e || text.empty())
        throw FormatError(path, line, "bad number '" + text + "'");
    return value;
}

bool parse_bool(const fs::path& path, std::size_t line, const std::string& text)
{
    if (text == "1" || text == "true") return true;
    if (text == "0" || text == "false") return false;
    throw FormatError(path, line, "bad flag '" + text + "'");
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string require(const std::map<std::string, std::string>& fields, const std::string& key,
                    const fs::path& path)
{
    auto it = fields.find(key);
    if (it == fields.end()) throw FormatError(path, 1, "header lacks '" + key + "'");
    return it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Codeword lists

void write_codeword_list(std::ostream& out, const std::string& code_name, const WeightClassList& list)
{
    out << "# code=" << code_name << " n=" << list.code()->n() << " w=" << list.weight()
        << " count=" << list.size() << '\n';
    for (const auto& word : list.sorted_members()) out << word.to_hex() << '\n';
}

void write_codeword_list(const fs::path& path, const std::string& code_name, const WeightClassList& list)
{
    auto out = open_out(path);
    write_codeword_list(out, code_name, list);
    finish(out, path);
}

WeightClassList read_codeword_list(const fs::path& path, const CodePtr& code)
{
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        throw FormatError(path, 1, "missing '# code=... n=... w=... count=...' header");
    const auto fields = header_fields(line);
    const auto n = parse_number<std::size_t>(path, 1, require(fields, "n", path));
    const auto w = parse_number<std::size_t>(path, 1, require(fields, "w", path));
    const auto count = parse_number<std::size_t>(path, 1, require(fields, "count", path));
    if (n != code->n())
        throw FormatError(path, 1, "list is for n=" + std::to_string(n) + " but " + code->name() +
                                       " has n=" + std::to_string(code->n()));

    WeightClassList list(code, w);
    std::size_t lineno = 1;
    std::size_t words = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hex = trim(line);
        if (hex.empty() || hex[0] == '#') continue;
        ++words;
        try {
            list.insert(BitWord::from_hex(n, hex));
        } catch (const std::exception& e) {
            throw FormatError(path, lineno, e.what());
        }
    }
    if (words != count)
        throw FormatError(path, 1, "header count " + std::to_string(count) + " but " +
                                       std::to_string(words) + " words follow");
    return list;
}

fs::path list_file_path(const fs::path& dir, const std::string& code_name, std::size_t w)
{
    return dir / (code_name + ".w" + std::to_string(w) + ".txt");
}

HarvestLists read_list_directory(const fs::path& dir, const CodePtr& code)
{
    HarvestLists lists;
    if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");
    const std::regex pattern(std::regex_replace(code->name(), std::regex(R"([.^$|()\[\]{}*+?\\])"),
                                                R"(\$&)") +
                             R"(\.w([0-9]+)\.txt)");
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::smatch m;
        const auto file = entry.path().filename().string();
        if (!std::regex_match(file, m, pattern)) continue;
        auto list = read_codeword_list(entry.path(), code);
        const auto w = std::stoul(m[1].str());
        if (list.weight() != w)
            throw FormatError(entry.path(), 1, "file name and header disagree on the weight");
        lists.insert_or_assign(w, std::move(list));
    }
    return lists;
}

void write_list_directory(const fs::path& dir, const std::string& code_name, const HarvestLists& lists)
{
    fs::create_directories(dir);
    for (const auto& [w, list] : lists) write_codeword_list(list_file_path(dir, code_name, w), code_name, list);
}

// ---------------------------------------------------------------------------
// Weight distributions

void write_weight_distribution(const fs::path& path, const WeightDistribution& wd)
{
    auto out = open_out(path);
    out << "w,count\n";
    for (std::size_t w = 0; w < wd.counts.size(); ++w)
        if (wd[w] != 0) out << w << ',' << wd[w] << '\n';
    finish(out, path);
}

WeightMap read_weight_csv(const fs::path& path)
{
    auto in = open_in(path);
    WeightMap out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t[0] == '#' || t.rfind("w,", 0) == 0) continue;
        const auto f = split(t, ',');
        if (f.size() < 2) throw FormatError(path, lineno, "expected 'w,count'");
        const auto w = parse_number<std::size_t>(path, lineno, f[0]);
        if (w == 0) continue;
        out[w] = parse_number<double>(path, lineno, f[1]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partial weight enumerators

void write_pwe(std::ostream& out, const PartialWeightEnumerator& pwe, const PweFileHeader& header)
{
    out << "# code=" << header.code_name << " mu=" << format_double(header.mu) << " M=" << header.m
        << " q=" << header.q << '\n';
    for (const auto& e : pwe.entries)
        out << e.w << ',' << e.count_estimate << ',' << e.lower << ',' << e.upper << ','
            << (e.complete ? 1 : 0) << '\n';
}

void write_pwe(const fs::path& path, const PartialWeightEnumerator& pwe, const PweFileHeader& header)
{
    auto out = open_out(path);
    write_pwe(out, pwe, header);
    finish(out, path);
}

PartialWeightEnumerator read_pwe(const fs::path& path, PweFileHeader* header)
{
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        throw FormatError(path, 1, "missing '# code=... mu=... M=... q=...' header");
    const auto fields = header_fields(line);
    PartialWeightEnumerator pwe;
    pwe.code_name = require(fields, "code", path);
    if (header) {
        header->code_name = pwe.code_name;
        header->mu = parse_number<double>(path, 1, require(fields, "mu", path));
        header->m = parse_number<std::size_t>(path, 1, require(fields, "M", path));
        header->q = parse_number<std::size_t>(path, 1, require(fields, "q", path));
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t[0] == '#' || t.rfind("w,", 0) == 0) continue;
        const auto f = split(t, ',');
        if (f.size() != 5) throw FormatError(path, lineno, "expected 5 fields");
        PweEntry e;
        e.w = parse_number<std::size_t>(path, lineno, f[0]);
        e.count_estimate = parse_number<std::uint64_t>(path, lineno, f[1]);
        e.lower = parse_number<std::uint64_t>(path, lineno, f[2]);
        e.upper = parse_number<std::uint64_t>(path, lineno, f[3]);
        e.complete = parse_bool(path, lineno, f[4]);
        if (!pwe.entries.empty() && e.w <= pwe.entries.back().w)
            throw FormatError(path, lineno, "weights must increase");
        if (e.lower > e.count_estimate || e.count_estimate > e.upper)
            throw FormatError(path, lineno, "estimate outside its interval");
        pwe.entries.push_back(e);
    }
    return pwe;
}

// ---------------------------------------------------------------------------
// Curves

void write_curve(std::ostream& out, const BoundCurve& curve)
{
    const bool intervals = std::any_of(curve.points.begin(), curve.points.end(),
                                       [](const CurvePoint& p) { return p.lower.has_value(); });
    out << (intervals ? "ebn0_db,value,lower,upper\n" : "ebn0_db,value\n");
    for (const auto& p : curve.points) {
        out << format_double(p.ebn0_db) << ',' << format_double(p.value);
        if (intervals)
            out << ',' << format_double(p.lower.value_or(p.value)) << ','
                << format_double(p.upper.value_or(p.value));
        out << '\n';
    }
}

void write_curve(const fs::path& path, const BoundCurve& curve)
{
    auto out = open_out(path);
    write_curve(out, curve);
    finish(out, path);
}

void write_sim_curve(const fs::path& path, const std::vector<SimPoint>& points)
{
    auto out = open_out(path);
    out << "ebn0_db,value,kind,blocks,bit_errors,capped\n";
    for (const auto& p : points)
        out << format_double(p.ebn0_db) << ',' << format_double(p.ber()) << ','
            << to_string(CurveKind::simulated_ber) << ',' << p.blocks << ',' << p.bit_errors << ','
            << (p.capped ? 1 : 0) << '\n';
    finish(out, path);
}

BoundCurve read_curve(const fs::path& path)
{
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path, 1, "empty curve file");
    const auto cols = split(trim(line), ',');
    auto col = [&](const std::string& name) -> std::optional<std::size_t> {
        auto it = std::find(cols.begin(), cols.end(), name);
        if (it == cols.end()) return std::nullopt;
        return static_cast<std::size_t>(it - cols.begin());
    };
    const auto x = col("ebn0_db");
    const auto v = col("value");
    if (!x || !v) throw FormatError(path, 1, "header must name ebn0_db and value");
    const auto lo = col("lower"), hi = col("upper"), kind = col("kind");

    BoundCurve curve;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto f = split(t, ',');
        if (f.size() != cols.size()) throw FormatError(path, lineno, "column count mismatch");
        CurvePoint p;
        p.ebn0_db = parse_number<double>(path, lineno, f[*x]);
        p.value = parse_number<double>(path, lineno, f[*v]);
        if (lo) p.lower = parse_number<double>(path, lineno, f[*lo]);
        if (hi) p.upper = parse_number<double>(path, lineno, f[*hi]);
        if (kind) curve.kind = curve_kind_from_string(f[*kind]);
        curve.points.push_back(p);
    }
    if (lo && !kind) curve.kind = CurveKind::truncated_bound;
    return curve;
}

// ---------------------------------------------------------------------------
// Code definitions

CodePtr read_code_definition(const fs::path& path)
{
    auto in = open_in(path);
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw FormatError(path, lineno, "expected key=value");
        const auto key = trim(t.substr(0, eq));
        if (key != "name" && key != "n" && key != "g" && key != "shorten" && key != "d")
            throw FormatError(path, lineno, "unknown key '" + key + "'");
        kv[key] = {trim(t.substr(eq + 1)), lineno};
    }
    auto get = [&](const std::string& key) -> const std::pair<std::string, std::size_t>& {
        auto it = kv.find(key);
        if (it == kv.end()) throw FormatError(path, lineno, "missing '" + key + "='");
        return it->second;
    };

    const auto& [n_text, n_line] = get("n");
    const auto n = parse_number<std::size_t>(path, n_line, n_text);
    const auto& [g_text, g_line] = get("g");
    std::vector<std::size_t> exps;
    for (const auto& e : split(g_text, ',')) exps.push_back(parse_number<std::size_t>(path, g_line, e));
    const std::string name = kv.contains("name") ? kv["name"].first : path.stem().string();

    std::optional<std::size_t> s;
    if (kv.contains("shorten")) s = parse_number<std::size_t>(path, kv["shorten"].second, kv["shorten"].first);
    std::optional<std::size_t> d;
    if (kv.contains("d")) d = parse_number<std::size_t>(path, kv["d"].second, kv["d"].first);

    try {
        auto parent_spec = cyclic_code(s && *s > 0 ? name + "-parent" : name,
                                       GF2Poly::from_exponents(exps), n);
        auto with_d = [&](CodeSpec spec) {
            if (!d) return spec;
            CodeOptions opt;
            opt.generator_poly = spec.generator_poly();
            opt.is_cyclic = spec.is_cyclic();
            opt.parent = spec.parent();
            opt.d_known = d;
            return CodeSpec(spec.name(), spec.generator(), opt);
        };
        if (!s || *s == 0) return std::make_shared<const CodeSpec>(with_d(std::move(parent_spec)));
        auto parent = std::make_shared<const CodeSpec>(std::move(parent_spec));
        return std::make_shared<const CodeSpec>(with_d(shorten(name, parent, *s)));
    } catch (const std::invalid_argument& e) {
        throw FormatError(path, g_line, e.what());
    }
}

CodePtr resolve_code(const std::string& name_or_path)
{
    const auto names = catalog_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end())
        return catalog_code(name_or_path);
    if (fs::is_regular_file(name_or_path)) return read_code_definition(name_or_path);
    throw std::invalid_argument("unknown code '" + name_or_path +
                                "' (not in the catalog and not a definition file)");
}

}  // namespace pwe::io
