// Text file formats: codeword lists, weight distributions, partial
// enumerators, curves and code definitions.

#ifndef PWE_IO_HPP
#define PWE_IO_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pwe/bounds.hpp"
#include "pwe/code.hpp"
#include "pwe/harvest.hpp"
#include "pwe/partial_enumerator.hpp"
#include "pwe/simulation.hpp"

namespace pwe::io {

/// Malformed file content; carries the offending path and line.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::filesystem::path& path, std::size_t line, const std::string& what);
};

// Codeword lists ------------------------------------------------------------
//
//   # code=<name> n=<n> w=<w> count=<m>
//   <hex word>            one per line, ceil(n/4) lowercase digits

void write_codeword_list(std::ostream& out, const std::string& code_name,
                         const WeightClassList& list);
void write_codeword_list(const std::filesystem::path& path, const std::string& code_name,
                         const WeightClassList& list);
/// Duplicates are merged; every word is checked against the code.
WeightClassList read_codeword_list(const std::filesystem::path& path, const CodePtr& code);

/// <dir>/<code>.w<w>.txt
std::filesystem::path list_file_path(const std::filesystem::path& dir, const std::string& code_name,
                                     std::size_t w);
/// Reads every <code>.w*.txt file in dir.
HarvestLists read_list_directory(const std::filesystem::path& dir, const CodePtr& code);
/// Writes one file per weight (including empty lists from `weights`).
void write_list_directory(const std::filesystem::path& dir, const std::string& code_name,
                          const HarvestLists& lists);

// Weight distributions: "w,count" CSV --------------------------------------

void write_weight_distribution(const std::filesystem::path& path, const WeightDistribution& wd);
WeightMap read_weight_csv(const std::filesystem::path& path);

// Partial weight enumerators -------------------------------------------------
//
//   # code=<name> mu=<mu> M=<M> q=<q>
//   w,count_estimate,lower,upper,complete

struct PweFileHeader {
    std::string code_name;
    double mu = 0.0;
    std::size_t m = 0;
    std::size_t q = 0;
};

void write_pwe(std::ostream& out, const PartialWeightEnumerator& pwe, const PweFileHeader& header);
void write_pwe(const std::filesystem::path& path, const PartialWeightEnumerator& pwe,
               const PweFileHeader& header);
PartialWeightEnumerator read_pwe(const std::filesystem::path& path, PweFileHeader* header = nullptr);

// Curves: "ebn0_db,value[,lower,upper]", 12 significant digits --------------

void write_curve(std::ostream& out, const BoundCurve& curve);
void write_curve(const std::filesystem::path& path, const BoundCurve& curve);
/// Simulation curve with kind and counter columns.
void write_sim_curve(const std::filesystem::path& path, const std::vector<SimPoint>& points);
BoundCurve read_curve(const std::filesystem::path& path);

// Code definitions -----------------------------------------------------------
//
//   name=<name>            optional
//   n=<length>
//   g=<comma-separated exponents>
//   shorten=<s>            optional
//   d=<minimum distance>   optional

CodePtr read_code_definition(const std::filesystem::path& path);

/// Catalog name, or a path to a code-definition file.
CodePtr resolve_code(const std::string& name_or_path);

}  // namespace pwe::io

#endif  // PWE_IO_HPP
