#pragma once

#include <string>
#include <vector>

#include "modsym/field.hpp"
#include "modsym/reduce.hpp"

namespace modsym {
namespace io {

/// Field file: {"min_poly": [c0, ..., 1], "basis": [[row], ...]} with
/// rationals as numbers or "p/q" strings.
OrderSpec parse_field(const std::string& json_text);
OrderSpec load_field_file(const std::string& path);
std::string field_to_json(const OrderSpec& spec);

/// Matrix file: {"matrix": [col, ...]}; each column is an array of n
/// entries, each entry an integer, a "p/q" string, or a length-d array of
/// such values.
std::vector<std::vector<FieldElement>> parse_matrix(const std::string& json_text,
                                                    const NumberOrder& order);
std::vector<std::vector<FieldElement>> load_matrix_file(const std::string& path,
                                                        const NumberOrder& order);

std::string certificate_to_json(const ReductionCertificate& cert);
ReductionCertificate parse_certificate(const std::string& json_text, const NumberOrder& order);
ReductionCertificate load_certificate_file(const std::string& path, const NumberOrder& order);

std::string chain_to_json(const SymbolChain& chain);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace io
} // namespace modsym
