#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cellsheaf/kernels.hpp"
#include "cellsheaf/modules.hpp"

namespace cellsheaf {

using Json = nlohmann::json;

/// Malformed or schema-violating input. Messages carry the line number.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json to_json(const Matrix& m);
Json to_json(const ChainComplex& c);
Json to_json(const SimplicialComplex& k);
Json to_json(const SheafComplex& f);
Json to_json(const PosetModule& m);
Json to_json(const Kernel& k);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

/// Parsers accept the output of dump(). A "base" given as a string names a
/// built-in fixture. All of them throw InputError.
ComplexPtr parse_complex(const std::string& text);
ChainComplex parse_chain_complex(const std::string& text);
SheafComplex parse_sheaf(const std::string& text);
PosetModule parse_module(const std::string& text);
Kernel parse_kernel(const std::string& text);

/// Kind of document ("complex", "sheaf", "module", "kernel"), read from "type".
std::string document_type(const std::string& text);

/// Throws InputError when the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace cellsheaf
