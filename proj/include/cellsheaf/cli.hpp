#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cellsheaf/kernels.hpp"

namespace cellsheaf {

/// A command and the library operations it exercises.
struct CommandInfo {
    std::string name;
    std::string summary;
    std::vector<std::string> operations;
};

const std::vector<CommandInfo>& command_registry();
/// Every public operation of the library that must be reachable from the
/// command line.
const std::vector<std::string>& library_operations();

/// Fixture name or path to a complex JSON file.
ComplexPtr resolve_base(const std::string& desc);
/// Sheaf description: constant[:deg], omega, std:s, costd:s, stdstar:s,
/// costdstar:s, sky:s, zero, random:seed, or a path to a sheaf JSON file.
/// A file must live on `base` when a base is given.
SheafComplex resolve_sheaf(const std::string& desc, const ComplexPtr& base);

/// Exit codes: 0 success, 1 computational failure, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellsheaf
