#pragma once

#include "cuntz/total.hpp"

#include <string>

namespace cuntz {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical JSON text for a descriptor (sorted keys, decimal integers,
/// format_version 1). parse/serialize round-trip bit-exactly on canonical
/// output.
std::string serializeDescriptor(const AlgebraDescriptor& d);
std::shared_ptr<const AlgebraDescriptor> parseDescriptor(const std::string& text);

std::shared_ptr<const AlgebraDescriptor> loadDescriptorFile(const std::string& path);
void saveDescriptorFile(const AlgebraDescriptor& d, const std::string& path);

}  // namespace cuntz
