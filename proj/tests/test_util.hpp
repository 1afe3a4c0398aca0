#pragma once

#include <cstdlib>
#include <string>

/// Resolves a bundled fixture. Unit tests receive PHILAB_DATA from the
/// build; running from the repository root works without it.
inline std::string data_path(const std::string& name) {
    const char* env = std::getenv("PHILAB_DATA");
    const std::string dir = (env && *env) ? env : "data";
    return dir + "/" + name;
}
