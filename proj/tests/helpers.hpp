#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace testutil {

inline std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "qmc_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    auto p = temp_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

}  // namespace testutil
