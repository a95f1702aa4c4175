#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace centriscan::testing {

inline std::string corpus_path(const std::string& rel)
{
    return (std::filesystem::path(CENTRISCAN_CORPUS_DIR) / rel).generic_string();
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string read_corpus(const std::string& rel)
{
    return read_file(corpus_path(rel));
}

}  // namespace centriscan::testing
