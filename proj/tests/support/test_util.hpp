#pragma once

// Shared scratch-file plumbing for tests that touch the filesystem.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

// Unique path under the system temp directory; removed by ScratchFile's
// destructor so reruns start clean.
class ScratchFile {
public:
    explicit ScratchFile(const std::string& tag) {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("hdc_test_" + tag + "_" + std::to_string(++counter)))
                    .string();
        std::filesystem::remove(path_);
    }
    ~ScratchFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
        std::filesystem::remove(path_ + ".tmp", ec);
    }
    ScratchFile(const ScratchFile&) = delete;
    ScratchFile& operator=(const ScratchFile&) = delete;

    const std::string& path() const { return path_; }

    void write(const std::string& content) const {
        std::ofstream out(path_, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw std::runtime_error("scratch write failed: " + path_);
    }

    std::string read() const {
        std::ifstream in(path_, std::ios::binary);
        if (!in) throw std::runtime_error("scratch read failed: " + path_);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    bool exists() const { return std::filesystem::exists(path_); }

private:
    std::string path_;
};

inline bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace testutil
