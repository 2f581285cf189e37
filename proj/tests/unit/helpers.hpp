#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "doctest.h"

namespace testutil {

// Per-process scratch directory; files persist until the container exits.
inline std::filesystem::path temp_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("invopt-tests-" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

inline std::filesystem::path temp_path(const std::string& name) {
    return temp_dir() / name;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Asserts that fn() throws E whose message contains `fragment`.
template <class E>
void expect_error(const std::function<void()>& fn, const std::string& fragment) {
    bool threw = false;
    try {
        fn();
    } catch (const E& e) {
        threw = true;
        INFO("message: ", e.what());
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
    CHECK_MESSAGE(threw, "expected an exception mentioning '", fragment, "'");
}

}  // namespace testutil
