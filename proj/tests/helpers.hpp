#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "corofin/model.hpp"

namespace testing_support {

// Table I section: 20 x 1 mm, E = 20 MPa.
inline corofin::ElementProps table_section(corofin::ElementKind kind = corofin::ElementKind::beam) {
    return corofin::rectangular_section(2e7, 20e-3, 1e-3, kind);
}

/// Straight cantilever along X from the origin, clamped at node 0.
inline corofin::Structure cantilever(int n_elements, double length,
                                     const corofin::ElementProps& props) {
    std::vector<corofin::Node> nodes;
    std::vector<corofin::ElementSpec> elements;
    for (int i = 0; i <= n_elements; ++i) {
        nodes.push_back({i, length * i / n_elements, 0.0});
        if (i > 0) elements.push_back({i - 1, i, props});
    }
    corofin::SupportSet supports;
    supports.fix_all(0);
    return corofin::build_structure(nodes, elements, supports);
}

/// Two-bar frame with a free interior corner, used where a structure with
/// several orientations is handy.
inline corofin::Structure small_frame(const corofin::ElementProps& props) {
    std::vector<corofin::Node> nodes{{0, 0.0, 0.0}, {1, 0.3, 0.4}, {2, 0.9, 0.2}, {3, 1.2, -0.3}};
    std::vector<corofin::ElementSpec> elements{{0, 1, props}, {1, 2, props}, {2, 3, props}};
    corofin::SupportSet supports;
    supports.fix_all(0);
    return corofin::build_structure(nodes, elements, supports);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
public:
    ScratchDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("corofin_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return path_ / name;
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing_support
