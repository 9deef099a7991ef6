#pragma once

#include <string>
#include <vector>

namespace tactoid::cli {

struct RunConfig {
    std::string command;        // solve|energy|optimize|diagnose|asymptotics|baseline
    std::string curve_path;
    std::string builtin;
    std::size_t nx = 257, ny = 65;
    std::size_t samples = 1025;
    double tol = 1e-10;         // solver tolerance
    double opt_tol = 1e-5;      // optimizer gradient tolerance
    double v = 1.0;
    std::vector<double> eps_list;
    std::vector<double> v_list;
    std::vector<double> r_list;
    std::size_t K = 16;
    std::size_t max_iter = 200;
    std::size_t diag_n = 1025;
    std::size_t checkpoint_every = 0;
    std::string functional = "E";   // E|Ev|E0
    std::string sweep = "small";    // large|small|gamma
    std::string out_dir = "out";
    bool plots = false;
    bool serial = false;
    bool fail_on_divergence = false;
    bool optimize_sweep = false;
    unsigned seed = 0;
};

// Executes the configured pipeline; returns the process exit status
// (0 ok, 1 validation error, 2 solver failure, 3 divergence in strict mode).
int run(const RunConfig& cfg);

// Parses argv; may print help and exit. Returns the resolved config.
int main_entry(int argc, char** argv);

}  // namespace tactoid::cli
