#pragma once
#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "spinlab/cli/config.hpp"
#include "spinlab/cli/output.hpp"

namespace spinlab::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitSolver = 3,
    kExitIo = 4,
};

struct CommandOutcome {
    ScanResult result;
    int exit_code = kExitOk;
    std::string message;  // printed on stderr when nonempty
};

CommandOutcome cmd_xy_scan(const RunConfig& cfg);
CommandOutcome cmd_scaling(const RunConfig& cfg);
CommandOutcome cmd_xxz(const RunConfig& cfg);
CommandOutcome cmd_lmg(const RunConfig& cfg);
CommandOutcome cmd_rgflow(const RunConfig& cfg);
CommandOutcome cmd_mps(const RunConfig& cfg);
CommandOutcome cmd_fit(const RunConfig& cfg);

const std::vector<std::string>& command_names();
CommandOutcome run_command(const RunConfig& cfg);

int exit_code_for(const std::exception& e);

// Full front end: parse, run, write. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Evaluates f(0..n-1) on up to jobs threads; results keep index order.
// The first exception by index is rethrown after all workers finish.
template <class R>
std::vector<R> parallel_map(std::size_t n, int jobs, const std::function<R(std::size_t)>& f) {
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(n, jobs > 1 ? jobs : 1);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace spinlab::cli
