// Times the OpenMP batch kernels against their serial reference twins and
// checks that both produce identical output.

#include <chrono>
#include <iostream>

#include "homind/canonical.hpp"
#include "homind/decomp.hpp"
#include "homind/hom.hpp"
#include "homind/parallel.hpp"

using namespace homind;
using Clock = std::chrono::steady_clock;

namespace {

double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

void bench_hom_battery() {
    std::vector<HomPair> pairs;
    auto patterns = all_graphs_up_to(4);
    auto targets = all_graphs(6);
    for (const auto& f : patterns)
        for (std::size_t i = 0; i < targets.size(); i += 3)
            pairs.push_back({LabelledGraph(f, 0), LabelledGraph(targets[i], 0)});
    std::cout << "hom battery: " << pairs.size() << " pairs\n";
    auto t0 = Clock::now();
    auto serial = hom_count_batch_serial(pairs);
    auto t1 = Clock::now();
    auto parallel = hom_count_batch(pairs);
    auto t2 = Clock::now();
    bool equal = serial == parallel;
    std::cout << "  serial   " << secs(t0, t1) << "s\n";
    std::cout << "  parallel " << secs(t1, t2) << "s (" << thread_count() << " threads)\n";
    std::cout << "  results " << (equal ? "identical" : "DIFFER") << "\n";
    if (!equal) std::exit(1);
}

void bench_membership_sweep() {
    auto graphs = connected_graphs_up_to(6);
    std::cout << "membership sweep: " << graphs.size() << " graphs at k=3\n";
    std::vector<int> serial_depths(graphs.size()), parallel_depths(graphs.size());
    auto t0 = Clock::now();
    serial_for(static_cast<int>(graphs.size()),
               [&](int i) { serial_depths[i] = min_pfc_depth(graphs[i], 3); });
    auto t1 = Clock::now();
    parallel_for(static_cast<int>(graphs.size()),
                 [&](int i) { parallel_depths[i] = min_pfc_depth(graphs[i], 3); });
    auto t2 = Clock::now();
    bool equal = serial_depths == parallel_depths;
    std::cout << "  serial   " << secs(t0, t1) << "s\n";
    std::cout << "  parallel " << secs(t1, t2) << "s\n";
    std::cout << "  results " << (equal ? "identical" : "DIFFER") << "\n";
    if (!equal) std::exit(1);
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) set_thread_count(std::atoi(argv[1]));
    bench_hom_battery();
    bench_membership_sweep();
    return 0;
}
