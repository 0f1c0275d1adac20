#include <doctest.h>

#include "homind/canonical.hpp"
#include "homind/decomp.hpp"
#include "homind/hom.hpp"
#include "homind/parallel.hpp"

using namespace homind;

TEST_SUITE("parallel") {

    TEST_CASE("batch kernels match their serial references") {
        std::vector<HomPair> pairs;
        for (const auto& f : all_graphs_up_to(3))
            for (const auto& g : all_graphs_up_to(4))
                pairs.push_back({LabelledGraph(f, 0), LabelledGraph(g, 0)});
        auto serial = hom_count_batch_serial(pairs);
        auto parallel = hom_count_batch(pairs);
        CHECK(serial == parallel);
        // and under an explicit thread count
        set_thread_count(3);
        CHECK(hom_count_batch(pairs) == serial);
        set_thread_count(1);
        CHECK(hom_count_batch(pairs) == serial);
        set_thread_count(0);
    }

    TEST_CASE("parallel membership sweeps are deterministic") {
        auto graphs = connected_graphs_up_to(5);
        std::vector<int> a(graphs.size()), b(graphs.size());
        serial_for(static_cast<int>(graphs.size()),
                   [&](int i) { a[i] = min_pfc_depth(graphs[i], 2); });
        parallel_for(static_cast<int>(graphs.size()),
                     [&](int i) { b[i] = min_pfc_depth(graphs[i], 2); });
        CHECK(a == b);
    }
}
