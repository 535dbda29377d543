// Serial vs OpenMP timings for the two parallel kernels.
#include "fixtures.hpp"
#include "torusmc/equilibrium.hpp"
#include "torusmc/oracle.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace torusmc;

namespace {

double best_of(int repeats, const std::function<void()>& body) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        body();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %5.2fx   %s\n", name, serial,
                parallel, serial / parallel, agree ? "results agree" : "RESULTS DIFFER");
}

} // namespace

int main() {
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());

    for (int k : {6, 10, 14}) {
        const SegmentSet set = cover_segments(fixtures::gk(k));
        std::size_t a = 0, b = 0;
        const double serial = best_of(3, [&] { a = count_crossings_serial(set); });
        const double parallel = best_of(3, [&] { b = count_crossings_parallel(set); });
        char name[64];
        std::snprintf(name, sizeof name, "crossings gk(%d), %zu segs", k, set.all.size());
        report(name, serial, parallel, a == b);
    }

    std::mt19937_64 rng(1);
    for (int count : {10, 20, 30}) {
        const TorusShape shape = fixtures::random_shape(rng);
        const auto raw = fixtures::random_sites(shape, count, 0.01, rng);
        std::vector<WeightedSite> sites;
        for (std::size_t i = 0; i < raw.size(); ++i)
            sites.push_back({"s" + std::to_string(i), raw[i].position, raw[i].weight});
        const TriplePatch patch = make_triple_patch(shape, sites, 1, 1e-10);
        TripleScan a, b;
        const double serial = best_of(3, [&] { a = scan_triples_serial(patch); });
        const double parallel = best_of(3, [&] { b = scan_triples_parallel(patch); });
        char name[64];
        std::snprintf(name, sizeof name, "triple scan, %d sites", count);
        report(name, serial, parallel, a.triangles == b.triangles);
    }
}
