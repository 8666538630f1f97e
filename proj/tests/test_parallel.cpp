#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>

#include "hardyop/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hardyop;

namespace {
std::vector<double> rand_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}
}  // namespace

TEST_CASE("chunked sum matches the serial reference") {
    const auto v = rand_vec(100001, 7);
    const double chunked = par::sum<double>(v.size(), [&](std::size_t i) { return v[i]; });
    const double serial =
        par::sum_serial<double>(v.size(), [&](std::size_t i) { return v[i]; });
    CHECK(chunked == doctest::Approx(serial).epsilon(1e-13));
}

TEST_CASE("reduction result is independent of the thread count") {
    const auto v = rand_vec(300000, 11);
    const auto run = [&] {
        return par::sum<double>(v.size(), [&](std::size_t i) { return v[i] * v[i]; });
    };
#ifdef _OPENMP
    omp_set_num_threads(1);
    const double t1 = run();
    omp_set_num_threads(4);
    const double t4 = run();
    omp_set_num_threads(omp_get_num_procs());
    CHECK(std::memcmp(&t1, &t4, sizeof(double)) == 0);
#endif
    par::set_parallel(false);
    const double off = run();
    par::set_parallel(true);
    const double on = run();
    CHECK(std::memcmp(&off, &on, sizeof(double)) == 0);
}

TEST_CASE("argmax breaks ties at the smallest index") {
    std::vector<double> v(10000, 1.0);
    v[137] = 2.0;
    v[9000] = 2.0;
    const auto [val, idx] = par::argmax(v.size(), [&](std::size_t i) { return v[i]; });
    CHECK(val == 2.0);
    CHECK(idx == 137);
    const auto serial = par::argmax_serial(v.size(), [&](std::size_t i) { return v[i]; });
    CHECK(serial.second == 137);
}

TEST_CASE("empty reductions") {
    CHECK(par::sum<double>(0, [](std::size_t) { return 1.0; }) == 0.0);
    const auto [val, idx] = par::argmax(0, [](std::size_t) { return 1.0; });
    CHECK(idx == 0);
    CHECK(val == -std::numeric_limits<double>::infinity());
}
