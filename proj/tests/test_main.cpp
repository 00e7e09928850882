#include <gtest/gtest.h>

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace {
std::uint64_t g_seed = 20240519;
}

std::uint64_t test_seed() { return g_seed; }

int main(int argc, char** argv) {
    std::vector<char*> args;
    for (int i = 0; i < argc; ++i) {
        if (std::strncmp(argv[i], "--seed=", 7) == 0) {
            g_seed = std::stoull(argv[i] + 7);
            continue;
        }
        args.push_back(argv[i]);
    }
    int n = int(args.size());
    ::testing::InitGoogleTest(&n, args.data());
    std::printf("random seed: %llu\n", static_cast<unsigned long long>(g_seed));
    return RUN_ALL_TESTS();
}
