#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "proc_util.hpp"

using testutil::run_cli;

namespace {

// Drop lines that legitimately vary between runs (timing).
std::string stable_lines(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.find("wall_time") != std::string::npos) continue;
        if (line.find("wall time") != std::string::npos) continue;
        out += line + "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("demo prints the expected costs") {
    auto two = run_cli("demo --scheme two-opt --k 2 --n 2 --seed 7");
    CHECK(two.exit_code == 0);
    CHECK(two.output.find("eta = 3/2") != std::string::npos);
    CHECK(two.output.find("decode: ok") != std::string::npos);

    auto rep = run_cli("demo --scheme k-rep --k 3 --n 2 --seed 7");
    CHECK(rep.exit_code == 0);
    CHECK(rep.output.find("eta = 2") != std::string::npos);

    auto all = run_cli("demo --scheme all --k 4 --n 2 --seed 7");
    CHECK(all.exit_code == 0);
    CHECK(all.output.find("eta = 4") != std::string::npos);

    auto sym = run_cli("demo --scheme sym:two-opt --k 2 --n 3 --seed 7");
    CHECK(sym.exit_code == 0);
    CHECK(sym.output.find("eta = 4/3") != std::string::npos);
}

TEST_CASE("demo with a seed warns and reproduces byte-for-byte") {
    auto first = run_cli("demo --scheme two-opt --k 2 --n 3 --seed 42 --format kv");
    auto second = run_cli("demo --scheme two-opt --k 2 --n 3 --seed 42 --format kv");
    CHECK(first.exit_code == 0);
    CHECK(first.output.find("warning") != std::string::npos);
    CHECK(stable_lines(first.output) == stable_lines(second.output));

    auto third = run_cli("demo --scheme two-opt --k 2 --n 3 --seed 43 --format kv");
    CHECK(stable_lines(first.output) != stable_lines(third.output));
}

TEST_CASE("bounds subcommand") {
    auto b = run_cli("bounds --k 2 --n 5");
    CHECK(b.exit_code == 0);
    CHECK(b.output.find("6/5") != std::string::npos);

    auto small = run_cli("bounds --k 2 --n 2");
    CHECK(small.exit_code == 0);
    CHECK(small.output.find("asymptotic heuristic") != std::string::npos);

    auto kv = run_cli("bounds --k 3 --n 4 --format kv");
    CHECK(kv.output.find("bounds.two_message=5/4") != std::string::npos);
    CHECK(kv.output.find("bounds.finite_k=12/7") != std::string::npos);
    CHECK(kv.output.find("bounds.limit=4/3") != std::string::npos);
}

TEST_CASE("audit subcommand passes and fails with the right exit codes") {
    auto pass = run_cli("audit --scheme two-opt --k 2 --n 4");
    CHECK(pass.exit_code == 0);
    CHECK(pass.output.find("PASS") != std::string::npos);

    auto kv = run_cli("audit --scheme k-rep --k 2 --n 2 --field 2 --format kv");
    CHECK(kv.exit_code == 0);
    CHECK(kv.output.find("privacy.pass=true") != std::string::npos);
    CHECK(kv.output.find("correctness.pass=true") != std::string::npos);

    // Non-enumerable randomness space: usage error suggesting a smaller field.
    auto big = run_cli("audit --scheme k-rep --k 2 --n 3 --field gf256");
    CHECK(big.exit_code == 2);
    CHECK(big.output.find("smaller field") != std::string::npos);

    // Same space with --spot-check: non-binding statistical pass.
    auto spot = run_cli("audit --scheme k-rep --k 2 --n 3 --field gf256 --spot-check");
    CHECK(spot.exit_code == 0);
    CHECK(spot.output.find("non-binding") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("demo --k 1 --n 2").exit_code == 2);
    CHECK(run_cli("demo --k 2 --n 1").exit_code == 2);
    CHECK(run_cli("demo --scheme two-opt --k 3 --n 2").exit_code == 2);
    CHECK(run_cli("demo --scheme nonsense --k 2 --n 2").exit_code == 2);
    CHECK(run_cli("demo --scheme two-opt --k 2 --n 2 --field 9").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("transport errors exit with code 3") {
    auto r = run_cli("retrieve --scheme two-opt --k 2 --n 2 --index 1 "
                     "--endpoints 127.0.0.1:1,127.0.0.1:2");
    CHECK(r.exit_code == 3);
}

TEST_CASE("genstore writes a padded store with a digest") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "pir_cli_store.json";

    auto r = run_cli("genstore --k 2 --n 3 --field gf256 --len 7 --out " + path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("digest fnv1a:") != std::string::npos);
    // 7 symbols padded up to the 6-symbol block multiple = 12.
    CHECK(r.output.find("length 12") != std::string::npos);
    CHECK(fs::exists(path));

    // k > 2 pads to the repetition block n-1.
    auto r2 = run_cli("genstore --k 3 --n 3 --field 5 --len 3 --out " + path.string());
    CHECK(r2.exit_code == 0);
    CHECK(r2.output.find("length 4") != std::string::npos);

    // Scheme override pads to that scheme's block.
    auto r3 = run_cli("genstore --k 2 --n 2 --scheme sym:two-opt --len 3 --out " +
                      path.string());
    CHECK(r3.exit_code == 0);
    CHECK(r3.output.find("length 4") != std::string::npos);

    CHECK(run_cli("genstore --k 1 --n 2 --len 4 --out " + path.string()).exit_code == 2);
    fs::remove(path);
}
