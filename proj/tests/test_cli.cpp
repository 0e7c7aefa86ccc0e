#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <string>

#include "rmrpa/run_record.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(RMRPA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

nlohmann::ordered_json run_json(const std::string& args) {
    const CliResult res = run_cli(args);
    REQUIRE(res.exit_code == 0);
    return nlohmann::ordered_json::parse(res.out);
}

}  // namespace

TEST_CASE("encode") {
    CliResult res = run_cli("encode --m 2 --r 1 --message 001 --format bits");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "0101\n");

    // the same message as one hex digit
    res = run_cli("encode --m 2 --r 1 --message 2 --format bits");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "0101\n");

    res = run_cli("encode --m 2 --r 1 --message 000");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "0000\n");

    res = run_cli("encode --m 2 --r 2 --message 0001 --format hex");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "1\n");

    CHECK(run_cli("encode --m 2 --r 1 --message 0100").exit_code == 1);  // wrong length
    CHECK(run_cli("encode --m 2 --r 1").exit_code == 2);                 // missing flag
    CHECK(run_cli("encode --m 2 --r 1 --message 001 --format words").exit_code == 2);
}

TEST_CASE("decode") {
    CliResult res = run_cli("decode --m 2 --r 1 --llr 5,-5,5,-5");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "0101\n");

    res = run_cli(
        "decode --m 4 --r 2 --llr \"8 8 8 8 8 8 8 8 8 8 8 8 8 8 8 -8\" --iters 2");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "0000000000000000\n");  // single flip corrected (min distance 4)

    CHECK(run_cli("decode --m 3 --r 1 --llr 1,2,3").exit_code == 1);  // wrong count
    CHECK(run_cli("decode --m 3 --r 1").exit_code == 2);              // no LLR source
}

TEST_CASE("simulate: record shape and determinism") {
    const std::string args =
        "simulate --m 4 --r 2 --channel bsc:0.02 --trials 60 --seed 11 --iters 1 "
        "--workers 2 --with-bound";
    auto a = run_json(args);
    auto b = run_json(args);
    for (auto* j : {&a, &b}) {
        j->erase("timestamp_utc");
        j->erase("wall_seconds");
    }
    CHECK(a == b);
    CHECK(a["m"] == 4);
    CHECK(a["trials_run"] == 60);
    CHECK(a["channel"] == "bsc:0.02");
    CHECK(a.contains("fer"));
    CHECK(a.contains("fer_ci95_low"));
    CHECK(a.contains("fer_ci95_high"));
    CHECK(a.contains("bound_log_q_r"));
    CHECK(a.contains("threshold"));

    CHECK(run_cli("simulate --m 4 --r 2 --channel bsc:0.02 --trials 0 --seed 1").exit_code == 2);
    CHECK(run_cli("simulate --m 4 --r 2 --channel bsc:0.6 --trials 5 --seed 1").exit_code == 2);
    CHECK(run_cli("simulate --m 4 --r 2 --channel nope:1 --trials 5 --seed 1").exit_code == 2);
}

TEST_CASE("simulate: csv output round-trips") {
    const CliResult res = run_cli(
        "simulate --m 3 --r 1 --channel bec:0.3 --trials 40 --seed 5 --format csv");
    CHECK(res.exit_code == 0);
    const auto kv = rmrpa::RunRecord::parse_csv(res.out);
    bool saw_fer = false;
    for (const auto& [k, v] : kv) {
        if (k == "fer") {
            saw_fer = true;
            CHECK_NOTHROW(std::stod(v));
        }
    }
    CHECK(saw_fer);
}

TEST_CASE("config file supplies options, flags override") {
    const char* path = "test_cli_config.tmp";
    {
        std::FILE* f = std::fopen(path, "w");
        REQUIRE(f != nullptr);
        std::fputs("[simulate]\nm=4\nr=2\nchannel=\"bsc:0.02\"\ntrials=30\nseed=9\niters=1\n", f);
        std::fclose(f);
    }
    auto a = run_json(std::string("--config ") + path + " simulate");
    CHECK(a["m"] == 4);
    CHECK(a["trials_run"] == 30);
    CHECK(a["seed"] == 9);
    auto b = run_json(std::string("--config ") + path + " simulate --seed 10");
    CHECK(b["seed"] == 10);  // flag wins over the file value
    std::remove(path);
}

TEST_CASE("bound") {
    auto j = run_json("bound --m 128 --z 0.6 --r 7");
    CHECK(j["threshold"].get<double>() == doctest::Approx(7.126122668089241).epsilon(1e-9));
    CHECK(j["r_below_threshold"] == true);
    CHECK(j["bound_vacuous"] == false);

    j = run_json("bound --m 6 --r 5 --z 0.9");
    CHECK(j["bound_q_r_clamped"] == 1.0);
    CHECK(j["bound_vacuous"] == true);

    j = run_json("bound --m 10 --r 3 --channel bsc:0.1");
    CHECK(j["bound_z"].get<double>() == doctest::Approx(0.6).epsilon(1e-12));

    // exact-Z mode tightens (or matches) the lemma-based bound
    auto lemma = run_json("bound --m 10 --r 3 --channel bsc:0.1");
    auto exact = run_json("bound --m 10 --r 3 --channel bsc:0.1 --exact-z");
    CHECK(exact["bound_log_q_r"].get<double>() <=
          lemma["bound_log_q_r"].get<double>() + 1e-12);

    CHECK(run_cli("bound --m 6 --r 2 --z 0.5 --channel bsc:0.1").exit_code == 2);
    CHECK(run_cli("bound --m 6 --r 2").exit_code == 2);
    CHECK(run_cli("bound --m 6 --r 2 --z 1.5").exit_code == 1);  // domain error
}

TEST_CASE("threshold") {
    auto j = run_json("threshold --m 128 --z 0.6");
    CHECK(j["threshold"].get<double>() == doctest::Approx(7.126122668089241).epsilon(1e-9));
    CHECK(j["lambda"].get<double>() == doctest::Approx(0.91629073187415511).epsilon(1e-12));
    CHECK(run_cli("threshold --m 128").exit_code == 2);
}

TEST_CASE("channel") {
    auto j = run_json("channel --channel bsc:0.1 --combine 1");
    CHECK(j["z"].get<double>() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(j["combined_z"].get<double>() == doctest::Approx(0.76837490849194184).epsilon(1e-10));
    CHECK(j["combined_z_bound"].get<double>() == doctest::Approx(0.84).epsilon(1e-12));
    CHECK(j["alphabet_size"] == 2);
    CHECK(j["combined_alphabet_size"] == 2);

    j = run_json("channel --channel bec:0.3");
    CHECK(j["z"].get<double>() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(j["alphabet_size"] == 3);

    j = run_json("channel --channel awgn:1.0 --quantize 64 --combine 1");
    CHECK(j["quantized_z"].get<double>() == doctest::Approx(std::exp(-0.5)).epsilon(0.02));

    CHECK(run_cli("channel --channel bsc:0.6").exit_code == 2);
    CHECK(run_cli("channel --channel awgn:1.0 --combine 1").exit_code == 1);
}
