#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    std::string out;
    int status = -1;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(DBNSLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("dbnslab_cli_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("optimal") {
    Run r = run("optimal 15");
    CHECK(r.status == 0);
    CHECK(r.out == "m=15 k*=2 terms=12,3 forms=2^2*3^1,2^0*3^1\n");
    CHECK(run("optimal 0").out == "m=0 k*=0 terms= forms=\n");
    CHECK(run("optimal 41").out == "m=41 k*=2 terms=32,9 forms=2^5*3^0,2^0*3^2\n");
    CHECK(run("optimal abc").status == 2);
    CHECK(run("optimal -3").status == 2);
    CHECK(run("optimal 4611686018427387904").status == 2);
}

TEST_CASE("greedy") {
    CHECK(run("greedy 41").out == "m=41 k'=3 terms=36,4,1 forms=2^2*3^2,2^2*3^0,2^0*3^0\n");
    CHECK(run("greedy 15").out == "m=15 k'=2 terms=12,3 forms=2^2*3^1,2^0*3^1\n");
    CHECK(run("greedy 0").out == "m=0 k'=0 terms= forms=\n");

    const auto j = nlohmann::json::parse(run("--format json greedy 41").out);
    CHECK(j["k'"] == 3);
    CHECK(j["terms"].size() == 3);
}

TEST_CASE("global flags thread through") {
    CHECK(run("--bases 2,3,5 optimal 7").out == "m=7 k*=2 terms=6,1 forms=2^1*3^1*5^0,2^0*3^0*5^0\n");
    CHECK(run("optimal 7 --bases 2,3,5").status == 0);
    CHECK(run("--digits 1,5 optimal 45").out == "m=45 k*=1 terms=45 forms=5*2^0*3^2\n");
    CHECK(run("--bases 2,4 optimal 7").status == 2);
    CHECK(run("--bases 3,5 optimal 7").status == 2);
    CHECK(run("--format xml optimal 7").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("--help").status == 0);
}

TEST_CASE("terms") {
    CHECK(run("terms --limit 20").out ==
          "1 = 2^0*3^0\n2 = 2^1*3^0\n3 = 2^0*3^1\n4 = 2^2*3^0\n6 = 2^1*3^1\n8 = 2^3*3^0\n9 = 2^0*3^2\n"
          "12 = 2^2*3^1\n16 = 2^4*3^0\n18 = 2^1*3^2\n");
    CHECK(run("terms --limit 0").out.empty());
    CHECK(run("--format csv terms --limit 4").out == "value,form\n1,1*2^0*3^0\n2,1*2^1*3^0\n3,1*2^0*3^1\n4,1*2^2*3^0\n");
}

TEST_CASE("stats") {
    Run r = run("stats --n-list 4");
    CHECK(r.status == 0);
    CHECK(r.out.find("A*=22/16 (1.375000)") != std::string::npos);

    CHECK(run("--format csv stats --n-list 4").out ==
          "n,A_star_num,A_star_den,A_prime_num,A_prime_den,avg_code_len_num,avg_code_len_den,lower_bound,max_kstar,"
          "max_kprime,ratio\n4,22,16,22,16,136,16,4,2,2,0.687500\n");

    const auto j = nlohmann::json::parse(run("--format json stats --n-list 8,4").out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["n"] == 4);
    CHECK(j[1]["A_star_num"] == 559);

    Run empty = run("stats --n-list \"\"");
    CHECK(empty.status == 0);
    CHECK(empty.out.empty());

    CHECK(run("stats --n-list 30").status == 2);
    CHECK(run("stats --n-list 4,x").status == 2);
    CHECK(run("--cap 8 stats --n-list 10").status == 2);
}

TEST_CASE("encode and decode") {
    CHECK(run("encode 15 --n 4").out == "01010010001\n");
    CHECK(run("encode 0 --n 4").out == "000\n");
    CHECK(run("decode 000 --n 4").out == "0\n");
    CHECK(run("decode 01010010001 --n 4").out == "15\n");
    CHECK(run("decode 0010000 --n 4").out == "1\n");
    CHECK(run("encode 16 --n 4").status == 2);
    CHECK(run("decode 0000 --n 4").status == 2);
    CHECK(run("decode 01x --n 4").status == 2);

    for (int m : {0, 1, 77, 255}) {
        const std::string bits = run("encode " + std::to_string(m) + " --n 8").out;
        CHECK(run("decode " + bits.substr(0, bits.size() - 1) + " --n 8").out == std::to_string(m) + "\n");
    }
}

TEST_CASE("verify") {
    Run r = run("verify --n 12");
    CHECK(r.status == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    int passes = 0;
    for (std::size_t pos = 0; (pos = r.out.find("PASS ", pos)) != std::string::npos; ++pos) ++passes;
    CHECK(passes == 5);

    Run one = run("verify --n 1");
    CHECK(one.status == 0);
    CHECK(one.out.find("FAIL") == std::string::npos);

    CHECK(run("verify --n 20").status == 2);
    CHECK(run("--bases 2,3,5 --digits 1,7 verify --n 8").status == 0);
}

TEST_CASE("huffman") {
    Run u = run("huffman --uniform-n 3");
    CHECK(u.status == 0);
    CHECK(u.out.find("lengths: 3 3 3 3 3 3 3 3\n") == 0);

    TempDir dir;
    const fs::path good = dir.path / "p.txt";
    std::ofstream(good) << "0.5 0.25\n0.25\n";
    Run g = run("huffman --dist " + good.string());
    CHECK(g.status == 0);
    CHECK(g.out == "lengths: 1 2 2\nexpected_length: 1.500000\nentropy: 1.500000\n");

    const fs::path bad = dir.path / "q.txt";
    std::ofstream(bad) << "0.5 0.6";
    CHECK(run("huffman --dist " + bad.string()).status == 2);
    CHECK(run("huffman --dist " + (dir.path / "missing").string()).status == 2);
    CHECK(run("huffman").status == 2);
    CHECK(run("huffman --uniform-n 17").status == 2);
}

TEST_CASE("cache directory is honored and output is deterministic") {
    TempDir dir;
    const std::string flag = "--cache-dir " + dir.path.string();
    Run first = run(flag + " --format csv stats --n-list 6,10");
    CHECK(first.status == 0);
    CHECK(fs::exists(dir.path / "kstar_b2-3_d1_n6.dbn"));
    CHECK(fs::exists(dir.path / "kstar_b2-3_d1_n10.dbn"));
    CHECK(run(flag + " --format csv stats --n-list 6,10").out == first.out);

    const std::string env = "DBNSLAB_CACHE_DIR=" + (dir.path / "env").string() + " ";
    const std::string cmd = env + DBNSLAB_CLI_PATH + " batch --n 5 >/dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir.path / "env" / "kstar_b2-3_d1_n5.dbn"));

    Run b = run(flag + " batch --n 4");
    CHECK(b.out == "n=4 bases=2,3 digits=1 values=16 sum_k*=22 max_k*=2\nk=0 count=1\nk=1 count=8\nk=2 count=7\n");
}
