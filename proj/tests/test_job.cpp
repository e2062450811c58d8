#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "mwhit/job.hpp"
#include "mwhit/whittaker.hpp"

using namespace mwhit;

TEST_CASE("exact scalar parsing")
{
    CHECK(parse_gauss_rational("2") == GaussRat(2));
    CHECK(parse_gauss_rational("-2") == GaussRat(-2));
    CHECK(parse_gauss_rational("2/3") == GaussRat(mpq_class(2, 3)));
    CHECK(parse_gauss_rational("-10/4") == GaussRat(mpq_class(-5, 2)));
    CHECK(parse_gauss_rational("i") == GaussRat::i());
    CHECK(parse_gauss_rational("-i") == -GaussRat::i());
    CHECK(parse_gauss_rational("2i") == GaussRat(mpq_class(0), mpq_class(2)));
    CHECK(parse_gauss_rational("2i/3") == GaussRat(mpq_class(0), mpq_class(2, 3)));
    CHECK(parse_gauss_rational("2/3i") == GaussRat(mpq_class(0), mpq_class(2, 3)));
    CHECK(parse_gauss_rational("3+4i") == GaussRat(mpq_class(3), mpq_class(4)));
    CHECK(parse_gauss_rational("3-4i/5") == GaussRat(mpq_class(3), mpq_class(-4, 5)));
    CHECK(parse_gauss_rational("1/2-1/3i") == GaussRat(mpq_class(1, 2), mpq_class(-1, 3)));

    for (const char *bad : {"", "x", "2+", "i2", "2//3", "1/0", "2..5", "3 + 4i"})
        CHECK_THROWS_AS(parse_gauss_rational(bad), JobError);

    // canonical form round trips
    for (const char *s : {"2", "-2/3", "i", "-i", "2/3i", "3+4i", "3-4/5i", "0"})
        CHECK(parse_gauss_rational(s).to_string() == s);
}

TEST_CASE("square class tokens")
{
    CHECK(parse_square_class("1") == SquareClassElement::one());
    CHECK(parse_square_class("u0") == SquareClassElement::u_0());
    CHECK(parse_square_class("pi") == SquareClassElement::pi());
    CHECK(parse_square_class("piu0") == SquareClassElement::pi_u0());
    CHECK_THROWS_AS(parse_square_class("pi2"), JobError);
    for (const char *s : {"1", "u0", "pi", "piu0"})
        CHECK(square_class_token(parse_square_class(s)) == s);
}

TEST_CASE("config validation rejects bad combinations")
{
    JobConfig cfg;
    cfg.command = JobConfig::Command::whittaker_table;
    cfg.q = 4;
    CHECK_THROWS_AS(validate(cfg), JobError);
    cfg.q = 15; // odd but not a prime power
    CHECK_THROWS_AS(validate(cfg), JobError);
    cfg.q = 3;
    cfg.y = SquareClassElement(2, UnitClass::trivial);
    CHECK_THROWS_AS(validate(cfg), JobError);
    cfg.y = SquareClassElement::pi();
    CHECK_NOTHROW(validate(cfg));

    cfg.command = JobConfig::Command::classify;
    cfg.n = 2;
    cfg.alpha = {GaussRat(2)};
    CHECK_THROWS_AS(validate(cfg), JobError); // wrong arity
    cfg.alpha = {GaussRat(2), GaussRat(0)};
    CHECK_THROWS_AS(validate(cfg), JobError); // zero entry
    cfg.alpha = {GaussRat(2), GaussRat(3)};
    cfg.beta = GaussRat(0);
    CHECK_THROWS_AS(validate(cfg), JobError);
    cfg.beta = GaussRat(1);
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("hilbert command output")
{
    JobConfig cfg;
    cfg.command = JobConfig::Command::hilbert;
    cfg.q = 5;
    cfg.hilbert_a = parse_square_class("u0");
    cfg.hilbert_b = parse_square_class("pi");

    const std::string out = run_job(cfg);
    const auto j = nlohmann::ordered_json::parse(out);
    CHECK(j["results"]["value"] == -1);
    CHECK(j["config"]["q"] == 5);
    CHECK(j["provenance"]["formula"] == "tame-symbol");

    cfg.output = JobConfig::Output::csv;
    CHECK(run_job(cfg) == "a,b,q,value\nu0,pi,5,-1\n");

    // frozen output bytes
    cfg.output = JobConfig::Output::json;
    CHECK(run_job(cfg) ==
          "{\n"
          " \"config\": {\n"
          "  \"command\": \"hilbert\",\n"
          "  \"q\": 5,\n"
          "  \"a\": \"u0\",\n"
          "  \"b\": \"pi\"\n"
          " },\n"
          " \"results\": {\n"
          "  \"value\": -1\n"
          " },\n"
          " \"provenance\": {\n"
          "  \"formula\": \"tame-symbol\"\n"
          " }\n"
          "}\n");
}

TEST_CASE("whittaker table: geometric column at n = 1, y = pi")
{
    JobConfig cfg;
    cfg.command = JobConfig::Command::whittaker_table;
    cfg.q = 3;
    cfg.n = 1;
    cfg.y = SquareClassElement::pi();
    cfg.k_max = 3;

    const std::string out = run_job(cfg);
    const auto j = nlohmann::ordered_json::parse(out);
    const auto &rows = j["results"]["rows"];
    CHECK(rows.size() == 4);
    const FieldConfig field(3);
    for (long k = 0; k <= 3; ++k)
    {
        const auto &row = rows[k];
        CHECK(row["k"][0] == k);
        CHECK(row["v_power"] == -2 * k);
        const WhittakerValue expected = rank_one_whittaker(k, field);
        CHECK(row["phase"] == expected.phase.to_string());
        CHECK(row["body"] == expected.body.to_canonical_string());
    }
    CHECK(j["provenance"]["formula"] == "pi-orbit");

    // the odd-k phase carries the inverted Weil index
    CHECK(rows[1]["phase"] == "-g"); // q = 3: g^{-1} = -g
}

TEST_CASE("output determinism and JSON round trip")
{
    JobConfig cfg;
    cfg.command = JobConfig::Command::whittaker_table;
    cfg.q = 5;
    cfg.n = 2;
    cfg.y = SquareClassElement::one();
    cfg.k_max = 3;

    const std::string once = run_job(cfg);
    CHECK(run_job(cfg) == once);
    cfg.workers = 4;
    CHECK(run_job(cfg) == once);

    // parse and re-serialize to identical bytes
    const auto j = nlohmann::ordered_json::parse(once);
    CHECK(j.dump(1) + "\n" == once);

    cfg.output = JobConfig::Output::csv;
    const std::string csv_once = run_job(cfg);
    cfg.workers = 1;
    CHECK(run_job(cfg) == csv_once);
    CHECK(csv_once.substr(0, 22) == "k,phase,v_power,body\n0");
}

TEST_CASE("classify command")
{
    JobConfig cfg;
    cfg.command = JobConfig::Command::classify;
    cfg.q = 3;
    cfg.n = 2;
    cfg.alpha = {GaussRat::i(), -GaussRat::i()};
    cfg.beta = GaussRat(1);

    const auto j = nlohmann::ordered_json::parse(run_job(cfg));
    CHECK(j["results"]["classification"] == "TwoGenericSummands");
    CHECK(j["results"]["r_omega_order"] == 2);
    CHECK(j["results"]["eigenvalues"][0] == "2/3");
    CHECK(j["results"]["eigenvalues"][1] == "-2/3");

    cfg.alpha = {GaussRat(2), GaussRat(3)};
    const auto j2 = nlohmann::ordered_json::parse(run_job(cfg));
    CHECK(j2["results"]["classification"] == "Unknown");
    CHECK(j2["results"]["r_omega_order"] == 1);
    CHECK(!j2["results"].contains("eigenvalues"));
}

TEST_CASE("spanning-set command reports the rank")
{
    JobConfig cfg;
    cfg.command = JobConfig::Command::spanning_set;
    cfg.q = 3;
    cfg.n = 2;
    cfg.alpha = {GaussRat::i(), -GaussRat::i()};
    cfg.beta = GaussRat(1);
    cfg.k_max = 3;

    const auto j = nlohmann::ordered_json::parse(run_job(cfg));
    CHECK(j["results"]["rank"] == 2);
    CHECK(j["results"]["labels"].size() == 4);
    CHECK(j["results"]["labels"][0]["alpha"][0] == "i");
    CHECK(j["results"]["labels"][1]["alpha"][0] == "-i");
    CHECK(j["results"]["table"].size() > 0);
}

#ifdef MWHIT_CLI_PATH
namespace
{
    struct CommandResult
    {
        int exit_code;
        std::string output;
    };

    CommandResult run_cli(const std::string &args)
    {
        const std::string cmd = std::string(MWHIT_CLI_PATH) + " " + args + " 2>/dev/null";
        FILE *pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::string output;
        std::array<char, 4096> buf;
        std::size_t got;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
            output.append(buf.data(), got);
        const int status = pclose(pipe);
        return {WEXITSTATUS(status), output};
    }
} // namespace

TEST_CASE("binary: exit codes and byte determinism")
{
    const auto ok = run_cli("hilbert u0 pi --q 5");
    CHECK(ok.exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(ok.output);
    CHECK(j["results"]["value"] == -1);

    // invalid q: structured error, exit 1
    const auto bad = run_cli("hilbert u0 pi --q 4");
    CHECK(bad.exit_code == 1);
    const auto je = nlohmann::ordered_json::parse(bad.output);
    CHECK(je["error"]["code"] == "bad-q");

    // bad scalar: exit 1
    const auto bad2 = run_cli("classify --n 1 --alpha x --q 3");
    CHECK(bad2.exit_code == 1);

    // classify matches the library path
    const auto cls = run_cli("classify --n 2 --alpha i,-i --q 7");
    CHECK(cls.exit_code == 0);
    const auto jc = nlohmann::ordered_json::parse(cls.output);
    CHECK(jc["results"]["eigenvalues"][0] == "4/7");

    // determinism across runs and worker counts
    const auto t1 = run_cli("whittaker-table --n 2 --y 1 --k-max 3 --q 5 --workers 1");
    const auto t2 = run_cli("whittaker-table --n 2 --y 1 --k-max 3 --q 5 --workers 4");
    CHECK(t1.exit_code == 0);
    CHECK(t1.output == t2.output);

    JobConfig cfg;
    cfg.command = JobConfig::Command::whittaker_table;
    cfg.q = 5;
    cfg.n = 2;
    cfg.y = SquareClassElement::one();
    cfg.k_max = 3;
    CHECK(t1.output == run_job(cfg));
}
#endif
