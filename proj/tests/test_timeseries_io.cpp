#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ssamt/csv.hpp"
#include "ssamt/error.hpp"
#include "ssamt/timeseries.hpp"

using namespace ssamt;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "ssamt_io_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("read_csv parses values and missing markers") {
    const auto ms = read_csv(temp_file("basic.csv", "a,b\n1,2\n3,NA\n5,6\n"));
    REQUIRE(ms.size() == 2);
    const TimeSeries& a = ms[0];
    const TimeSeries& b = ms[1];
    CHECK(a.name() == "a");
    CHECK_FALSE(a.has_missing());
    CHECK(std::vector<double>(a.values().begin(), a.values().end()) == std::vector<double>{1, 3, 5});
    CHECK(b.missing_count() == 1);
    CHECK(b.is_missing(1));
    CHECK(b.raw_values()[0] == 2.0);
    CHECK(b.raw_values()[2] == 6.0);
    CHECK_THROWS_AS(b.values(), Error);
}

TEST_CASE("read_csv recognises empty, NA and NaN in any case") {
    const auto t = parse_table("x,y\n1,0\n,0\nna,0\nNaN,0\n\nnan,0\n7,0\n");
    // Blank lines are skipped rather than read as rows.
    REQUIRE(t.numeric.size() == 2);
    CHECK(t.numeric[0].size() == 6);
    CHECK(t.numeric[0].missing_count() == 4);
}

TEST_CASE("read_csv rejects header-only files") {
    CHECK(error_of([] { read_csv(temp_file("header.csv", "a,b\n")); }).find("empty data") != std::string::npos);
    CHECK(error_of([] { read_csv(temp_file("nothing.csv", "")); }).find("empty file") != std::string::npos);
}

TEST_CASE("parse errors name the row and column") {
    const std::string msg = error_of([] { read_csv(temp_file("bad.csv", "a,b\n1.2.3,4\n")); });
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("\"a\"") != std::string::npos);
    CHECK(msg.find("1.2.3") != std::string::npos);
}

TEST_CASE("ragged rows and duplicate names are errors") {
    CHECK_THROWS_AS(parse_table("a,b\n1\n"), Error);
    CHECK_THROWS_AS(parse_table("a,a\n1,2\n"), Error);
    CHECK_THROWS_AS(read_csv("/nonexistent/ssamt.csv"), Error);
}

TEST_CASE("index column and text columns") {
    CsvOptions opts;
    opts.skip_index_column = true;
    opts.text_columns = {"g"};
    const auto t = parse_table("t,x,g\n1,0.5,m\n2,\"1.5\",f\n", opts);
    REQUIRE(t.numeric.size() == 1);
    CHECK(t.numeric[0].name() == "x");
    REQUIRE(t.text_column("g") != nullptr);
    CHECK(t.text_column("g")->cells == std::vector<std::string>{"m", "f"});
    CHECK(t.rows() == 2);
    CHECK(t.text_column("t")->cells == std::vector<std::string>{"1", "2"});
    CHECK(format_table(t) == "t,x,g\n1,0.5,m\n2,1.5,f\n");
}

TEST_CASE("write_csv round trips") {
    const auto original = read_csv(temp_file("rt_in.csv", "a,b\n1,2\n3,NA\n5,6\n"));
    const fs::path out = temp_file("rt_out.csv", "");
    write_csv(original, out);
    CHECK(read_csv(out) == original);
}

TEST_CASE("write_csv edge shapes") {
    const fs::path one = temp_file("one.csv", "");
    write_csv(MultiSeries({TimeSeries("s", {2.5})}), one);
    CHECK(slurp(one) == "s\n2.5\n");

    const fs::path gaps = temp_file("gaps.csv", "");
    write_csv(MultiSeries({TimeSeries("s", {0, 0, 0}, {true, true, true})}), gaps);
    CHECK(slurp(gaps) == "s\nNA\nNA\nNA\n");

    const fs::path ragged = temp_file("ragged.csv", "");
    write_csv(MultiSeries({TimeSeries("a", {1, 2, 3}), TimeSeries("b", {4})}), ragged);
    CHECK(slurp(ragged) == "a,b\n1,4\n2,NA\n3,NA\n");
}

TEST_CASE("numbers survive a text round trip bit for bit") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    std::vector<double> v;
    for (int i = 0; i < 500; ++i) {
        v.push_back(u(rng) * std::pow(10.0, (i % 40) - 20));
    }
    const fs::path p = temp_file("bits.csv", "");
    write_csv(MultiSeries({TimeSeries("v", v)}), p);
    const auto back = read_csv(p);
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(back[0].values()[i] == v[i]);
    }
}

TEST_CASE("TimeSeries invariants") {
    CHECK_THROWS_AS(TimeSeries("e", {}), Error);
    CHECK_THROWS_AS(TimeSeries("inf", {1.0, INFINITY}), Error);
    CHECK_THROWS_AS(TimeSeries("m", {1.0, 2.0}, {false}), Error);

    const TimeSeries s = TimeSeries::from_optional("s", {1.0, std::nullopt, 3.0, std::nullopt});
    CHECK(s.missing_count() == 2);
    CHECK(s.effective_length() == 3);
    CHECK(s.head(1).values()[0] == 1.0);
}

TEST_CASE("MultiSeries needs unique names") {
    CHECK_THROWS_AS(MultiSeries({}), Error);
    CHECK_THROWS_AS(MultiSeries({TimeSeries("a", {1}), TimeSeries("a", {2})}), Error);
    const MultiSeries ms({TimeSeries("a", {1}), TimeSeries("b", {2})});
    CHECK(ms.find("b") != nullptr);
    CHECK(ms.find("c") == nullptr);
}

TEST_CASE("GroupedSample validation") {
    using G = GroupedSample::Group;
    CHECK_NOTHROW(GroupedSample("v", {G{"a", {1, 2}}, G{"b", {3, 4}}}));
    CHECK_THROWS_AS(GroupedSample("v", {G{"a", {1, 2}}}), Error);
    CHECK_THROWS_AS(GroupedSample("v", {G{"a", {1}}, G{"b", {3, 4}}}), Error);
    CHECK_THROWS_AS(GroupedSample("v", {G{"a", {1, NAN}}, G{"b", {3, 4}}}), Error);
}

TEST_CASE("AIS data file loads") {
    CsvOptions opts;
    opts.text_columns = {"sex"};
    const auto t = read_table(fs::path(SSAMT_DATA_DIR) / "ais.csv", opts);
    CHECK(t.rows() == 202);
    CHECK(t.numeric.size() == 11);
    const auto& sex = t.text_column("sex")->cells;
    CHECK(std::count(sex.begin(), sex.end(), "m") == 102);
    CHECK(std::count(sex.begin(), sex.end(), "f") == 100);
}
