#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "orderly/cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;

  nlohmann::json report() const { return nlohmann::json::parse(out); }

  // The manifest is the last line of stderr.
  nlohmann::json manifest() const {
    auto end = err.find_last_not_of('\n');
    auto start = err.rfind('\n', end);
    return nlohmann::json::parse(err.substr(start == std::string::npos ? 0 : start + 1))
        .at("manifest");
  }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = orderly::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("top-level behaviour") {
  CHECK(run({"--version"}).code == orderly::cli::kOk);
  CHECK(run({"--version"}).out.find("0.1.0") != std::string::npos);
  CHECK(run({"--help"}).code == orderly::cli::kOk);
  CHECK(run({}).code == orderly::cli::kUserError);
  CHECK(run({"frobnicate"}).code == orderly::cli::kUserError);
  CHECK(run({"enumerate", "--max-size", "0", "--max-index", "2"}).code ==
        orderly::cli::kUserError);
  CHECK(run({"search"}).code == orderly::cli::kUserError);
}

TEST_CASE("validate") {
  const auto ok = run({"validate", "f v0 v1"});
  CHECK(ok.code == 0);
  CHECK(ok.report()["orderly"] == true);
  CHECK(ok.report()["size"] == 3);

  const auto disorderly = run({"validate", "f v1 v0"});
  CHECK(disorderly.code == 1);
  CHECK(disorderly.report()["orderly"] == false);

  const auto bad = run({"validate", "g v0 v1"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("UnknownSymbol") != std::string::npos);
  CHECK(bad.manifest()["outcome"] == "error:UnknownSymbol");

  const auto unary = run({"validate", "g v3", "--signature",
                          R"({"symbols":[{"name":"g","arity":1}]})"});
  CHECK(unary.code == 0);
}

TEST_CASE("reduce and enumerate") {
  const auto r = run({"reduce", "--algebra", "nat-add", "--assignment", "[1,2,3,4]",
                      "--witness", R"(["f v0 v1","f v2 v3"])"});
  CHECK(r.code == 0);
  CHECK(r.report()["reduced"] == nlohmann::json{3, 7});

  const auto range = run({"reduce", "--algebra", "nat-add", "--assignment", "1..4",
                          "--witness", R"(["f v0 v1","f v2 v3"])"});
  CHECK(range.out == r.out);

  const auto beyond = run({"reduce", "--algebra", "nat-add", "--assignment", "[1,2,3,4]",
                           "--witness", R"(["v9"])"});
  CHECK(beyond.code == 2);
  CHECK(beyond.err.find("IndexBeyondPrefix") != std::string::npos);

  const auto e = run({"enumerate", "--max-size", "3", "--max-index", "2"});
  CHECK(e.code == 0);
  CHECK(e.report()["terms"] ==
        nlohmann::json{"v0", "v1", "v2", "f v0 v1", "f v0 v2", "f v1 v2"});
  CHECK(e.report()["count"] == 6);
  CHECK(run({"enumerate"}).code == 2);
}

TEST_CASE("searches") {
  const auto even = run({"search", "hindman", "--algebra", "nat-add", "--assignment", "1..12",
                         "--mod", "2", "--accept", "0"});
  CHECK(even.code == 0);
  const auto result = even.report()["result"];
  CHECK(result["outcome"] == "found");
  CHECK(result["witness"] == nlohmann::json{"v1", "v3", "v5"});
  CHECK(result["side"] == "contained");

  const auto three = run({"search", "hindman", "--algebra", "nat-add", "--assignment", "1..12",
                          "--mod", "3", "--accept", "0", "--k", "2", "--fr-size", "3"});
  CHECK(three.code == 0);
  CHECK(three.report()["result"]["witness"] == nlohmann::json{"v0", "v3"});

  const auto constant = run({"search", "constant", "--algebra", "nat-add", "--assignment",
                             "1..6", "--k", "2", "--max-size", "3"});
  CHECK(constant.code == 1);
  CHECK(constant.report()["result"]["outcome"] == "exhausted");

  const auto tuple = run({"search", "tuple", "--algebra", "nat-add", "--assignment", "1..8",
                          "--coloring",
                          R"({"kind":"component","index":0,"inner":{"kind":"residue","modulus":2,"accept":[0]}})",
                          "--n", "2"});
  CHECK(tuple.code == 0);
  CHECK(tuple.report()["result"]["tuple_arity"] == 2);

  CHECK(run({"search", "hindman", "--view", R"({"kind":"free"})", "--coloring",
             R"({"kind":"leading-parity","symbol":"f"})"})
            .code == 2);
  CHECK(run({"search", "hindman", "--algebra", "nat-add", "--assignment", "1..6"}).code == 2);
}

TEST_CASE("checks") {
  CHECK(run({"check", "semigroup", "--algebra", "nat-add", "--assignment", "1..8"}).code == 0);
  const auto pair = run({"check", "semigroup", "--algebra", "pair:nat-add", "--assignment",
                         "[[1,2],[3,4],[5,6],[7,8]]"});
  CHECK(pair.code == 1);
  CHECK(pair.report()["passed"] == false);

  const auto faulty = run({"check", "congruence", "--view",
                           R"({"kind":"patched","base":{"kind":"induced","algebra":"nat-add","assignment":[1,1,3]},"term":"f v1 v2","value":0})"});
  CHECK(faulty.code == 1);
  CHECK(faulty.report()["violation_count"].get<int>() > 0);

  const std::vector<std::string> lift{"--algebra", "nat-add", "--assignment", "1..8",
                                      "--witness", R"(["v0","v1","v2","v3"])",
                                      "--u-witness", R"(["f v0 v1","f v2 v3"])",
                                      "--max-size", "3", "--max-index", "3"};
  auto with = [&](std::vector<std::string> head) {
    head.insert(head.end(), lift.begin(), lift.end());
    return head;
  };
  const auto named = run(with({"check", "sharp-lift"}));
  const auto aliased = run(with({"check", "claim-1010a"}));
  CHECK(named.code == 0);
  CHECK(named.out == aliased.out);
  CHECK(run({"check", "sharp-lift", "--algebra", "nat-add", "--assignment", "1..8"}).code == 2);

  const auto pairs = run({"check", "pair-sharp", "--algebra", "nat-add", "--assignment",
                          "[[1,2],[3,4]]"});
  CHECK(pairs.code == 0);
  CHECK(pairs.report()["passed"] == true);

  const auto free = run({"check", "obstruction", "--view", R"({"kind":"free"})", "--k", "3",
                         "--max-size", "3", "--max-index", "6"});
  CHECK(free.code == 0);
  CHECK(run({"check", "obstruction", "--algebra", "nat-add", "--assignment", "[1,2,3]"}).code ==
        2);
  CHECK(run({"check", "injectivity", "--view", R"({"kind":"free"})", "--max-index", "3"}).code ==
        0);
  CHECK(run({"check", "injectivity", "--algebra", "nat-add", "--assignment", "[1,2,3]"}).code ==
        1);
}

TEST_CASE("sharp commands") {
  const auto split = run({"sharp", "split", "f f v0 v1 v2"});
  CHECK(split.report()["x"] == "f f v0 v1 f v2 v3");
  CHECK(split.report()["y"] == "f v4 v5");
  CHECK(split.report()["occurrence_law"] == true);

  const auto w = run({"sharp", "witness", "--witness", R"(["v0","v1"])"});
  CHECK(w.report()["lifted"] == nlohmann::json{"f v0 v1", "f v2 v3"});
  CHECK(run({"sharp", "witness", "--witness", R"(["v0"])", "--u-witness",
             R"(["v0","v1","v2"])"})
            .code == 2);
}

TEST_CASE("reconstruct") {
  const auto r = run({"reconstruct", "--algebra", "nat-add", "--assignment", "[1,2]",
                      "--max-size", "3"});
  CHECK(r.code == 0);
  CHECK(r.report()["realized"] == 1);
  CHECK(r.report()["algebra"]["ops"]["f"]["table"]["1,2"] == 3);
  const auto filled = run({"reconstruct", "--algebra", "nat-add", "--assignment", "[1,2]",
                           "--max-size", "3", "--fill", "2"});
  CHECK(filled.report()["algebra"]["ops"]["f"]["table"]["3,3"] == 2);
}

TEST_CASE("output does not depend on the thread count") {
  const std::vector<std::string> base{"search", "hindman", "--algebra", "nat-add",
                                      "--assignment", "[3,5,7,11,13,17,19,23,29,31]",
                                      "--mod", "3", "--accept", "1",
                                      "--k", "2", "--max-size", "3", "--fr-size", "3"};
  auto with_threads = [&](const char* n) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(n);
    return run(args);
  };
  const auto one = with_threads("1");
  for (int i = 0; i < 3; ++i) {
    const auto eight = with_threads("8");
    CHECK(eight.code == one.code);
    CHECK(eight.out == one.out);
    CHECK(eight.manifest()["config"]["--threads"] == "8");
  }
  CHECK(one.out.find("threads") == std::string::npos);
}

TEST_CASE("manifests") {
  const auto inline_run = run({"check", "semigroup", "--algebra", "nat-add", "--assignment",
                               "1..8"});
  const auto m = inline_run.manifest();
  CHECK(m["command"] == "check semigroup");
  CHECK(m["version"] == "0.1.0");
  CHECK(m["exit"] == 0);
  CHECK(m["outcome"] == "ok");
  CHECK(m["inputs"]["algebra"] == fnv1a64("nat-add"));
  CHECK(m["inputs"]["assignment"] == fnv1a64("1..8"));
  CHECK(m["config"]["--assignment"] == "1..8");
  CHECK(m["wall_ms"].is_number());

  SUBCASE("flags accept files") {
    const std::string table =
        R"({"universe":[0,1],"ops":{"f":{"arity":2,"table":{"0,0":0,"0,1":1,"1,0":1,"1,1":0}}}})";
    const auto path = temp_file("orderly_cli_table.json", table);
    const auto from_file = run({"check", "semigroup", "--algebra", path.string(),
                                "--assignment", "[0,1,1]"});
    const auto from_text = run({"check", "semigroup", "--algebra", table,
                                "--assignment", "[0,1,1]"});
    CHECK(from_file.code == 0);
    CHECK(from_file.out == from_text.out);
    CHECK(from_file.manifest()["inputs"]["algebra"] == fnv1a64(table));
    std::filesystem::remove(path);
  }

  SUBCASE("manifest to a file") {
    const auto path = std::filesystem::temp_directory_path() / "orderly_cli_manifest.json";
    const auto r = run({"validate", "f v0 v1", "--manifest", path.string()});
    CHECK(r.err.find("manifest") == std::string::npos);
    std::ifstream in(path);
    const auto written = nlohmann::json::parse(in).at("manifest");
    CHECK(written["command"] == "validate");
    CHECK_FALSE(written["config"].contains("--manifest"));
    std::filesystem::remove(path);
  }
}
