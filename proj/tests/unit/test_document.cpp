#include <doctest.h>

#include <filesystem>
#include <string>

#include "dsonc/document.hpp"
#include "dsonc/error.hpp"
#include "testing.hpp"

using namespace dsonc;
using namespace dsonc::testing;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  return ParseError("unreachable");
}

}  // namespace

TEST_SUITE("document") {
  TEST_CASE("parse and convert") {
    const auto doc = parse_document(R"({"n": 2, "terms": [{"c": 1.5, "e": ["4/3", "0.5"]}, {"c": -1, "e": ["0", "0"]}]})");
    CHECK(doc.n == 2);
    CHECK(doc.mode == ExponentMode::Exp);
    REQUIRE(doc.terms.size() == 2);
    CHECK(doc.terms[0].e == std::vector<std::string>{"4/3", "0.5"});
    const auto f = doc.to_signomial();
    CHECK(f.coefficient_of(Point({Q(4, 3), Q(1, 2)})) == 1.5);
  }

  TEST_CASE("round trip preserves exponent strings and extra keys") {
    const std::string text = R"({
  "n": 1,
  "mode": "exp",
  "terms": [{"c": 0.1, "e": ["6/4"]}, {"c": 3, "e": ["0.50"]}],
  "note": {"source": "hand written"},
  "split": "uniform"
})";
    const auto a = parse_document(text);
    const auto b = parse_document(dump_document(a));
    CHECK(a == b);
    CHECK(b.terms[0].e[0] == "6/4");
    CHECK(b.terms[1].e[0] == "0.50");
    CHECK(b.terms[0].c == 0.1);
    REQUIRE(b.split.has_value());
    CHECK(b.split->is_uniform());
    CHECK(dump_document(b) == dump_document(a));

    const auto dir = std::filesystem::temp_directory_path() / "dsonc_doc_test";
    std::filesystem::create_directories(dir);
    save_document(dir / "a.json", a);
    CHECK(load_document(dir / "a.json") == a);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("property: random documents survive load/save/load") {
    Rng rng(71);
    for (int t = 0; t < 100; ++t) {
      SignomialDocument d;
      d.n = static_cast<std::size_t>(rng.integer(1, 3));
      d.mode = rng.coin() ? ExponentMode::Exp : ExponentMode::Poly;
      const int terms = static_cast<int>(rng.integer(0, 5));
      for (int k = 0; k < terms; ++k) {
        DocumentTerm term{rng.uniform(-10, 10), {}};
        for (std::size_t i = 0; i < d.n; ++i) {
          const long num = d.mode == ExponentMode::Poly ? rng.integer(0, 9) : rng.integer(-9, 9);
          switch (d.mode == ExponentMode::Poly ? 0 : rng.integer(0, 2)) {
            case 0: term.e.push_back(std::to_string(num)); break;
            case 1: term.e.push_back(std::to_string(num) + "/" + std::to_string(rng.integer(1, 7))); break;
            default: term.e.push_back(std::to_string(num) + ".25"); break;
          }
        }
        d.terms.push_back(term);
      }
      const auto once = parse_document(dump_document(d));
      CHECK(once == d);
      CHECK(parse_document(dump_document(once)) == once);
    }
  }

  TEST_CASE("syntax errors carry line and column") {
    const auto e = parse_failure("{\n  \"n\": 2,\n  \"terms\": [\n    {\"c\": 1, \"e\": [\"0\", \"0\"]},,\n  ]\n}");
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.line() == 4);
    CHECK(e.column() > 1);
  }

  TEST_CASE("semantic errors point at the offending value") {
    const std::string bad_exp = "{\n  \"n\": 1,\n  \"terms\": [\n    {\"c\": 1, \"e\": [\"1/0\"]}\n  ]\n}";
    auto e = parse_failure(bad_exp);
    CHECK(e.line() == 4);
    CHECK(e.column() == 20);

    e = parse_failure("{\"n\": 0, \"terms\": []}");
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);

    e = parse_failure("{\"n\": 1,\n \"mode\": \"poly\",\n \"terms\": [{\"c\": 1, \"e\": [\"-2\"]}]}");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("poly") != std::string::npos);

    e = parse_failure("{\"n\": 2, \"terms\": [{\"c\": 1, \"e\": [\"1\"]}]}");
    CHECK(std::string(e.what()).find("expected 2") != std::string::npos);

    e = parse_failure("{\"n\": 1, \"terms\": [{\"c\": \"x\", \"e\": [\"1\"]}]}");
    CHECK(e.column() == 26);

    e = parse_failure("{\"n\": 1}");
    CHECK(std::string(e.what()).find("terms") != std::string::npos);

    e = parse_failure("{\"n\": 1, \"mode\": \"log\", \"terms\": []}");
    CHECK(e.column() == 18);

    e = parse_failure("{\"n\": 1, \"terms\": [{\"c\": 1, \"e\": [1]}]}");
    CHECK(std::string(e.what()).find("strings") != std::string::npos);
  }

  TEST_CASE("line_column") {
    CHECK(line_column("ab\ncd", 0) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(line_column("ab\ncd", 4) == std::pair<std::size_t, std::size_t>{2, 2});
  }

  TEST_CASE("split documents") {
    CHECK(parse_split("\"uniform\"").is_uniform());
    const auto s = parse_split(R"({"pieces": [{"inner": ["1"], "shares": [{"e": ["0"], "fraction": 0.25}]}]})");
    CHECK_FALSE(s.is_uniform());
    REQUIRE(s.pieces().size() == 1);
    CHECK(s.pieces()[0].inner == P({1}));
    CHECK(s.pieces()[0].shares[0].fraction == 0.25);
    CHECK_THROWS_AS(parse_split(R"({"pieces": [{"inner": ["1"], "shares": [{"e": ["0"], "fraction": -1}]}]})"), ParseError);
    CHECK_THROWS_AS(parse_split("\"even\""), ParseError);
  }

  TEST_CASE("circuit documents") {
    const auto c = parse_circuit(R"({"n": 2, "vertices": [["4","2"],["2","4"],["0","0"]], "inner": ["2","2"]})");
    CHECK(c.lambda == std::vector{Q(1, 3), Q(1, 3), Q(1, 3)});
    const auto from_doc = parse_circuit(R"({"n": 1, "terms": [{"c": 1, "e": ["0"]}, {"c": -1, "e": ["1"]}, {"c": 1, "e": ["2"]}]})");
    CHECK(from_doc.inner == P({1}));
    try {
      parse_circuit(R"({"n": 1, "terms": [{"c": 1, "e": ["0"]}, {"c": 1, "e": ["2"]}]})");
      FAIL("expected NotACircuit");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotACircuit);
    }
  }
}
