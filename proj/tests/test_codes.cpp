#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "critlang/codes.hpp"
#include "critlang/errors.hpp"

using namespace critlang;

static Code make(int q, int n, std::initializer_list<const char*> ws) {
  std::vector<Word> words;
  for (const char* w : ws) words.push_back(Word::parse(w, q));
  return Code(Alphabet(q), n, std::move(words));
}

TEST_CASE("rate of the repetition pair is 1/2") {
  CHECK(make(2, 2, {"00", "11"}).rate() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("rate of the 4-word parity code is 2/3") {
  auto c = make(2, 3, {"000", "011", "101", "110"});
  CHECK(c.rate() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("full and trivial codes hit the rate extremes") {
  CHECK(make(3, 2, {"00", "01", "02", "10", "11", "12", "20", "21", "22"}).rate() ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(make(2, 5, {"01010"}).rate() == 0.0);
}

TEST_CASE("word parsing validates letters") {
  CHECK(Word::parse("0120", 3).str() == "0120");
  CHECK(Word::parse("a9", 11).letters() == std::vector<std::uint8_t>{10, 9});
  CHECK_THROWS_AS(Word::parse("012", 2), ParseError);
  CHECK_THROWS_AS(Word::parse("0x1", 2), ParseError);
  CHECK_THROWS_AS(Word::parse("", 2), ParseError);
}

TEST_CASE("code construction rejects bad words and collapses duplicates") {
  CHECK_THROWS_AS(make(2, 2, {"00", "111"}), std::invalid_argument);
  // parse catches bad digits early; Code itself rejects smuggled-in letters
  CHECK_THROWS_AS(make(2, 2, {"02"}), ParseError);
  CHECK_THROWS_AS(Code(Alphabet(2), 2, {Word::parse("02", 3)}), std::invalid_argument);
  CHECK_THROWS_AS(Code(Alphabet(2), 2, {}), std::invalid_argument);
  auto c = make(2, 2, {"11", "00", "11"});
  CHECK(c.size() == 2);
  CHECK(c.words()[0].str() == "00");  // sorted
  CHECK(c.contains(Word::parse("11", 2)));
  CHECK(!c.contains(Word::parse("01", 2)));
}

TEST_CASE("word product follows the a/b multiplication table") {
  // ab * bb = ab  (a*b = a, b*b = b)
  auto u = Word::parse("01", 2), v = Word::parse("11", 2);
  CHECK(word_product(u, v).str() == "01");
  // u * u is all b
  CHECK(word_product(u, u).str() == "11");
  CHECK(word_product(Word::parse("00", 2), Word::parse("01", 2)).str() == "10");
  CHECK_THROWS_AS(word_product(u, Word::parse("111", 2)), std::invalid_argument);
  CHECK_THROWS_AS(word_product(Word::parse("02", 3), Word::parse("00", 3)),
                  std::invalid_argument);
}

TEST_CASE("linear code spans the generator rows") {
  auto c = linear_code(2, {{1, 0, 1}, {0, 1, 1}});
  CHECK(c.size() == 4);
  CHECK(c.contains(Word::parse("000", 2)));
  CHECK(c.contains(Word::parse("011", 2)));
  CHECK(c.contains(Word::parse("101", 2)));
  CHECK(c.contains(Word::parse("110", 2)));
  REQUIRE(c.exact_rate().has_value());
  CHECK(c.exact_rate()->first == 2);
  CHECK(c.exact_rate()->second == 3);
  CHECK(c.rate() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("ternary generator and dependent rows") {
  auto c3 = linear_code(3, {{1, 2}});
  CHECK(c3.size() == 3);
  CHECK(c3.contains(Word::parse("12", 3)));
  CHECK(c3.contains(Word::parse("21", 3)));
  CHECK(c3.exact_rate()->first == 1);

  auto dep = linear_code(2, {{1, 1}, {1, 1}});
  CHECK(dep.size() == 2);
  CHECK(dep.exact_rate()->first == 1);

  auto zero = linear_code(2, {{0, 0, 0}});
  CHECK(zero.size() == 1);
  CHECK(zero.exact_rate()->first == 0);
  CHECK(zero.rate() == 0.0);
}

TEST_CASE("linear code wants a prime modulus") {
  CHECK_THROWS_AS(linear_code(4, {{1}}), std::invalid_argument);
  CHECK_THROWS_AS(linear_code(1, {{1}}), std::invalid_argument);
  CHECK_THROWS_AS(linear_code(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(linear_code(2, {{1, 0}, {1}}), std::invalid_argument);
}

TEST_CASE("random codes are deterministic, distinct and in range") {
  auto a = random_code(3, 4, 20, 77);
  auto b = random_code(3, 4, 20, 77);
  auto c = random_code(3, 4, 20, 78);
  CHECK(a.words() == b.words());
  CHECK(a.words() != c.words());
  CHECK(a.size() == 20);
  std::set<Word> seen(a.words().begin(), a.words().end());
  CHECK(seen.size() == 20);

  auto full = random_code(2, 3, 8, 1);
  CHECK(full.size() == 8);
  CHECK_THROWS_AS(random_code(2, 3, 9, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_code(2, 3, 0, 1), std::invalid_argument);
  // huge index space takes the direct-draw path
  auto big = random_code(2, 70, 12, 5);
  CHECK(big.size() == 12);
  CHECK(big.words() == random_code(2, 70, 12, 5).words());
}

TEST_CASE("families require nondecreasing rates and expose the limit") {
  std::vector<Code> members{make(2, 2, {"00", "11"}),
                            make(2, 2, {"00", "01", "10", "11"})};
  CodeFamily fam(members);
  CHECK(fam.limit_rate == doctest::Approx(1.0).epsilon(1e-14));

  std::vector<Code> bad{make(2, 2, {"00", "01", "10", "11"}), make(2, 2, {"00", "11"})};
  CHECK_THROWS_AS(CodeFamily{bad}, std::invalid_argument);
  std::vector<Code> mixed_q{make(2, 2, {"00", "11"}), make(3, 2, {"00", "11", "22"})};
  CHECK_THROWS_AS(CodeFamily{mixed_q}, std::invalid_argument);
}

TEST_CASE("code files round-trip") {
  auto c = make(3, 2, {"00", "12", "21"});
  std::ostringstream out;
  write_code(c, out);
  std::istringstream in(out.str());
  auto back = read_code(in);
  CHECK(back.q() == 3);
  CHECK(back.n() == 2);
  CHECK(back.words() == c.words());
}

TEST_CASE("code file diagnostics carry line numbers") {
  std::istringstream bad_header("q=x n=2\n00\n");
  CHECK_THROWS_WITH_AS(read_code(bad_header), doctest::Contains("line 1"), ParseError);

  std::istringstream bad_word("# comment\nq=2 n=2\n00\n21\n");
  CHECK_THROWS_WITH_AS(read_code(bad_word), doctest::Contains("line 4"), ParseError);

  std::istringstream short_word("q=2 n=3\n00\n");
  CHECK_THROWS_WITH_AS(read_code(short_word), doctest::Contains("length"), ParseError);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_code(empty), ParseError);
  std::istringstream headless("q=2 n=2\n# only comments\n");
  CHECK_THROWS_AS(read_code(headless), ParseError);
}

TEST_CASE("duplicate words in a file collapse") {
  std::istringstream in("q=2 n=2\n00\n00\n11\n");
  CHECK(read_code(in).size() == 2);
}
