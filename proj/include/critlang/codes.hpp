#pragma once
// Block codes over a finite alphabet and their transmission rate
// R = log_q(#C) / n.  Codes are immutable word sets with a fixed length;
// families bundle codes of nondecreasing rate and carry the limit rate that
// the rest of the toolkit (fractal dimension, critical temperature) keys on.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace critlang {

struct Alphabet {
  int q;
  explicit Alphabet(int q_);  // q >= 2
};

class Word {
 public:
  explicit Word(std::vector<std::uint8_t> letters);
  // digit string, 0-9 then a-z (q up to 36)
  static Word parse(std::string_view text, int q);

  const std::vector<std::uint8_t>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  std::uint8_t operator[](std::size_t i) const { return letters_[i]; }
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<std::uint8_t> letters_;
};

// letter product of the binary alphabet: aa = bb = b, ab = ba = a, with
// a -> 0 and b -> 1; digit-wise this is equality (XNOR)
Word word_product(const Word& u, const Word& v);

class Code {
 public:
  // words are deduplicated and stored sorted; every word must have length n
  // and letters below q
  Code(Alphabet alphabet, int n, std::vector<Word> words);

  int q() const { return q_; }
  int n() const { return n_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  bool contains(const Word& w) const;

  double rate() const;
  // set on linear codes: exact (k, n) with rate k/n
  std::optional<std::pair<int, int>> exact_rate() const { return exact_rate_; }

 private:
  friend Code linear_code(int p, const std::vector<std::vector<int>>& generator);
  int q_;
  int n_;
  std::vector<Word> words_;
  std::optional<std::pair<int, int>> exact_rate_;
};

double rate(const Code& code);

// row span of the generator matrix over F_p (p prime); dependent rows are
// tolerated, the span and the stored exact rate use the actual rank
Code linear_code(int p, const std::vector<std::vector<int>>& generator);

// uniform sample of `size` distinct words from A^n (Floyd's algorithm)
Code random_code(int q, int n, std::uint64_t size, std::uint64_t seed);

struct CodeFamily {
  std::vector<Code> codes;
  double limit_rate;
  explicit CodeFamily(std::vector<Code> members);  // rates must be nondecreasing
};

// word files: first line "q=<int> n=<int>", then one digit-string word per
// line; '#' starts a comment, blank lines are skipped
Code read_code(std::istream& in);
Code read_code_file(const std::string& path);
void write_code(const Code& code, std::ostream& out);

}  // namespace critlang
