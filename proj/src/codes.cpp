#include "critlang/codes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "critlang/errors.hpp"
#include "critlang/rng.hpp"

namespace critlang {

Alphabet::Alphabet(int q_) : q(q_) {
  if (q < 2) throw std::invalid_argument("alphabet needs q >= 2");
  if (q > 36) throw std::invalid_argument("alphabet limited to q <= 36 (digit encoding)");
}

Word::Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("word must be nonempty");
}

static int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

Word Word::parse(std::string_view text, int q) {
  if (text.empty()) throw ParseError("empty word");
  std::vector<std::uint8_t> letters;
  letters.reserve(text.size());
  for (char c : text) {
    int v = digit_value(c);
    if (v < 0) throw ParseError(std::string("invalid letter '") + c + "'");
    if (v >= q)
      throw ParseError(std::string("letter '") + c + "' outside alphabet of size " +
                       std::to_string(q));
    letters.push_back(static_cast<std::uint8_t>(v));
  }
  return Word(std::move(letters));
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (auto v : letters_) s.push_back(v < 10 ? static_cast<char>('0' + v)
                                             : static_cast<char>('a' + v - 10));
  return s;
}

Word word_product(const Word& u, const Word& v) {
  if (u.size() != v.size()) throw std::invalid_argument("word_product: length mismatch");
  std::vector<std::uint8_t> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > 1 || v[i] > 1)
      throw std::invalid_argument("word_product: defined on the binary alphabet only");
    out[i] = static_cast<std::uint8_t>(u[i] == v[i] ? 1 : 0);
  }
  return Word(std::move(out));
}

Code::Code(Alphabet alphabet, int n, std::vector<Word> words)
    : q_(alphabet.q), n_(n), words_(std::move(words)) {
  if (n_ < 1) throw std::invalid_argument("code length must be positive");
  if (words_.empty()) throw std::invalid_argument("code must be nonempty");
  for (const auto& w : words_) {
    if (static_cast<int>(w.size()) != n_)
      throw std::invalid_argument("code word '" + w.str() + "' has length " +
                                  std::to_string(w.size()) + ", expected " +
                                  std::to_string(n_));
    for (auto v : w.letters())
      if (v >= q_) throw std::invalid_argument("code word '" + w.str() + "' uses letters outside the alphabet");
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

bool Code::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

double Code::rate() const {
  if (words_.size() == 1) return 0.0;
  return std::log(static_cast<double>(words_.size())) /
         (static_cast<double>(n_) * std::log(static_cast<double>(q_)));
}

double rate(const Code& code) { return code.rate(); }

static bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Code linear_code(int p, const std::vector<std::vector<int>>& generator) {
  if (!is_prime(p)) throw std::invalid_argument("linear_code: p must be prime");
  if (generator.empty()) throw std::invalid_argument("linear_code: empty generator");
  std::size_t n = generator[0].size();
  if (n == 0) throw std::invalid_argument("linear_code: zero-length rows");
  std::vector<std::vector<int>> rows;
  for (const auto& r : generator) {
    if (r.size() != n) throw std::invalid_argument("linear_code: ragged generator");
    std::vector<int> red(n);
    for (std::size_t j = 0; j < n; ++j) red[j] = ((r[j] % p) + p) % p;
    rows.push_back(std::move(red));
  }

  // Gaussian elimination to a row basis; rank may be below the row count
  std::vector<std::vector<int>> basis;
  std::size_t col = 0;
  for (std::size_t r = 0; r < rows.size() && col < n; ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    // scale pivot row to leading 1 (inverse by Fermat: p is prime)
    long long inv = 1, base = rows[r][col], e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (std::size_t j = 0; j < n; ++j) rows[r][j] = static_cast<int>(rows[r][j] * inv % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      long long f = rows[i][col];
      for (std::size_t j = 0; j < n; ++j)
        rows[i][j] = static_cast<int>(((rows[i][j] - f * rows[r][j]) % p + p) % p);
    }
    ++r;
  }
  for (const auto& r : rows)
    if (std::any_of(r.begin(), r.end(), [](int v) { return v != 0; })) basis.push_back(r);

  int k = static_cast<int>(basis.size());
  double span_size = std::pow(static_cast<double>(p), k);
  if (span_size > 2e7)
    throw NumericError("linear_code: span has " + std::to_string(span_size) +
                       " words, too large to enumerate");

  std::vector<Word> words;
  std::vector<int> coeff(basis.size(), 0);
  std::vector<std::uint8_t> letters(n);
  while (true) {
    std::fill(letters.begin(), letters.end(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        letters[j] = static_cast<std::uint8_t>((letters[j] + coeff[i] * basis[i][j]) % p);
    }
    words.push_back(Word(letters));
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  if (words.empty()) words.push_back(Word(std::vector<std::uint8_t>(n, 0)));

  Code code(Alphabet(p), static_cast<int>(n), std::move(words));
  code.exact_rate_ = std::make_pair(k, static_cast<int>(n));
  return code;
}

Code random_code(int q, int n, std::uint64_t size, std::uint64_t seed) {
  Alphabet a(q);
  if (n < 1) throw std::invalid_argument("random_code: n must be positive");
  unsigned __int128 space = 1;
  bool huge = false;
  for (int i = 0; i < n; ++i) {
    space *= static_cast<unsigned>(q);
    if (space > (static_cast<unsigned __int128>(1) << 62)) {
      huge = true;
      break;
    }
  }
  if (!huge && size > static_cast<std::uint64_t>(space))
    throw std::invalid_argument("random_code: size exceeds q^n");
  if (size == 0) throw std::invalid_argument("random_code: size must be positive");

  SplitMix64 rng(seed);
  std::vector<Word> words;
  words.reserve(size);
  if (!huge) {
    auto total = static_cast<std::uint64_t>(space);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(size * 2);
    // Floyd's subset sampling: uniform over all size-subsets of [0, total)
    for (std::uint64_t j = total - size; j < total; ++j) {
      std::uint64_t t = rng.uniform_below(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> ordered(chosen.begin(), chosen.end());
    std::sort(ordered.begin(), ordered.end());
    for (auto idx : ordered) {
      std::vector<std::uint8_t> letters(n);
      for (int i = n - 1; i >= 0; --i) {
        letters[i] = static_cast<std::uint8_t>(idx % static_cast<std::uint64_t>(q));
        idx /= static_cast<std::uint64_t>(q);
      }
      words.push_back(Word(std::move(letters)));
    }
  } else {
    // index space above 2^62: draw words directly, collisions are negligible
    // but are still rejected to keep the set exact
    std::set<Word> chosen;
    while (chosen.size() < size) {
      std::vector<std::uint8_t> letters(n);
      for (int i = 0; i < n; ++i)
        letters[i] = static_cast<std::uint8_t>(rng.uniform_below(static_cast<std::uint64_t>(q)));
      chosen.insert(Word(std::move(letters)));
    }
    words.assign(chosen.begin(), chosen.end());
  }
  return Code(a, n, std::move(words));
}

CodeFamily::CodeFamily(std::vector<Code> members) : codes(std::move(members)) {
  if (codes.empty()) throw std::invalid_argument("family must be nonempty");
  for (std::size_t i = 1; i < codes.size(); ++i) {
    if (codes[i].q() != codes[0].q())
      throw std::invalid_argument("family members must share an alphabet");
    if (codes[i].rate() < codes[i - 1].rate() - 1e-12)
      throw std::invalid_argument("family rates must be nondecreasing");
  }
  limit_rate = codes.back().rate();
}

static std::string trimmed(const std::string& line) {
  auto cut = line.substr(0, line.find('#'));
  auto b = cut.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = cut.find_last_not_of(" \t\r\n");
  return cut.substr(b, e - b + 1);
}

Code read_code(std::istream& in) {
  std::string line;
  int lineno = 0, q = 0, n = 0;
  bool have_header = false;
  std::vector<Word> words;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trimmed(line);
    if (t.empty()) continue;
    if (!have_header) {
      std::istringstream hs(t);
      std::string qa, na;
      hs >> qa >> na;
      if (qa.rfind("q=", 0) != 0 || na.rfind("n=", 0) != 0)
        throw ParseError(lineno, "expected header 'q=<int> n=<int>', got '" + t + "'");
      try {
        q = std::stoi(qa.substr(2));
        n = std::stoi(na.substr(2));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad integer in header '" + t + "'");
      }
      if (q < 2) throw ParseError(lineno, "header needs q >= 2");
      if (n < 1) throw ParseError(lineno, "header needs n >= 1");
      have_header = true;
      continue;
    }
    try {
      Word w = Word::parse(t, q);
      if (static_cast<int>(w.size()) != n)
        throw ParseError("word '" + t + "' has length " + std::to_string(w.size()) +
                         ", expected " + std::to_string(n));
      words.push_back(std::move(w));
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!have_header) throw ParseError("missing 'q= n=' header");
  if (words.empty()) throw ParseError("no words after header");
  return Code(Alphabet(q), n, std::move(words));  // duplicates collapse (set semantics)
}

Code read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return read_code(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_code(const Code& code, std::ostream& out) {
  out << "q=" << code.q() << " n=" << code.n() << "\n";
  for (const auto& w : code.words()) out << w.str() << "\n";
}

}  // namespace critlang
