#include <cctype>
#include <fstream>
#include <sstream>

#include "fa/formula.hpp"

namespace fa {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

enum class Tok {
  Ident, Zero, One, Top, Succ, Def, PlusKw, TimesKw, All, Ex, Dia, Box,
  Plus, Star, Eq, Lt, LParen, RParen, Comma, Dot, Bang, Amp, Bar, Arrow, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      Tok kind;
      if (word == "A") kind = Tok::All;
      else if (word == "E") kind = Tok::Ex;
      else if (word == "N") kind = Tok::Top;
      else if (word == "S") kind = Tok::Succ;
      else if (word == "Def") kind = Tok::Def;
      else if (word == "Plus") kind = Tok::PlusKw;
      else if (word == "Times") kind = Tok::TimesKw;
      else if (word == "dia") kind = Tok::Dia;
      else if (word == "box") kind = Tok::Box;
      else if (std::islower(static_cast<unsigned char>(word[0]))) kind = Tok::Ident;
      else throw ParseError("unknown word '" + word + "'", start);
      out.push_back({kind, std::move(word), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      std::string digits(s.substr(start, i - start));
      if (digits == "0") out.push_back({Tok::Zero, digits, start});
      else if (digits == "1") out.push_back({Tok::One, digits, start});
      else throw ParseError("only the numerals 0 and 1 are constants, got '" + digits + "'", start);
      continue;
    }
    Tok kind;
    std::size_t len = 1;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '*': kind = Tok::Star; break;
      case '=': kind = Tok::Eq; break;
      case '<': kind = Tok::Lt; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case '!': kind = Tok::Bang; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Bar; break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          kind = Tok::Arrow;
          len = 2;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    i += len;
    out.push_back({kind, std::string(s.substr(start, len)), start});
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula formula_to_end() {
    Formula f = implication();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_to_end() {
    Term t = sum();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) {
      const Token& t = peek();
      throw ParseError(std::string("expected ") + what + (t.kind == Tok::End ? ", got end of input" : ", got '" + t.text + "'"), t.pos);
    }
    return tokens_[pos_++];
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implication(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Bar)) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Bang)) return Formula::negation(unary());
    if (accept(Tok::Dia)) return Formula::possibly(unary());
    if (accept(Tok::Box)) return Formula::necessarily(unary());
    if (at(Tok::All) || at(Tok::Ex)) {
      const bool universal = peek().kind == Tok::All;
      ++pos_;
      const Token& v = expect(Tok::Ident, "a variable");
      std::optional<Term> bound;
      if (accept(Tok::Lt)) bound = sum();
      expect(Tok::Dot, "'.'");
      Formula body = implication();
      try {
        return universal ? Formula::forall(v.text, bound, body) : Formula::exists(v.text, bound, body);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), v.pos);
      }
    }
    return primary();
  }

  Formula primary() {
    if (accept(Tok::Def)) {
      expect(Tok::LParen, "'('");
      Term t = sum();
      expect(Tok::RParen, "')'");
      return Formula::defined(t);
    }
    if (at(Tok::PlusKw) || at(Tok::TimesKw)) {
      const bool additive = peek().kind == Tok::PlusKw;
      ++pos_;
      expect(Tok::LParen, "'('");
      Term a = sum();
      expect(Tok::Comma, "','");
      Term b = sum();
      expect(Tok::Comma, "','");
      Term c = sum();
      expect(Tok::RParen, "')'");
      return additive ? Formula::plus_atom(a, b, c) : Formula::times_atom(a, b, c);
    }
    if (at(Tok::LParen)) {
      // Either a parenthesized term starting a relation or a parenthesized formula.
      const std::size_t saved = pos_;
      try {
        Term lhs = sum();
        if (at(Tok::Eq) || at(Tok::Lt)) return relation(lhs);
      } catch (const ParseError&) {
      }
      pos_ = saved;
      expect(Tok::LParen, "'('");
      Formula f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    Term lhs = sum();
    return relation(lhs);
  }

  Formula relation(const Term& lhs) {
    if (accept(Tok::Eq)) return Formula::eq(lhs, sum());
    if (accept(Tok::Lt)) return Formula::lt(lhs, sum());
    const Token& t = peek();
    throw ParseError("expected '=' or '<'" + (t.kind == Tok::End ? std::string() : ", got '" + t.text + "'"), t.pos);
  }

  Term sum() {
    Term t = product();
    while (accept(Tok::Plus)) t = Term::sum(t, product());
    return t;
  }

  Term product() {
    Term t = atom_term();
    while (accept(Tok::Star)) t = Term::prod(t, atom_term());
    return t;
  }

  Term atom_term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: ++pos_; return Term::var(t.text);
      case Tok::Zero: ++pos_; return Term::zero();
      case Tok::One: ++pos_; return Term::one();
      case Tok::Top: ++pos_; return Term::top();
      case Tok::Succ: {
        ++pos_;
        expect(Tok::LParen, "'('");
        Term inner = sum();
        expect(Tok::RParen, "')'");
        return Term::succ(inner);
      }
      case Tok::LParen: {
        ++pos_;
        Term inner = sum();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError(t.kind == Tok::End ? "expected a term, got end of input" : "expected a term, got '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_to_end(); }
Term parse_term(std::string_view text) { return Parser(text).term_to_end(); }

std::vector<Formula> parse_corpus(std::string_view text) {
  std::vector<Formula> out;
  std::size_t line_start = 0;
  std::size_t line_no = 1;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(line_start, end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) {
      try {
        out.push_back(parse_formula(line));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_start + e.position());
      }
    }
    if (end == text.size()) break;
    line_start = end + 1;
    ++line_no;
  }
  return out;
}

std::vector<Formula> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_corpus(buffer.str());
}

}  // namespace fa
