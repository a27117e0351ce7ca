// Recursive-descent parser for the Hamiltonian DSL:
//
//   expr      := ['+'|'-'] term (('+'|'-') term)*
//   term      := factor (('*' | 'ox' | '⊗') factor)*
//   factor    := scalar | generator | bracket | 'adj' '(' expr ')' | '(' expr ')'
//   bracket   := '[' expr ',' expr ']'
//   generator := 'E' '(' int ',' int ')' | 'H' '(' int ')'
//   scalar    := decimal literal, optional trailing 'i'
//
// '#' starts a comment that runs to the end of the line.

#include "clim/operator_algebra.hpp"

#include <cctype>
#include <charconv>

namespace clim
{

ParseError::ParseError(const std::string &message, std::size_t position)
    : Error("parse error at offset " + std::to_string(position) + ": " + message), m_position(position)
{
}

namespace
{

enum class Tok
{
  Number,
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Plus,
  Minus,
  Star,
  Tensor,
  End
};

struct Token
{
  Tok kind;
  std::size_t pos;
  std::string_view text;
  cplx value{};
};

class Lexer
{
public:
  explicit Lexer(std::string_view s) : m_s(s) {}

  Token next()
  {
    skip();
    const std::size_t start = m_i;
    if (m_i >= m_s.size())
      return {Tok::End, start, {}};
    const char c = m_s[m_i];
    auto single = [&](Tok t) {
      ++m_i;
      return Token{t, start, m_s.substr(start, 1)};
    };
    switch (c)
    {
    case '(':
      return single(Tok::LParen);
    case ')':
      return single(Tok::RParen);
    case '[':
      return single(Tok::LBracket);
    case ']':
      return single(Tok::RBracket);
    case ',':
      return single(Tok::Comma);
    case '+':
      return single(Tok::Plus);
    case '-':
      return single(Tok::Minus);
    case '*':
      return single(Tok::Star);
    default:
      break;
    }
    if (m_s.substr(m_i, 3) == "\xE2\x8A\x97")
    {
      m_i += 3;
      return {Tok::Tensor, start, m_s.substr(start, 3)};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
    {
      while (m_i < m_s.size() && (std::isalnum(static_cast<unsigned char>(m_s[m_i])) || m_s[m_i] == '_'))
        ++m_i;
      const auto word = m_s.substr(start, m_i - start);
      if (word == "ox")
        return {Tok::Tensor, start, word};
      return {Tok::Ident, start, word};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

private:
  void skip()
  {
    while (m_i < m_s.size())
    {
      const char c = m_s[m_i];
      if (c == '#')
      {
        while (m_i < m_s.size() && m_s[m_i] != '\n')
          ++m_i;
      }
      else if (std::isspace(static_cast<unsigned char>(c)))
        ++m_i;
      else
        break;
    }
  }

  Token number(std::size_t start)
  {
    auto digits = [&] {
      std::size_t n = 0;
      while (m_i < m_s.size() && std::isdigit(static_cast<unsigned char>(m_s[m_i])))
        ++m_i, ++n;
      return n;
    };
    std::size_t n = digits();
    if (m_i < m_s.size() && m_s[m_i] == '.')
    {
      ++m_i;
      n += digits();
    }
    if (n == 0)
      throw ParseError("malformed number", start);
    if (m_i < m_s.size() && (m_s[m_i] == 'e' || m_s[m_i] == 'E'))
    {
      std::size_t save = m_i++;
      if (m_i < m_s.size() && (m_s[m_i] == '+' || m_s[m_i] == '-'))
        ++m_i;
      if (digits() == 0)
        m_i = save;
    }
    const auto literal = m_s.substr(start, m_i - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), v);
    if (ec != std::errc() || ptr != literal.data() + literal.size())
      throw ParseError("malformed number '" + std::string(literal) + "'", start);
    bool imaginary = false;
    if (m_i < m_s.size() && m_s[m_i] == 'i')
    {
      const bool ident_follows = m_i + 1 < m_s.size() &&
                                 (std::isalnum(static_cast<unsigned char>(m_s[m_i + 1])) || m_s[m_i + 1] == '_');
      if (ident_follows)
        throw ParseError("malformed imaginary literal", start);
      imaginary = true;
      ++m_i;
    }
    Token t{Tok::Number, start, m_s.substr(start, m_i - start)};
    t.value = imaginary ? cplx(0.0, v) : cplx(v, 0.0);
    return t;
  }

  std::string_view m_s;
  std::size_t m_i = 0;
};

class Parser
{
public:
  Parser(std::string_view text, const AlgebraSpec &spec) : m_lexer(text), m_spec(spec) { advance(); }

  AbstractOperator parse()
  {
    auto op = expr();
    if (m_tok.kind != Tok::End)
      throw ParseError("unexpected '" + std::string(m_tok.text) + "'", m_tok.pos);
    return op;
  }

private:
  void advance() { m_tok = m_lexer.next(); }

  void expect(Tok kind, const char *what)
  {
    if (m_tok.kind != kind)
      throw ParseError(std::string("expected ") + what, m_tok.pos);
    advance();
  }

  AbstractOperator expr()
  {
    bool negate = false;
    if (m_tok.kind == Tok::Plus || m_tok.kind == Tok::Minus)
    {
      negate = m_tok.kind == Tok::Minus;
      advance();
    }
    AbstractOperator acc = term();
    if (negate)
      acc = -acc;
    while (m_tok.kind == Tok::Plus || m_tok.kind == Tok::Minus)
    {
      const bool minus = m_tok.kind == Tok::Minus;
      advance();
      if (minus)
        acc -= term();
      else
        acc += term();
    }
    return acc;
  }

  AbstractOperator term()
  {
    AbstractOperator acc = factor();
    while (m_tok.kind == Tok::Star || m_tok.kind == Tok::Tensor)
    {
      const Token op = m_tok;
      advance();
      const std::size_t rhs_pos = m_tok.pos;
      AbstractOperator rhs = factor();
      if (op.kind == Tok::Star && acc.degree() > 0 && rhs.degree() > 0)
        throw ParseError("'*' multiplies by scalars only; use 'ox' for the tensor product", rhs_pos);
      acc = tensor(acc, rhs);
    }
    return acc;
  }

  AbstractOperator factor()
  {
    const Token t = m_tok;
    switch (t.kind)
    {
    case Tok::Number:
      advance();
      return AbstractOperator::scalar(t.value);
    case Tok::LParen:
    {
      advance();
      auto inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    case Tok::LBracket:
    {
      advance();
      const std::size_t apos = m_tok.pos;
      auto a = expr();
      expect(Tok::Comma, "',' in commutator bracket");
      const std::size_t bpos = m_tok.pos;
      auto b = expr();
      expect(Tok::RBracket, "']'");
      if (!a.is_homogeneous(1))
        throw ParseError("commutator arguments must be degree-1 elements of the Lie algebra", apos);
      if (!b.is_homogeneous(1))
        throw ParseError("commutator arguments must be degree-1 elements of the Lie algebra", bpos);
      return lie_bracket(m_spec, a, b);
    }
    case Tok::Ident:
      return identifier();
    default:
      if (t.kind == Tok::End)
        throw ParseError("unexpected end of input", t.pos);
      throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  int integer()
  {
    if (m_tok.kind != Tok::Number || m_tok.value.imag() != 0.0 ||
        m_tok.text.find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError("expected a generator index", m_tok.pos);
    const int v = static_cast<int>(m_tok.value.real());
    advance();
    return v;
  }

  AbstractOperator identifier()
  {
    const Token t = m_tok;
    advance();
    if (t.text == "adj")
    {
      expect(Tok::LParen, "'(' after adj");
      auto inner = expr();
      expect(Tok::RParen, "')'");
      return formal_adjoint(inner);
    }
    if (t.text == "E")
    {
      expect(Tok::LParen, "'(' after E");
      const std::size_t kpos = m_tok.pos;
      const int k = integer();
      expect(Tok::Comma, "','");
      const int l = integer();
      expect(Tok::RParen, "')'");
      if (k == l)
        throw ParseError("E(k,k) is not a catalog generator; use H(k)", kpos);
      const auto g = Generator::E(k, l);
      if (!m_spec.contains(g))
        throw ParseError("index out of range in " + g.name() + " for sl_" + std::to_string(m_spec.M()), kpos);
      return AbstractOperator::generator(g);
    }
    if (t.text == "H")
    {
      expect(Tok::LParen, "'(' after H");
      const std::size_t kpos = m_tok.pos;
      const int k = integer();
      expect(Tok::RParen, "')'");
      const auto g = Generator::H(k);
      if (!m_spec.contains(g))
        throw ParseError("index out of range in " + g.name() + " for sl_" + std::to_string(m_spec.M()), kpos);
      return AbstractOperator::generator(g);
    }
    throw ParseError("unknown generator '" + std::string(t.text) + "'", t.pos);
  }

  Lexer m_lexer;
  const AlgebraSpec &m_spec;
  Token m_tok{Tok::End, 0, {}};
};

} // namespace

AbstractOperator parse_hamiltonian(std::string_view text, const AlgebraSpec &spec)
{
  return Parser(text, spec).parse();
}

} // namespace clim
