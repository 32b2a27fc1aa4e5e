#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "cadscript/dsl.hpp"

namespace cadscript::dsl {

namespace {

constexpr std::string_view kKeywords[] = {
    "box",      "sphere", "hypar",     "grid",   "union",    "intersect", "difference", "move",
    "delete",   "bake",   "sunstudy",  "undo",   "at",       "on",        "edge",       "random",
    "segments", "name",   "corners",   "thickness", "footprint", "height", "spacing",   "lat",
    "lon",      "date",   "interval",  "cell",   "m",        "cm",
};

constexpr std::string_view kStatementKeywords[] = {"box",  "sphere",    "hypar",    "grid", "union",
                                                   "intersect", "difference", "move", "delete", "bake",
                                                   "sunstudy",  "undo"};

constexpr std::string_view kGrammar = R"(program   := { line } ;
line      := [ statement ] [ comment ] NEWLINE ;
statement := box | sphere | hypar | grid | boolop | move | delete | bake | sunstudy | undo ;
box       := "box" qty qty qty [ place ] [ name ] ;
sphere    := "sphere" qty [ place | edgeplace ] [ "segments" INT ] [ name ] ;
edgeplace := "on" "edge" IDENT ( INT | "random" ) [ FLOAT | "random" ] ;
hypar     := "hypar" qty qty "corners" qty qty qty qty "thickness" qty [ name ] ;
grid      := "grid" INT INT "footprint" qty qty "height" qty "spacing" qty [ name ] ;
boolop    := ( "union" | "intersect" | "difference" ) IDENT IDENT [ name ] ;
move      := "move" IDENT qty qty qty ;
delete    := "delete" IDENT ;
bake      := "bake" IDENT ;
sunstudy  := "sunstudy" "lat" FLOAT "lon" FLOAT "date" DATE [ "interval" INT ] [ "cell" FLOAT ] ;
undo      := "undo" ;
qty       := NUMBER [ "m" | "cm" ] ;
place     := "at" qty qty qty ;
name      := "name" IDENT ;
comment   := "#" { any character except NEWLINE } ;
IDENT     := ( letter | "_" ) { letter | digit | "_" } ;   (keywords are reserved)
NUMBER    := [ "+" | "-" ] ( digits [ "." [ digits ] ] | "." digits ) [ ( "e" | "E" ) [ "+" | "-" ] digits ] ;
INT       := [ "+" | "-" ] digits ;
FLOAT     := NUMBER ;
DATE      := digit digit digit digit "-" digit digit "-" digit digit ;
)";

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::string describe_char(char c) {
  const auto byte = static_cast<unsigned char>(c);
  if (byte >= 0x21 && byte < 0x7f) return fmt::format("'{}'", c);
  return fmt::format("byte 0x{:02x}", byte);
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

Token make_token(TokenKind kind, std::string text, Span span) {
  Token tok;
  tok.kind = kind;
  tok.text = std::move(text);
  tok.span = span;
  return tok;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  TokenizeResult run() {
    TokenizeResult out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '\n') {
        out.tokens.push_back(make_token(TokenKind::newline, "\n", {pos_, pos_ + 1}));
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (is_ident_start(c)) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
        std::string word(src_.substr(start, pos_ - start));
        const TokenKind kind = is_keyword(word) ? TokenKind::keyword : TokenKind::identifier;
        out.tokens.push_back(make_token(kind, std::move(word), {start, pos_}));
      } else if (is_digit(c) || c == '.' || c == '+' || c == '-') {
        if (auto err = lex_number_or_date(out.tokens)) {
          out.error = std::move(err);
          return out;
        }
      } else {
        out.error = LexError{fmt::format("illegal character {} at offset {}", describe_char(c), pos_), pos_};
        return out;
      }
    }
    return out;
  }

 private:
  std::optional<LexError> lex_number_or_date(std::vector<Token>& tokens) {
    const std::size_t start = pos_;
    if (looks_like_date()) {
      const std::string_view text = src_.substr(start, 10);
      pos_ += 10;
      auto date = CivilDate::parse(text);
      if (!date) return LexError{fmt::format("invalid date '{}' at offset {}", text, start), start};
      Token tok = make_token(TokenKind::date, std::string(text), {start, pos_});
      tok.date = date;
      tokens.push_back(std::move(tok));
      return std::nullopt;
    }

    std::size_t p = pos_;
    if (src_[p] == '+' || src_[p] == '-') ++p;
    const std::size_t mantissa = p;
    while (p < src_.size() && is_digit(src_[p])) ++p;
    bool integral = true;
    std::size_t digits = p - mantissa;
    if (p < src_.size() && src_[p] == '.') {
      integral = false;
      ++p;
      const std::size_t frac = p;
      while (p < src_.size() && is_digit(src_[p])) ++p;
      digits += p - frac;
    }
    if (digits == 0) {
      return LexError{fmt::format("illegal character {} at offset {}", describe_char(src_[start]), start), start};
    }
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && is_digit(src_[q])) {
        while (q < src_.size() && is_digit(src_[q])) ++q;
        integral = false;
        p = q;
      }
    }
    const std::size_t number_end = p;

    std::optional<Unit> unit;
    if (p < src_.size() && is_ident_start(src_[p])) {
      std::size_t q = p;
      while (q < src_.size() && is_ident_char(src_[q])) ++q;
      const std::string_view suffix = src_.substr(p, q - p);
      if (suffix == "m") {
        unit = Unit::meters;
      } else if (suffix == "cm") {
        unit = Unit::centimeters;
      } else {
        return LexError{fmt::format("malformed number '{}' at offset {}", src_.substr(start, q - start), start),
                        start};
      }
      p = q;
    } else if (p < src_.size() && (src_[p] == '.' || src_[p] == '+' || src_[p] == '-')) {
      return LexError{fmt::format("malformed number '{}' at offset {}", src_.substr(start, p + 1 - start), start),
                      start};
    }

    // from_chars rejects a leading '+'
    std::string_view digits_text = src_.substr(start, number_end - start);
    if (!digits_text.empty() && digits_text.front() == '+') digits_text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(digits_text.data(), digits_text.data() + digits_text.size(), value);
    if (ec != std::errc{} || ptr != digits_text.data() + digits_text.size() || !std::isfinite(value)) {
      return LexError{
          fmt::format("number '{}' out of range at offset {}", src_.substr(start, number_end - start), start), start};
    }
    Token tok = make_token(TokenKind::number, std::string(src_.substr(start, p - start)), {start, p});
    tok.value = value;
    tok.unit = unit;
    tok.integral = integral;
    tokens.push_back(std::move(tok));
    pos_ = p;
    return std::nullopt;
  }

  bool looks_like_date() const {
    if (pos_ + 10 > src_.size()) return false;
    const std::string_view s = src_.substr(pos_, 10);
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
      if (!is_digit(s[i])) return false;
    }
    if (s[4] != '-' || s[7] != '-') return false;
    return pos_ + 10 == src_.size() || !is_ident_char(src_[pos_ + 10]);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct SyntaxFailure {
  ParseError error;
};

class Parser {
 public:
  Parser(std::string_view src, std::vector<Token> tokens) : src_(src), tokens_(std::move(tokens)) {}

  ParseResult run() {
    Program program;
    try {
      while (pos_ < tokens_.size()) {
        if (peek().kind == TokenKind::newline) {
          ++pos_;
          continue;
        }
        const std::size_t begin = peek().span.begin;
        program.statements.push_back(statement());
        program.spans.push_back({begin, tokens_[pos_ - 1].span.end});
        if (pos_ < tokens_.size()) {
          if (peek().kind != TokenKind::newline) fail("end of line");
          ++pos_;
        }
      }
    } catch (const SyntaxFailure& failure) {
      return {std::nullopt, failure.error};
    }
    return {std::move(program), std::nullopt};
  }

 private:
  [[nodiscard]] bool at_line_end() const { return pos_ >= tokens_.size() || peek().kind == TokenKind::newline; }
  [[nodiscard]] const Token& peek() const { return tokens_[pos_]; }

  [[nodiscard]] bool peek_keyword(std::string_view kw) const {
    return !at_line_end() && peek().kind == TokenKind::keyword && peek().text == kw;
  }

  [[nodiscard]] std::pair<std::size_t, std::size_t> line_col(std::size_t offset) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[nodiscard]] std::string found() const {
    if (at_line_end()) return "end of line";
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::number: return fmt::format("number {}", t.text);
      case TokenKind::date: return fmt::format("date {}", t.text);
      case TokenKind::keyword: return fmt::format("keyword '{}'", t.text);
      default: return fmt::format("'{}'", t.text);
    }
  }

  [[nodiscard]] Span here() const {
    if (pos_ < tokens_.size()) return peek().span;
    return {src_.size(), src_.size()};
  }

  [[noreturn]] void fail(std::string_view expected, std::vector<std::string> alternatives = {}) const {
    const Span span = here();
    const auto [line, col] = line_col(span.begin);
    if (alternatives.empty()) alternatives.emplace_back(expected);
    throw SyntaxFailure{ParseError{ParseErrorKind::syntax,
                                   fmt::format("line {}, column {}: expected {}, found {}", line, col, expected,
                                               found()),
                                   span, std::move(alternatives)}};
  }

  [[noreturn]] void fail_value(const Span& span, std::string_view what) const {
    const auto [line, col] = line_col(span.begin);
    throw SyntaxFailure{ParseError{ParseErrorKind::value, fmt::format("line {}, column {}: {}", line, col, what),
                                   span, {}}};
  }

  void expect_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) fail(fmt::format("'{}'", kw));
    ++pos_;
  }

  std::string identifier(std::string_view role) {
    if (at_line_end() || peek().kind != TokenKind::identifier) {
      if (!at_line_end() && peek().kind == TokenKind::keyword) {
        fail(fmt::format("{} ('{}' is a reserved word)", role, peek().text), {std::string(role)});
      }
      fail(role);
    }
    return tokens_[pos_++].text;
  }

  double quantity(std::string_view role) {
    if (at_line_end() || peek().kind != TokenKind::number) fail(role);
    const Token& tok = tokens_[pos_++];
    std::optional<Unit> unit = tok.unit;
    if (!unit && !at_line_end() && peek().kind == TokenKind::keyword && (peek().text == "m" || peek().text == "cm")) {
      unit = peek().text == "m" ? Unit::meters : Unit::centimeters;
      ++pos_;
    }
    return unit == Unit::centimeters ? tok.value / 100.0 : tok.value;
  }

  double plain_number(std::string_view role) {
    if (at_line_end() || peek().kind != TokenKind::number) fail(role);
    const Token& tok = peek();
    if (tok.unit) fail_value(tok.span, fmt::format("{} takes no unit suffix", role));
    ++pos_;
    return tok.value;
  }

  int integer(std::string_view role) {
    if (at_line_end() || peek().kind != TokenKind::number) fail(role);
    const Token& tok = peek();
    if (!tok.integral || tok.unit) fail(role);
    if (std::abs(tok.value) > static_cast<double>(std::numeric_limits<int>::max())) {
      fail_value(tok.span, fmt::format("{} {} out of range", role, tok.text));
    }
    ++pos_;
    return static_cast<int>(tok.value);
  }

  std::optional<std::string> optional_name() {
    if (!peek_keyword("name")) return std::nullopt;
    ++pos_;
    return identifier("object name");
  }

  Point3 triple(std::string_view role) {
    Point3 p{};
    p[0] = quantity(fmt::format("{} x", role));
    p[1] = quantity(fmt::format("{} y", role));
    p[2] = quantity(fmt::format("{} z", role));
    return p;
  }

  Statement statement() {
    const Token& head = peek();
    if (head.kind != TokenKind::keyword ||
        std::find(std::begin(kStatementKeywords), std::end(kStatementKeywords), head.text) ==
            std::end(kStatementKeywords)) {
      std::vector<std::string> alts(std::begin(kStatementKeywords), std::end(kStatementKeywords));
      fail("a command (box, sphere, hypar, grid, union, intersect, difference, move, delete, bake, sunstudy, undo)",
           std::move(alts));
    }
    const std::string kw = head.text;
    ++pos_;
    if (kw == "box") return box();
    if (kw == "sphere") return sphere();
    if (kw == "hypar") return hypar();
    if (kw == "grid") return grid();
    if (kw == "union") return boolean(geom::BooleanKind::union_op);
    if (kw == "intersect") return boolean(geom::BooleanKind::intersection);
    if (kw == "difference") return boolean(geom::BooleanKind::difference);
    if (kw == "move") {
      Move m;
      m.target = identifier("object to move");
      m.delta[0] = quantity("x offset");
      m.delta[1] = quantity("y offset");
      m.delta[2] = quantity("z offset");
      return m;
    }
    if (kw == "delete") return Delete{identifier("object to delete")};
    if (kw == "bake") return Bake{identifier("object to bake")};
    if (kw == "sunstudy") return sunstudy();
    return Undo{};
  }

  CreateBox box() {
    CreateBox b;
    b.extents[0] = quantity("box width");
    b.extents[1] = quantity("box depth");
    b.extents[2] = quantity("box height");
    if (peek_keyword("at")) {
      ++pos_;
      b.at = At{triple("position")};
    }
    b.name = optional_name();
    return b;
  }

  CreateSphere sphere() {
    CreateSphere s;
    s.radius = quantity("sphere radius");
    if (peek_keyword("at")) {
      ++pos_;
      s.placement = At{triple("position")};
    } else if (peek_keyword("on")) {
      ++pos_;
      expect_keyword("edge");
      OnEdge e;
      e.target = identifier("box to place the sphere on");
      if (peek_keyword("random")) {
        ++pos_;
      } else {
        e.edge = integer("edge index (0-11) or 'random'");
      }
      if (peek_keyword("random")) {
        ++pos_;
        e.random_t = true;
      } else if (!at_line_end() && peek().kind == TokenKind::number) {
        e.t = plain_number("edge parameter");
      }
      s.placement = std::move(e);
    }
    if (peek_keyword("segments")) {
      ++pos_;
      s.segments = integer("segment count");
    }
    s.name = optional_name();
    return s;
  }

  CreateHypar hypar() {
    CreateHypar h;
    h.plan_width = quantity("plan width");
    h.plan_depth = quantity("plan depth");
    expect_keyword("corners");
    for (int i = 0; i < 4; ++i) h.corner_heights[static_cast<std::size_t>(i)] = quantity("corner height");
    expect_keyword("thickness");
    h.thickness = quantity("thickness");
    h.name = optional_name();
    return h;
  }

  CreateGrid grid() {
    CreateGrid g;
    g.rows = integer("row count");
    g.cols = integer("column count");
    expect_keyword("footprint");
    g.footprint_width = quantity("footprint width");
    g.footprint_depth = quantity("footprint depth");
    expect_keyword("height");
    g.height = quantity("building height");
    expect_keyword("spacing");
    g.spacing = quantity("spacing");
    g.name_prefix = optional_name();
    return g;
  }

  BooleanOp boolean(geom::BooleanKind kind) {
    BooleanOp op;
    op.kind = kind;
    op.a = identifier("first operand");
    op.b = identifier("second operand");
    op.name = optional_name();
    return op;
  }

  SunStudy sunstudy() {
    SunStudy s;
    expect_keyword("lat");
    s.latitude = plain_number("latitude in degrees");
    expect_keyword("lon");
    s.longitude = plain_number("longitude in degrees");
    expect_keyword("date");
    if (at_line_end() || peek().kind != TokenKind::date) fail("date (YYYY-MM-DD)");
    s.date = *tokens_[pos_++].date;
    if (peek_keyword("interval")) {
      ++pos_;
      s.interval_min = integer("interval in minutes");
    }
    if (peek_keyword("cell")) {
      ++pos_;
      s.cell_m = quantity("cell size");
    }
    return s;
  }

  std::string_view src_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

struct Printer {
  std::string out;

  void num(double v) {
    out += ' ';
    out += format_number(v);
  }
  void word(std::string_view w) {
    out += ' ';
    out += w;
  }
  void name(const std::optional<std::string>& n) {
    if (n) {
      word("name");
      word(*n);
    }
  }

  void operator()(const CreateBox& b) {
    out += "box";
    for (double v : b.extents) num(v);
    if (b.at) {
      word("at");
      for (double v : b.at->point) num(v);
    }
    name(b.name);
  }
  void operator()(const CreateSphere& s) {
    out += "sphere";
    num(s.radius);
    if (const auto* at = std::get_if<At>(&s.placement)) {
      word("at");
      for (double v : at->point) num(v);
    } else if (const auto* e = std::get_if<OnEdge>(&s.placement)) {
      word("on edge");
      word(e->target);
      if (e->edge) {
        word(std::to_string(*e->edge));
      } else {
        word("random");
      }
      if (e->t) {
        num(*e->t);
      } else if (e->random_t) {
        word("random");
      }
    }
    if (s.segments) {
      word("segments");
      word(std::to_string(*s.segments));
    }
    name(s.name);
  }
  void operator()(const CreateHypar& h) {
    out += "hypar";
    num(h.plan_width);
    num(h.plan_depth);
    word("corners");
    for (double v : h.corner_heights) num(v);
    word("thickness");
    num(h.thickness);
    name(h.name);
  }
  void operator()(const CreateGrid& g) {
    out += fmt::format("grid {} {} footprint", g.rows, g.cols);
    num(g.footprint_width);
    num(g.footprint_depth);
    word("height");
    num(g.height);
    word("spacing");
    num(g.spacing);
    name(g.name_prefix);
  }
  void operator()(const BooleanOp& op) {
    out += op.kind == geom::BooleanKind::union_op       ? "union"
           : op.kind == geom::BooleanKind::intersection ? "intersect"
                                                        : "difference";
    word(op.a);
    word(op.b);
    name(op.name);
  }
  void operator()(const Move& m) {
    out += "move";
    word(m.target);
    for (double v : m.delta) num(v);
  }
  void operator()(const Delete& d) { out += "delete " + d.target; }
  void operator()(const Bake& b) { out += "bake " + b.target; }
  void operator()(const SunStudy& s) {
    out += "sunstudy lat";
    num(s.latitude);
    word("lon");
    num(s.longitude);
    word("date");
    word(s.date.to_string());
    word("interval");
    word(std::to_string(s.interval_min));
    word("cell");
    num(s.cell_m);
  }
  void operator()(const Undo&) { out += "undo"; }
};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) != std::end(kKeywords);
}

TokenizeResult tokenize(std::string_view source) { return Lexer(source).run(); }

ParseResult parse(std::string_view source) {
  TokenizeResult lexed = tokenize(source);
  if (!lexed.ok()) {
    const LexError& e = *lexed.error;
    return {std::nullopt, ParseError{ParseErrorKind::lex, e.message, {e.offset, e.offset + 1}, {}}};
  }
  return Parser(source, std::move(lexed.tokens)).run();
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  return fmt::format("{}", value);
}

std::string pretty_print(const Statement& statement) {
  Printer p;
  std::visit(p, statement);
  return std::move(p.out);
}

std::string pretty_print(const Program& program) {
  std::string out;
  for (std::size_t i = 0; i < program.statements.size(); ++i) {
    if (i > 0) out += '\n';
    out += pretty_print(program.statements[i]);
  }
  return out;
}

std::string_view grammar_ebnf() { return kGrammar; }

std::string_view statement_keyword(const Statement& s) {
  return std::visit(
      [](const auto& st) -> std::string_view {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, CreateBox>) return "box";
        else if constexpr (std::is_same_v<T, CreateSphere>) return "sphere";
        else if constexpr (std::is_same_v<T, CreateHypar>) return "hypar";
        else if constexpr (std::is_same_v<T, CreateGrid>) return "grid";
        else if constexpr (std::is_same_v<T, BooleanOp>) {
          return st.kind == geom::BooleanKind::union_op       ? "union"
                 : st.kind == geom::BooleanKind::intersection ? "intersect"
                                                              : "difference";
        } else if constexpr (std::is_same_v<T, Move>) return "move";
        else if constexpr (std::is_same_v<T, Delete>) return "delete";
        else if constexpr (std::is_same_v<T, Bake>) return "bake";
        else if constexpr (std::is_same_v<T, SunStudy>) return "sunstudy";
        else return "undo";
      },
      s);
}

}  // namespace cadscript::dsl
