#include "hamse/turtle.h"

#include <cctype>
#include <map>

#include "hamse/error.h"

namespace hamse::rdf {

namespace {

bool local_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

bool valid_local(std::string_view s) {
  if (!s.empty() && s.front() == '-') return false;
  for (char c : s)
    if (!local_char(c)) return false;
  return true;
}

std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string full_iri(const std::string& iri) { return "<" + iri + ">"; }

std::string short_iri(const std::string& iri, const PrefixTable& prefixes) {
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : prefixes)
    if (iri.size() >= entry.second.size() && iri.compare(0, entry.second.size(), entry.second) == 0 &&
        (!best || entry.second.size() > best->second.size()))
      best = &entry;
  if (best) {
    std::string_view local = std::string_view(iri).substr(best->second.size());
    if (valid_local(local)) return best->first + ":" + std::string(local);
  }
  return full_iri(iri);
}

std::string write_term(const Term& t, const PrefixTable* prefixes) {
  auto name = [&](const std::string& iri) { return prefixes ? short_iri(iri, *prefixes) : full_iri(iri); };
  switch (t.kind) {
    case TermKind::Iri: return name(t.value);
    case TermKind::Blank: return "_:" + t.value;
    case TermKind::Literal: {
      std::string out = "\"" + escape_string(t.value) + "\"";
      if (!t.lang.empty())
        out += "@" + t.lang;
      else if (!t.datatype.empty() && t.datatype != kXsd + "string")
        out += "^^" + name(t.datatype);
      return out;
    }
  }
  return {};
}

}  // namespace

std::string serialize_turtle(const TripleGraph& g) {
  const auto& prefixes = g.prefixes();
  std::string out;
  for (const auto& [p, ns] : prefixes) out += "@prefix " + p + ": <" + ns + "> .\n";

  const Term rdf_type = iri(kRdf + "type");
  const auto& triples = g.triples();
  for (auto it = triples.begin(); it != triples.end();) {
    out += "\n" + write_term(it->subject, &prefixes);
    const Term subject = it->subject;
    bool first_pred = true;
    while (it != triples.end() && it->subject == subject) {
      const Term pred = it->predicate;
      out += first_pred ? " " : " ;\n    ";
      first_pred = false;
      out += pred == rdf_type ? "a" : write_term(pred, &prefixes);
      bool first_obj = true;
      while (it != triples.end() && it->subject == subject && it->predicate == pred) {
        out += first_obj ? " " : " , ";
        first_obj = false;
        out += write_term(it->object, &prefixes);
        ++it;
      }
    }
    out += " .\n";
  }
  return out;
}

std::string serialize_ntriples(const TripleGraph& g) {
  std::string out;
  for (const auto& t : g.triples())
    out += write_term(t.subject, nullptr) + " " + write_term(t.predicate, nullptr) + " " +
           write_term(t.object, nullptr) + " .\n";
  return out;
}

namespace {

enum class Tok { IriRef, PName, Blank, String, LangTag, Caret, Number, Boolean, A, Dot, Semi, Comma,
                 Prefix, SparqlPrefix, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;    // IRI, local name, label, string value, tag, lexical form
  std::string prefix;  // PName only
  std::string datatype;
  std::size_t line = 1;
};

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    if (pos_ >= s_.size()) return t;
    char c = s_[pos_];
    if (c == '<') return iri_ref(t);
    if (c == '"' || c == '\'') return string_lit(t, c);
    if (c == '.' && !(pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      t.kind = Tok::Dot;
      return t;
    }
    if (c == ';') { ++pos_; t.kind = Tok::Semi; return t; }
    if (c == ',') { ++pos_; t.kind = Tok::Comma; return t; }
    if (c == '^') {
      if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '^') {
        pos_ += 2;
        t.kind = Tok::Caret;
        return t;
      }
      fail("stray '^'");
    }
    if (c == '@') return at_word(t);
    if (c == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == ':') {
      pos_ += 2;
      t.kind = Tok::Blank;
      t.text = name_chars();
      if (t.text.empty()) fail("empty blank node label");
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.') return number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == ':' || c == '_') return word(t);
    fail(std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_); }

 private:
  void skip_space() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string name_chars() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (local_char(s_[pos_]) || s_[pos_] == '.')) ++pos_;
    // a trailing dot terminates the statement
    while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Token iri_ref(Token& t) {
    std::size_t end = s_.find('>', pos_ + 1);
    if (end == std::string_view::npos) fail("unterminated IRI");
    std::string_view body = s_.substr(pos_ + 1, end - pos_ - 1);
    for (char c : body)
      if (c == ' ' || c == '\n' || c == '<' || c == '"') fail("invalid character in IRI");
    t.kind = Tok::IriRef;
    t.text = std::string(body);
    pos_ = end + 1;
    return t;
  }

  unsigned long hex(std::size_t digits) {
    if (pos_ + digits > s_.size()) fail("truncated escape");
    unsigned long v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = s_[pos_++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= static_cast<unsigned long>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<unsigned long>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v |= static_cast<unsigned long>(c - 'A' + 10);
      else fail("bad hex digit in escape");
    }
    return v;
  }

  Token string_lit(Token& t, char quote) {
    const bool long_form = s_.substr(pos_, 3) == std::string(3, quote);
    pos_ += long_form ? 3 : 1;
    std::string out;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated string");
      char c = s_[pos_];
      if (long_form && s_.substr(pos_, 3) == std::string(3, quote)) {
        pos_ += 3;
        break;
      }
      if (!long_form && c == quote) {
        ++pos_;
        break;
      }
      if (!long_form && c == '\n') fail("newline in string");
      if (c == '\n') ++line_;
      if (c == '\\') {
        if (++pos_ >= s_.size()) fail("unterminated escape");
        char e = s_[pos_++];
        switch (e) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u': append_utf8(out, hex(4)); break;
          case 'U': append_utf8(out, hex(8)); break;
          default: fail(std::string("unknown escape \\") + e);
        }
        continue;
      }
      out += c;
      ++pos_;
    }
    t.kind = Tok::String;
    t.text = std::move(out);
    return t;
  }

  Token at_word(Token& t) {
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
    std::string word(s_.substr(start, pos_ - start));
    if (word == "prefix") {
      t.kind = Tok::Prefix;
    } else if (word == "base") {
      fail("@base is not supported");
    } else if (word.empty()) {
      fail("empty language tag");
    } else {
      t.kind = Tok::LangTag;
      t.text = word;
    }
    return t;
  }

  Token number(Token& t) {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return pos_ - d;
    };
    if (s_[pos_] == '+' || s_[pos_] == '-') ++pos_;
    std::size_t whole = digits();
    std::size_t frac = 0;
    bool has_dot = false, has_exp = false;
    if (pos_ + 1 < s_.size() && s_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      has_dot = true;
      ++pos_;
      frac = digits();
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      has_exp = true;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent");
    }
    if (whole == 0 && frac == 0) fail("malformed number");
    t.kind = Tok::Number;
    t.text = std::string(s_.substr(start, pos_ - start));
    t.datatype = kXsd + (has_exp ? "double" : has_dot ? "decimal" : "integer");
    return t;
  }

  Token word(Token& t) {
    std::size_t start = pos_;
    std::string prefix;
    while (pos_ < s_.size() && local_char(s_[pos_])) ++pos_;
    prefix = std::string(s_.substr(start, pos_ - start));
    if (pos_ < s_.size() && s_[pos_] == ':') {
      ++pos_;
      t.kind = Tok::PName;
      t.prefix = prefix;
      t.text = name_chars();
      return t;
    }
    if (prefix == "a") {
      t.kind = Tok::A;
    } else if (prefix == "true" || prefix == "false") {
      t.kind = Tok::Boolean;
      t.text = prefix;
    } else {
      std::string upper = prefix;
      for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (upper != "PREFIX") fail("unexpected word '" + prefix + "'");
      t.kind = Tok::SparqlPrefix;
    }
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {
    g_ = TripleGraph();
    advance();
  }

  TripleGraph run() {
    while (cur_.kind != Tok::End) {
      if (cur_.kind == Tok::Prefix || cur_.kind == Tok::SparqlPrefix) {
        bool sparql = cur_.kind == Tok::SparqlPrefix;
        advance();
        if (cur_.kind != Tok::PName || !cur_.text.empty()) fail("expected prefix name");
        std::string name = cur_.prefix;
        advance();
        if (cur_.kind != Tok::IriRef) fail("expected namespace IRI");
        prefixes_[name] = cur_.text;
        g_.set_prefix(name, cur_.text);
        advance();
        if (!sparql) expect(Tok::Dot, "'.' after @prefix");
        continue;
      }
      Term subject = subject_term();
      predicate_objects(subject);
      expect(Tok::Dot, "'.' at end of statement");
    }
    return std::move(g_);
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, cur_.line); }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    advance();
  }

  std::string expand(const Token& t) const {
    auto it = prefixes_.find(t.prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + t.prefix + "'");
    return it->second + t.text;
  }

  Term subject_term() {
    Term t;
    if (cur_.kind == Tok::IriRef) t = iri(cur_.text);
    else if (cur_.kind == Tok::PName) t = iri(expand(cur_));
    else if (cur_.kind == Tok::Blank) t = blank(cur_.text);
    else fail("expected subject");
    advance();
    return t;
  }

  Term predicate_term() {
    Term t;
    if (cur_.kind == Tok::A) t = iri(kRdf + "type");
    else if (cur_.kind == Tok::IriRef) t = iri(cur_.text);
    else if (cur_.kind == Tok::PName) t = iri(expand(cur_));
    else fail("expected predicate");
    advance();
    return t;
  }

  Term object_term() {
    Term t;
    switch (cur_.kind) {
      case Tok::IriRef: t = iri(cur_.text); break;
      case Tok::PName: t = iri(expand(cur_)); break;
      case Tok::Blank: t = blank(cur_.text); break;
      case Tok::Number: t = literal(cur_.text, cur_.datatype); break;
      case Tok::Boolean: t = boolean_literal(cur_.text == "true"); break;
      case Tok::String: {
        std::string value = cur_.text;
        advance();
        if (cur_.kind == Tok::LangTag) {
          t = lang_literal(value, cur_.text);
        } else if (cur_.kind == Tok::Caret) {
          advance();
          if (cur_.kind == Tok::IriRef) t = literal(value, cur_.text);
          else if (cur_.kind == Tok::PName) t = literal(value, expand(cur_));
          else fail("expected datatype IRI");
        } else {
          return literal(value);
        }
        break;
      }
      default: fail("expected object");
    }
    advance();
    return t;
  }

  void predicate_objects(const Term& subject) {
    while (true) {
      Term predicate = predicate_term();
      g_.add(subject, predicate, object_term());
      while (cur_.kind == Tok::Comma) {
        advance();
        g_.add(subject, predicate, object_term());
      }
      if (cur_.kind != Tok::Semi) return;
      while (cur_.kind == Tok::Semi) advance();
      if (cur_.kind == Tok::Dot) return;
    }
  }

  Lexer lex_;
  Token cur_;
  std::map<std::string, std::string> prefixes_;
  TripleGraph g_;
};

}  // namespace

TripleGraph parse_turtle(std::string_view text) { return Parser(text).run(); }

}  // namespace hamse::rdf
