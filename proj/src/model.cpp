#include "groupoidal/model.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "groupoidal/fixtures.hpp"

namespace groupoidal {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'' || c == '|' ||
         c == '+' || c == '~' || c == '^';
}

std::string pos(int line, int col) { return "line " + std::to_string(line) + ", col " + std::to_string(col); }

enum class Tok { Ident, LBrace, RBrace, LParen, RParen, Comma, Eq, Colon, Dot, Arrow, End };

struct Token {
  Tok t;
  std::string text;
  int line, col;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "a name";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Eq: return "'='";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

[[noreturn]] void syntax(int line, int col, const std::string& msg) {
  throw Error(ErrorKind::SyntaxError, pos(line, col) + ": " + msg);
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&] {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') adv();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv();
      continue;
    }
    int l = line, k = col;
    if (c == '"') {
      adv();
      std::string text;
      while (true) {
        if (i >= s.size() || s[i] == '\n') syntax(l, k, "unterminated quoted name");
        if (s[i] == '"') break;
        if (s[i] == '\\' && i + 1 < s.size()) adv();
        text += s[i];
        adv();
      }
      adv();
      out.push_back({Tok::Ident, text, l, k});
      continue;
    }
    if (ident_char(c)) {
      std::string text;
      while (i < s.size() && ident_char(s[i])) {
        text += s[i];
        adv();
      }
      out.push_back({Tok::Ident, text, l, k});
      continue;
    }
    Tok t;
    switch (c) {
      case '{': t = Tok::LBrace; break;
      case '}': t = Tok::RBrace; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case ',': t = Tok::Comma; break;
      case '=': t = Tok::Eq; break;
      case ':': t = Tok::Colon; break;
      case '.': t = Tok::Dot; break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          adv();
          t = Tok::Arrow;
          break;
        }
        [[fallthrough]];
      default: syntax(l, k, std::string("unexpected character '") + c + "'");
    }
    adv();
    out.push_back({t, {}, l, k});
  }
  out.push_back({Tok::End, {}, line, col});
  return out;
}

const std::set<std::string> kKinds = {"finset", "finspace", "map", "groupoid",
                                      "action", "bibundle", "anafunctor", "simplex"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  ModelFile run() {
    ModelFile m;
    while (peek().t != Tok::End) m.decls.push_back(decl());
    return m;
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return t_[std::min(p_ + ahead, t_.size() - 1)]; }
  const Token& expect(Tok t, const char* what = nullptr) {
    const Token& k = peek();
    if (k.t != t)
      syntax(k.line, k.col, std::string("expected ") + (what ? what : tok_name(t)) + ", found " +
                                (k.t == Tok::Ident ? "'" + k.text + "'" : std::string(tok_name(k.t))));
    ++p_;
    return k;
  }
  bool accept(Tok t) {
    if (peek().t != t) return false;
    ++p_;
    return true;
  }
  std::string name(const char* what = "a name") { return expect(Tok::Ident, what).text; }
  void keyword(const char* kw) {
    const Token& k = peek();
    if (k.t != Tok::Ident || k.text != kw) syntax(k.line, k.col, std::string("expected '") + kw + "'");
    ++p_;
  }

  std::vector<std::string> set() {
    std::vector<std::string> out;
    expect(Tok::LBrace);
    if (accept(Tok::RBrace)) return out;
    do out.push_back(name("an element")); while (accept(Tok::Comma));
    expect(Tok::RBrace);
    return out;
  }

  Decl decl() {
    const Token& kw = peek();
    if (kw.t != Tok::Ident || !kKinds.count(kw.text))
      syntax(kw.line, kw.col, "expected a declaration keyword, found " +
                                  (kw.t == Tok::Ident ? "'" + kw.text + "'" : std::string(tok_name(kw.t))));
    ++p_;
    Decl d;
    d.kind = kw.text;
    d.line = kw.line;
    d.col = kw.col;
    d.name = name("a declaration name");
    if (d.kind == "map") {
      expect(Tok::Colon);
      d.args.push_back(name("a domain"));
      expect(Tok::Arrow);
      d.args.push_back(name("a codomain"));
      expect(Tok::LBrace);
      if (!accept(Tok::RBrace)) {
        do {
          std::string a = name("an element");
          expect(Tok::Arrow);
          d.entries.push_back({a, name("an image")});
        } while (accept(Tok::Comma));
        expect(Tok::RBrace);
      }
      return d;
    }
    expect(Tok::Eq);
    if (d.kind == "finset") {
      d.elems = set();
      return d;
    }
    if (d.kind == "finspace") {
      d.elems = set();
      keyword("opens");
      expect(Tok::LBrace);
      if (!accept(Tok::RBrace)) {
        do d.opens.push_back(set()); while (accept(Tok::Comma));
        expect(Tok::RBrace);
      }
      return d;
    }
    d.form = name("a constructor");
    if (d.kind == "action" && (d.form == "right" || d.form == "left") && peek().t != Tok::LParen) {
      d.args.push_back(name("a groupoid"));
      keyword("on");
      d.args.push_back(name("a carrier"));
      keyword("anchor");
      d.args.push_back(name("an anchor map"));
      expect(Tok::LBrace);
      if (!accept(Tok::RBrace)) {
        do {
          std::string a = name("an element");
          expect(Tok::Dot);
          std::string b = name("an element");
          expect(Tok::Arrow);
          d.entries.push_back({a, b, name("an element")});
        } while (accept(Tok::Comma));
        expect(Tok::RBrace);
      }
      return d;
    }
    expect(Tok::LParen);
    if (!accept(Tok::RParen)) {
      do d.args.push_back(name("an argument")); while (accept(Tok::Comma));
      expect(Tok::RParen);
    }
    return d;
  }
};

std::string quote(const std::string& s) {
  bool plain = !s.empty();
  for (char c : s) plain = plain && ident_char(c);
  if (plain) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + quote(xs[i]);
  return out;
}

// evaluation

struct Eval {
  const Env& env;
  const Decl& d;

  [[noreturn]] void fail(ErrorKind k, const std::string& msg) const { throw Error(k, pos(d.line, d.col) + ": " + msg); }

  void arity(std::size_t lo, std::size_t hi) const {
    if (d.args.size() < lo || d.args.size() > hi)
      fail(ErrorKind::SyntaxError, d.form + " takes " + std::to_string(lo) +
                                       (hi != lo ? " to " + std::to_string(hi) : "") + " argument" +
                                       (hi == 1 ? "" : "s") + ", got " + std::to_string(d.args.size()));
  }
  const Value& val(std::size_t i) const {
    const Value* v = env.find(d.args[i]);
    if (!v) fail(ErrorKind::UnresolvedName, "unresolved name '" + d.args[i] + "'");
    return *v;
  }
  template <class T>
  const T& get(std::size_t i, const char* want) const {
    const Value& v = val(i);
    if (!std::holds_alternative<T>(v))
      fail(ErrorKind::TypeMismatch, "'" + d.args[i] + "' is " + value_kind(v) + ", expected " + want);
    return std::get<T>(v);
  }
  Groupoid groupoid(std::size_t i) const {
    const Value& v = val(i);
    if (auto g = std::get_if<Groupoid>(&v)) return *g;
    if (auto o = std::get_if<Obj>(&v)) return unit_groupoid(*o);
    fail(ErrorKind::TypeMismatch, "'" + d.args[i] + "' is " + value_kind(v) + ", expected a groupoid");
  }
  Side side(std::size_t i) const {
    if (d.args[i] == "right") return Side::Right;
    if (d.args[i] == "left") return Side::Left;
    fail(ErrorKind::SyntaxError, "side must be right or left, got '" + d.args[i] + "'");
  }
  [[noreturn]] void unknown_form() const {
    fail(ErrorKind::SyntaxError, "unknown " + d.kind + " constructor '" + d.form + "'");
  }

  int elem(const Obj& x, const std::string& id, const std::string& where) const {
    int k = x.find(id);
    if (k < 0) fail(ErrorKind::SyntaxError, "'" + id + "' is not an element of " + where);
    return k;
  }

  Obj finset() const { return Obj::finset(d.elems); }

  Obj finspace() const {
    Obj pts = Obj::finset(d.elems);
    std::vector<Subset> opens;
    for (const auto& o : d.opens) {
      Subset s(pts.size());
      for (const auto& id : o) s.set(static_cast<std::size_t>(elem(pts, id, d.name)));
      opens.push_back(s);
    }
    return Obj::space_from_opens(d.elems, opens);
  }

  Mor map() const {
    const Obj& dom = get<Obj>(0, "an object");
    const Obj& cod = get<Obj>(1, "an object");
    std::vector<std::string> img(dom.size());
    std::vector<bool> seen(dom.size(), false);
    for (const auto& e : d.entries) {
      int a = elem(dom, e[0], d.args[0]);
      elem(cod, e[1], d.args[1]);
      if (seen[static_cast<std::size_t>(a)]) fail(ErrorKind::SyntaxError, "map " + d.name + " gives '" + e[0] + "' twice");
      seen[static_cast<std::size_t>(a)] = true;
      img[static_cast<std::size_t>(a)] = e[1];
    }
    std::vector<std::pair<std::string, std::string>> assoc;
    for (std::size_t a = 0; a < dom.size(); ++a) {
      if (!seen[a]) fail(ErrorKind::SyntaxError, "map " + d.name + " has no image for '" + dom.id(static_cast<int>(a)) + "'");
      assoc.push_back({dom.id(static_cast<int>(a)), img[a]});
    }
    return Mor::from_ids(dom, cod, assoc);
  }

  Groupoid groupoid_decl() const {
    if (d.form == "cech") {
      arity(1, 1);
      return cech_groupoid(get<Mor>(0, "a map"));
    }
    if (d.form == "unit" || d.form == "pair") {
      arity(1, 1);
      const Obj& x = get<Obj>(0, "an object");
      return d.form == "unit" ? unit_groupoid(x) : pair_groupoid(x);
    }
    if (d.form == "cyclic") {
      arity(1, 2);
      std::size_t n = 0;
      try {
        std::size_t used = 0;
        n = std::stoul(d.args[0], &used);
        if (used != d.args[0].size()) throw std::invalid_argument("");
      } catch (const std::logic_error&) {
        fail(ErrorKind::SyntaxError, "cyclic needs an order, got '" + d.args[0] + "'");
      }
      Backend b = Backend::FinSet;
      if (d.args.size() == 2) {
        if (d.args[1] == "fintop") b = Backend::FinTop;
        else if (d.args[1] != "finset") fail(ErrorKind::SyntaxError, "unknown backend '" + d.args[1] + "'");
      }
      return cyclic_group(n, b);
    }
    if (d.form == "transformation") {
      arity(1, 1);
      return transformation_groupoid(get<Action>(0, "an action"));
    }
    unknown_form();
  }

  Action action_decl() const {
    if (d.form == "canonical" || d.form == "multiplication") {
      arity(2, 2);
      Groupoid g = groupoid(0);
      return d.form == "canonical" ? canonical_action(g, side(1)) : multiplication_action(g, side(1));
    }
    if (d.form == "right" || d.form == "left") {
      Groupoid g = groupoid(0);
      const Obj& x = get<Obj>(1, "an object");
      const Mor& anchor = get<Mor>(2, "a map");
      if (anchor.dom() != x) fail(ErrorKind::BoundaryMismatch, "anchor " + d.args[2] + " does not start at " + d.args[1]);
      if (anchor.cod() != g.G0) fail(ErrorKind::BoundaryMismatch, "anchor " + d.args[2] + " does not land in the objects of " + d.args[0]);
      Side sd = d.form == "right" ? Side::Right : Side::Left;
      std::map<std::pair<int, int>, int> table;
      for (const auto& e : d.entries) {
        const std::string& xs = sd == Side::Right ? e[0] : e[1];
        const std::string& as = sd == Side::Right ? e[1] : e[0];
        int xi = elem(x, xs, d.args[1]), ai = elem(g.G1, as, d.args[0]), yi = elem(x, e[2], d.args[1]);
        if (!table.emplace(std::make_pair(xi, ai), yi).second)
          fail(ErrorKind::SyntaxError, "action " + d.name + " lists " + e[0] + "." + e[1] + " twice");
      }
      return make_action(g, anchor, sd, [&](int xi, int ai) {
        auto it = table.find({xi, ai});
        if (it != table.end()) return it->second;
        if (g.unit(g.src(ai)) == ai) return xi;
        std::string pair = sd == Side::Right ? x.id(xi) + "." + g.G1.id(ai) : g.G1.id(ai) + "." + x.id(xi);
        fail(ErrorKind::SyntaxError, "action " + d.name + " has no entry for " + pair);
      });
    }
    unknown_form();
  }

  Bibundle bibundle_decl() const {
    if (d.form == "equiv") {
      arity(2, 2);
      return cech_equivalence(get<Mor>(0, "a map"), get<Mor>(1, "a map"));
    }
    if (d.form == "cover") {
      arity(1, 1);
      return cover_equivalence(get<Mor>(0, "a map"));
    }
    if (d.form == "unit") {
      arity(1, 1);
      return unit_bibundle(groupoid(0));
    }
    if (d.form == "dual") {
      arity(1, 1);
      return dual(get<Bibundle>(0, "a bibundle"));
    }
    if (d.form == "compose") {
      arity(2, 2);
      return compose_bibundles(get<Bibundle>(0, "a bibundle"), get<Bibundle>(1, "a bibundle")).bib;
    }
    if (d.form == "actions") {
      arity(2, 2);
      return make_bibundle(get<Action>(0, "an action"), get<Action>(1, "an action"));
    }
    unknown_form();
  }

  Anafunctor anafunctor_decl() const {
    if (d.form == "identity") {
      arity(1, 1);
      return identity_anafunctor(groupoid(0));
    }
    if (d.form == "bibundle") {
      arity(1, 1);
      return bibundle_to_anafunctor(get<Bibundle>(0, "a bibundle")).ana;
    }
    if (d.form == "compose") {
      arity(2, 2);
      return compose_anafunctors(get<Anafunctor>(1, "an anafunctor"), get<Anafunctor>(0, "an anafunctor"));
    }
    unknown_form();
  }

  NSimplex simplex_decl() const {
    if (d.form == "point") {
      arity(1, 1);
      return simplex0(groupoid(0));
    }
    if (d.form == "chain") {
      arity(1, 8);
      std::vector<Bibundle> chain;
      for (std::size_t i = 0; i < d.args.size(); ++i) chain.push_back(get<Bibundle>(i, "a bibundle"));
      return chain_simplex(chain);
    }
    if (d.form == "fill") {
      arity(2, 2);
      return horn_fill_inner2(get<Bibundle>(0, "a bibundle"), get<Bibundle>(1, "a bibundle"));
    }
    unknown_form();
  }

  Value run() const {
    if (d.kind == "finset") return finset();
    if (d.kind == "finspace") return finspace();
    if (d.kind == "map") return map();
    if (d.kind == "groupoid") return groupoid_decl();
    if (d.kind == "action") return action_decl();
    if (d.kind == "bibundle") return bibundle_decl();
    if (d.kind == "anafunctor") return anafunctor_decl();
    if (d.kind == "simplex") return simplex_decl();
    fail(ErrorKind::SyntaxError, "unknown declaration kind '" + d.kind + "'");
  }
};

}  // namespace

bool operator==(const Decl& a, const Decl& b) {
  return a.kind == b.kind && a.name == b.name && a.form == b.form && a.args == b.args && a.elems == b.elems &&
         a.opens == b.opens && a.entries == b.entries;
}

const char* value_kind(const Value& v) {
  static const char* names[] = {"an object", "a map", "a groupoid", "an action", "a bibundle", "an anafunctor",
                                "a simplex"};
  return names[v.index()];
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> n = {"PT", "S2", "S3", "SIER", "p2", "p3", "CECH2", "CECH3",
                                             "Z2", "Z4", "SWAP", "EQ23", "EX2"};
  return n;
}

std::optional<Value> builtin(const std::string& name) {
  using namespace fixtures;
  if (name == "PT") return PT();
  if (name == "S2") return S2();
  if (name == "S3") return S3();
  if (name == "SIER") return SIER();
  if (name == "p2") return p2();
  if (name == "p3") return p3();
  if (name == "CECH2") return CECH2();
  if (name == "CECH3") return CECH3();
  if (name == "Z2") return Z2();
  if (name == "Z4") return Z4();
  if (name == "SWAP") return SWAP();
  if (name == "EQ23") return EQ23();
  if (name == "EX2") return EX2();
  return std::nullopt;
}

const Value* Env::find(const std::string& name) const {
  if (auto it = user_.find(name); it != user_.end()) return &it->second;
  if (auto it = builtin_.find(name); it != builtin_.end()) return &it->second;
  auto v = builtin(name);
  if (!v) return nullptr;
  return &builtin_.emplace(name, std::move(*v)).first->second;
}

const Value& Env::get(const std::string& name) const {
  const Value* v = find(name);
  if (!v) throw Error(ErrorKind::UnresolvedName, "unresolved name '" + name + "'");
  return *v;
}

std::vector<std::string> Env::names() const {
  std::vector<std::string> out = order_;
  for (const auto& n : builtin_names())
    if (!user_.count(n)) out.push_back(n);
  return out;
}

void Env::put(const std::string& name, Value v) {
  if (user_.insert_or_assign(name, std::move(v)).second) order_.push_back(name);
}

ModelFile parse_syntax(const std::string& text) { return Parser(lex(text)).run(); }

Env build_env(const ModelFile& m) {
  Env env;
  std::map<std::string, const Decl*> seen;
  for (const auto& d : m.decls) {
    if (auto it = seen.find(d.name); it != seen.end())
      throw Error(ErrorKind::UnresolvedName, pos(d.line, d.col) + ": duplicate name '" + d.name + "', first declared at " +
                                                 pos(it->second->line, it->second->col));
    seen[d.name] = &d;
    try {
      env.put(d.name, Eval{env, d}.run());
    } catch (const Error& e) {
      std::string msg = e.what();
      std::string prefix = std::string(kind_name(e.kind())) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
      if (msg.rfind("line ", 0) == 0) throw;
      throw Error(e.kind(), pos(d.line, d.col) + ": " + d.kind + " " + d.name + ": " + msg, e.witness());
    }
  }
  return env;
}

ModelFile parse_model(const std::string& text) {
  ModelFile m = parse_syntax(text);
  build_env(m);
  return m;
}

std::string serialize(const Decl& d) {
  std::ostringstream o;
  o << d.kind << ' ' << quote(d.name);
  if (d.kind == "map") {
    o << " : " << quote(d.args.at(0)) << " -> " << quote(d.args.at(1)) << " {";
    for (std::size_t i = 0; i < d.entries.size(); ++i)
      o << (i ? ", " : "") << quote(d.entries[i][0]) << " -> " << quote(d.entries[i][1]);
    o << '}';
    return o.str();
  }
  o << " = ";
  if (d.kind == "finset") {
    o << '{' << join(d.elems) << '}';
  } else if (d.kind == "finspace") {
    o << '{' << join(d.elems) << "} opens {";
    for (std::size_t i = 0; i < d.opens.size(); ++i) o << (i ? ", " : "") << '{' << join(d.opens[i]) << '}';
    o << '}';
  } else if (d.kind == "action" && (d.form == "right" || d.form == "left") && d.args.size() == 3) {
    o << d.form << ' ' << quote(d.args[0]) << " on " << quote(d.args[1]) << " anchor " << quote(d.args[2]) << " {";
    for (std::size_t i = 0; i < d.entries.size(); ++i)
      o << (i ? ", " : "") << quote(d.entries[i][0]) << '.' << quote(d.entries[i][1]) << " -> "
        << quote(d.entries[i][2]);
    o << '}';
  } else {
    o << quote(d.form) << '(' << join(d.args) << ')';
  }
  return o.str();
}

std::string serialize(const ModelFile& m) {
  std::string out;
  for (const auto& d : m.decls) out += serialize(d) + "\n";
  return out;
}

Groupoid as_groupoid(const Value& v, const std::string& name) {
  if (auto g = std::get_if<Groupoid>(&v)) return *g;
  if (auto o = std::get_if<Obj>(&v)) return unit_groupoid(*o);
  throw Error(ErrorKind::TypeMismatch, "'" + name + "' is " + value_kind(v) + ", expected a groupoid");
}

}  // namespace groupoidal
