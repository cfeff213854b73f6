#ifndef GROUPOIDAL_MODEL_HPP
#define GROUPOIDAL_MODEL_HPP

#include <map>
#include <optional>
#include <variant>

#include "groupoidal/nerve.hpp"

// Declarative model files:
//   finset S2 = {a, b}
//   finspace SIER = {0, 1} opens {{}, {1}, {0, 1}}
//   map p2 : S2 -> PT { a -> *, b -> * }
//   groupoid C2 = cech(p2)
//   action A = right Z2 on S2 anchor q { a.t -> b, b.t -> a }
//   bibundle E = equiv(p2, p3)
// '#' starts a comment; blocks may span lines.
namespace groupoidal {

struct Decl {
  std::string kind;  // finset finspace map groupoid action bibundle anafunctor simplex
  std::string name;
  std::string form;  // constructor name; "right"/"left" for action tables; empty for literals
  std::vector<std::string> args;  // map: dom, cod; action table: G, X, anchor
  std::vector<std::string> elems;
  std::vector<std::vector<std::string>> opens;
  std::vector<std::vector<std::string>> entries;  // map: {a, x}; right table {x, g, y}; left {g, x, y}
  int line = 0, col = 0;
};
// positions are ignored
bool operator==(const Decl& a, const Decl& b);
inline bool operator!=(const Decl& a, const Decl& b) { return !(a == b); }

struct ModelFile {
  std::vector<Decl> decls;
};
inline bool operator==(const ModelFile& a, const ModelFile& b) { return a.decls == b.decls; }

using Value = std::variant<Obj, Mor, Groupoid, Action, Bibundle, Anafunctor, NSimplex>;
const char* value_kind(const Value& v);

// User declarations shadow the builtin fixtures.
class Env {
 public:
  const Value& get(const std::string& name) const;  // throws UnresolvedName
  const Value* find(const std::string& name) const;
  bool declared(const std::string& name) const { return user_.count(name) > 0; }
  // user declarations in file order, then the fixtures not shadowed
  std::vector<std::string> names() const;
  void put(const std::string& name, Value v);

 private:
  std::map<std::string, Value> user_;
  std::vector<std::string> order_;
  mutable std::map<std::string, Value> builtin_;
};

const std::vector<std::string>& builtin_names();
std::optional<Value> builtin(const std::string& name);

// syntax only; SyntaxError carries "line L, col C"
ModelFile parse_syntax(const std::string& text);
// syntax plus name resolution and evaluation of every declaration
ModelFile parse_model(const std::string& text);
Env build_env(const ModelFile& m);
std::string serialize(const ModelFile& m);
std::string serialize(const Decl& d);

// a groupoid argument; objects become unit groupoids
Groupoid as_groupoid(const Value& v, const std::string& name);

}  // namespace groupoidal

#endif
