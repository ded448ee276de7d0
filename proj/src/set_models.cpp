#include "setcat/set_models.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace setcat {

namespace {

struct HFNode {
  std::vector<HF> children;
  std::size_t rank;
};

std::vector<HFNode>& hf_nodes() {
  static std::vector<HFNode> nodes;
  return nodes;
}

std::map<std::vector<std::size_t>, std::size_t>& hf_index() {
  static std::map<std::vector<std::size_t>, std::size_t> index;
  return index;
}

}  // namespace

HF::HF() : id_(hf_empty().id()) {}

const std::vector<HF>& HF::children() const { return hf_nodes()[id_].children; }
std::size_t HF::rank() const { return hf_nodes()[id_].rank; }

bool operator<(HF a, HF b) {
  if (a.id_ == b.id_) return false;
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  const auto& ca = a.children();
  const auto& cb = b.children();
  if (ca.size() != cb.size()) return ca.size() < cb.size();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == cb[i]) continue;
    return ca[i] < cb[i];
  }
  return false;
}

HF HF::make(std::vector<HF> children) {
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()),
                 children.end());
  std::vector<std::size_t> key;
  for (HF c : children) key.push_back(c.id_);
  auto& index = hf_index();
  auto it = index.find(key);
  if (it != index.end()) return HF(it->second);
  std::size_t rank = 0;
  for (HF c : children) rank = std::max(rank, c.rank() + 1);
  hf_nodes().push_back({std::move(children), rank});
  std::size_t id = hf_nodes().size() - 1;
  index.emplace(std::move(key), id);
  return HF(id);
}

std::string HF::str() const {
  std::string out = "{";
  const auto& cs = children();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ",";
    out += cs[i].str();
  }
  return out + "}";
}

HF hf_empty() { return HF::make({}); }
HF hf_pair(HF x, HF y) { return HF::make({x, y}); }
HF hf_singleton(HF x) { return HF::make({x}); }

HF hf_union(HF x) {
  std::vector<HF> all;
  for (HF c : x.children())
    for (HF g : c.children()) all.push_back(g);
  return HF::make(std::move(all));
}

HF hf_succ(HF x) {
  std::vector<HF> cs = x.children();
  cs.push_back(x);
  return HF::make(std::move(cs));
}

HF hf_kuratowski(HF x, HF y) {
  return hf_pair(hf_singleton(x), hf_pair(x, y));
}

std::vector<HF> ext(HF v) { return v.children(); }
HF int_of(std::vector<HF> members) { return HF::make(std::move(members)); }

bool eps(HF x, HF y) {
  const auto& cs = y.children();
  return std::binary_search(cs.begin(), cs.end(), x);
}

std::vector<HF> universe(std::size_t n) {
  static std::vector<std::vector<HF>> stages{{}};
  while (stages.size() <= n) {
    const auto& prev = stages.back();
    std::vector<HF> next;
    std::size_t count = std::size_t{1} << prev.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::vector<HF> members;
      for (std::size_t i = 0; i < prev.size(); ++i)
        if (mask & (std::size_t{1} << i)) members.push_back(prev[i]);
      next.push_back(HF::make(std::move(members)));
    }
    std::sort(next.begin(), next.end());
    stages.push_back(std::move(next));
  }
  return stages[n];
}

HF canonical_hf(const WStore& store, TreeId w) {
  std::map<TreeId, HF> memo;
  std::function<HF(TreeId)> go = [&](TreeId t) -> HF {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    std::vector<HF> members;
    for (TreeId c : store.children(t)) members.push_back(go(c));
    HF v = HF::make(std::move(members));
    memo.emplace(t, v);
    return v;
  };
  return go(w);
}

std::vector<HF> build_v(const Representation& pi, std::size_t depth) {
  WStore store(PolySig::from_map(pi.pi));
  std::set<HF> out;
  for (TreeId t : wtype_enum(store, depth)) out.insert(canonical_hf(store, t));
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// formulas

struct Term {
  bool is_var = false;
  std::string var;
  HF lit;
};

struct Formula::Node {
  enum class Kind { Eps, Eq, And, Or, Implies, Not, Forall, Exists };
  Kind kind;
  Term t1, t2;                          // Eps, Eq
  std::shared_ptr<const Node> a, b;     // connectives
  std::string var;                      // quantifiers
  std::optional<Term> bound;            // quantifier bound
};

namespace {

using Node = Formula::Node;
using NodePtr = std::shared_ptr<const Node>;

struct Parser {
  const std::string& src;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw CategoryError("syntax error at position " + std::to_string(pos) +
                        ": " + what);
  }
  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool peek(const std::string& s) {
    skip();
    return src.compare(pos, s.size(), s) == 0;
  }
  bool eat(const std::string& s) {
    if (!peek(s)) return false;
    pos += s.size();
    return true;
  }
  void expect(const std::string& s) {
    if (!eat(s)) fail("expected '" + s + "'");
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    if (start == pos) fail("expected an identifier");
    return src.substr(start, pos - start);
  }
  bool at_keyword(const std::string& kw) {
    skip();
    if (src.compare(pos, kw.size(), kw) != 0) return false;
    std::size_t end = pos + kw.size();
    return end >= src.size() ||
           (!std::isalnum(static_cast<unsigned char>(src[end])) &&
            src[end] != '_');
  }
  bool eat_keyword(const std::string& kw) {
    if (!at_keyword(kw)) return false;
    pos += kw.size();
    return true;
  }

  HF literal() {
    expect("{");
    std::vector<HF> members;
    skip();
    if (!eat("}")) {
      members.push_back(literal());
      while (eat(",")) members.push_back(literal());
      expect("}");
    }
    return HF::make(std::move(members));
  }

  Term term() {
    skip();
    Term t;
    if (peek("{")) {
      t.lit = literal();
      return t;
    }
    t.is_var = true;
    t.var = ident();
    return t;
  }

  NodePtr implication() {
    NodePtr left = disjunction();
    if (eat("->")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Implies;
      n->a = left;
      n->b = implication();
      return n;
    }
    return left;
  }
  NodePtr disjunction() {
    NodePtr left = conjunction();
    while (at_keyword("or")) {
      eat_keyword("or");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Or;
      n->a = left;
      n->b = conjunction();
      left = n;
    }
    return left;
  }
  NodePtr conjunction() {
    NodePtr left = unary();
    while (at_keyword("and")) {
      eat_keyword("and");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::And;
      n->a = left;
      n->b = unary();
      left = n;
    }
    return left;
  }
  NodePtr unary() {
    if (eat_keyword("not")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Not;
      n->a = unary();
      return n;
    }
    if (at_keyword("forall") || at_keyword("exists")) {
      bool univ = eat_keyword("forall");
      if (!univ) eat_keyword("exists");
      auto n = std::make_shared<Node>();
      n->kind = univ ? Node::Kind::Forall : Node::Kind::Exists;
      n->var = ident();
      if (eat_keyword("in")) n->bound = term();
      expect(".");
      n->a = implication();
      return n;
    }
    return atom();
  }
  NodePtr atom() {
    if (eat_keyword("eps")) {
      expect("(");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Eps;
      n->t1 = term();
      expect(",");
      n->t2 = term();
      expect(")");
      return n;
    }
    if (eat_keyword("eq")) {
      expect("(");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Eq;
      n->t1 = term();
      expect(",");
      n->t2 = term();
      expect(")");
      return n;
    }
    if (eat("(")) {
      NodePtr inner = implication();
      expect(")");
      return inner;
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Eq;
    n->t1 = term();
    expect("=");
    n->t2 = term();
    return n;
  }
};

std::string term_str(const Term& t) { return t.is_var ? t.var : t.lit.str(); }

std::string node_str(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Eps:
      return "eps(" + term_str(n.t1) + ", " + term_str(n.t2) + ")";
    case Node::Kind::Eq:
      return "eq(" + term_str(n.t1) + ", " + term_str(n.t2) + ")";
    case Node::Kind::And:
      return "(" + node_str(*n.a) + " and " + node_str(*n.b) + ")";
    case Node::Kind::Or:
      return "(" + node_str(*n.a) + " or " + node_str(*n.b) + ")";
    case Node::Kind::Implies:
      return "(" + node_str(*n.a) + " -> " + node_str(*n.b) + ")";
    case Node::Kind::Not:
      return "not " + node_str(*n.a);
    case Node::Kind::Forall:
    case Node::Kind::Exists: {
      std::string head = n.kind == Node::Kind::Forall ? "forall " : "exists ";
      head += n.var;
      if (n.bound) head += " in " + term_str(*n.bound);
      return "(" + head + " . " + node_str(*n.a) + ")";
    }
  }
  return "";
}

bool node_bounded(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Eps:
    case Node::Kind::Eq:
      return true;
    case Node::Kind::Not:
      return node_bounded(*n.a);
    case Node::Kind::And:
    case Node::Kind::Or:
    case Node::Kind::Implies:
      return node_bounded(*n.a) && node_bounded(*n.b);
    case Node::Kind::Forall:
    case Node::Kind::Exists:
      return n.bound.has_value() && node_bounded(*n.a);
  }
  return true;
}

void collect_free(const Node& n, std::set<std::string>& bound,
                  std::set<std::string>& free) {
  auto visit_term = [&](const Term& t) {
    if (t.is_var && !bound.count(t.var)) free.insert(t.var);
  };
  switch (n.kind) {
    case Node::Kind::Eps:
    case Node::Kind::Eq:
      visit_term(n.t1);
      visit_term(n.t2);
      return;
    case Node::Kind::Not:
      collect_free(*n.a, bound, free);
      return;
    case Node::Kind::And:
    case Node::Kind::Or:
    case Node::Kind::Implies:
      collect_free(*n.a, bound, free);
      collect_free(*n.b, bound, free);
      return;
    case Node::Kind::Forall:
    case Node::Kind::Exists: {
      if (n.bound) visit_term(*n.bound);
      bool fresh = bound.insert(n.var).second;
      collect_free(*n.a, bound, free);
      if (fresh) bound.erase(n.var);
      return;
    }
  }
}

HF term_value(const Term& t, const Env& env, std::size_t n) {
  if (t.is_var) {
    auto it = env.find(t.var);
    if (it == env.end())
      throw CategoryError("unbound variable '" + t.var + "'");
    return it->second;
  }
  if (t.lit.rank() > n)
    throw CategoryError("literal " + t.lit.str() +
                        " exceeds the rank bound " + std::to_string(n));
  return t.lit;
}

bool node_eval(const Node& nd, Env& env, std::size_t n) {
  switch (nd.kind) {
    case Node::Kind::Eps:
      return eps(term_value(nd.t1, env, n), term_value(nd.t2, env, n));
    case Node::Kind::Eq:
      return term_value(nd.t1, env, n) == term_value(nd.t2, env, n);
    case Node::Kind::And:
      return node_eval(*nd.a, env, n) && node_eval(*nd.b, env, n);
    case Node::Kind::Or:
      return node_eval(*nd.a, env, n) || node_eval(*nd.b, env, n);
    case Node::Kind::Implies:
      return !node_eval(*nd.a, env, n) || node_eval(*nd.b, env, n);
    case Node::Kind::Not:
      return !node_eval(*nd.a, env, n);
    case Node::Kind::Forall:
    case Node::Kind::Exists: {
      std::vector<HF> range =
          nd.bound ? ext(term_value(*nd.bound, env, n)) : universe(n);
      bool universal = nd.kind == Node::Kind::Forall;
      auto saved = env.find(nd.var) != env.end()
                       ? std::optional<HF>(env[nd.var])
                       : std::nullopt;
      bool out = universal;
      for (HF v : range) {
        env[nd.var] = v;
        bool here = node_eval(*nd.a, env, n);
        if (universal && !here) {
          out = false;
          break;
        }
        if (!universal && here) {
          out = true;
          break;
        }
      }
      if (saved)
        env[nd.var] = *saved;
      else
        env.erase(nd.var);
      return out;
    }
  }
  return false;
}

}  // namespace

Formula parse_formula(const std::string& text) {
  Parser p{text};
  NodePtr root = p.implication();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return Formula(root);
}

std::string formula_str(const Formula& phi) { return node_str(phi.node()); }
bool formula_bounded(const Formula& phi) { return node_bounded(phi.node()); }

std::vector<std::string> free_variables(const Formula& phi) {
  std::set<std::string> bound, free;
  collect_free(phi.node(), bound, free);
  return {free.begin(), free.end()};
}

bool eval_formula(const Formula& phi, const Env& env, std::size_t n) {
  Env scratch = env;
  return node_eval(phi.node(), scratch, n);
}

HF hf_parse(const std::string& text) {
  Parser p{text};
  HF v = p.literal();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

// ---------------------------------------------------------------------------
// axiom checkers

namespace {

bool hf_subset(HF x, HF y) {
  for (HF c : x.children())
    if (!eps(c, y)) return false;
  return true;
}

const Formula& need_formula(const AxiomParams& params, const std::string& who) {
  if (!params.formula)
    throw CategoryError(who + " needs a formula parameter");
  return *params.formula;
}

HF need_set(const AxiomParams& params, std::size_t i, const std::string& who) {
  if (params.sets.size() <= i)
    throw CategoryError(who + " needs a set parameter");
  return params.sets[i];
}

bool holds(const Formula& phi, Env env, std::size_t n) {
  return eval_formula(phi, env, n);
}

std::vector<HF> decode_mvss(HF f, std::vector<HF>& domain, std::vector<HF>& range);

}  // namespace

AxiomInstanceReport check_set_axiom(const std::string& name, std::size_t n,
                                    const AxiomParams& params) {
  AxiomInstanceReport rep;
  rep.axiom = name;
  std::vector<HF> v = universe(n);

  if (name == "extensionality") {
    for (HF a : v)
      for (HF b : v)
        if (ext(a) == ext(b) && !(a == b)) {
          rep.status = Status::Fail;
          rep.witnesses = {a, b};
          return rep;
        }
    rep.detail = "sets with equal members coincide throughout V_" +
                 std::to_string(n);
    return rep;
  }

  if (name == "empty") {
    if (std::find(v.begin(), v.end(), hf_empty()) == v.end()) {
      rep.status = Status::Fail;
      rep.detail = "V_" + std::to_string(n) + " is empty";
      return rep;
    }
    rep.witnesses = {hf_empty()};
    return rep;
  }

  if (name == "pairing") {
    for (HF x : universe(n == 0 ? 0 : n - 1))
      for (HF y : universe(n == 0 ? 0 : n - 1)) {
        HF p = hf_pair(x, y);
        if (p.rank() >= n) {
          rep.status = Status::Fail;
          rep.witnesses = {x, y};
          return rep;
        }
      }
    rep.detail = "pairs of V_" + std::to_string(n == 0 ? 0 : n - 1) +
                 " members stay inside V_" + std::to_string(n);
    return rep;
  }

  if (name == "union") {
    for (HF x : v) {
      HF u = hf_union(x);
      if (u.rank() >= n && n > 0) {
        rep.status = Status::Fail;
        rep.witnesses = {x};
        return rep;
      }
      for (HF z : v) {
        bool member = eps(z, u);
        bool should = false;
        for (HF y : ext(x))
          if (eps(z, y)) should = true;
        if (member != should) {
          rep.status = Status::Fail;
          rep.witnesses = {x, z};
          return rep;
        }
      }
    }
    rep.detail = "unions exist and have the right members";
    return rep;
  }

  if (name == "set-induction") {
    const Formula& phi = need_formula(params, name);
    for (HF x : v) {
      bool premise_here = true;
      for (HF y : ext(x))
        if (!holds(phi, {{"x", y}}, n)) premise_here = false;
      if (premise_here && !holds(phi, {{"x", x}}, n)) {
        rep.detail = "vacuous: the inductive premise fails at " + x.str();
        rep.witnesses = {x};
        return rep;
      }
    }
    for (HF x : v)
      if (!holds(phi, {{"x", x}}, n)) {
        rep.status = Status::Fail;
        rep.witnesses = {x};
        rep.detail = "inductive premise holds yet the formula fails";
        return rep;
      }
    rep.detail = "the formula holds on all of V_" + std::to_string(n);
    return rep;
  }

  if (name == "bounded-separation" || name == "full-separation") {
    const Formula& phi = need_formula(params, name);
    if (name == "bounded-separation" && !formula_bounded(phi))
      throw CategoryError("bounded-separation needs a bounded formula");
    HF a = need_set(params, 0, name);
    std::vector<HF> members;
    for (HF x : ext(a))
      if (holds(phi, {{"x", x}}, n)) members.push_back(x);
    HF s = int_of(members);
    for (HF x : ext(a))
      if (eps(x, s) != holds(phi, {{"x", x}}, n)) {
        rep.status = Status::Fail;
        rep.witnesses = {x};
        return rep;
      }
    rep.witnesses = {s};
    rep.detail = "separated set of " + a.str();
    if (name == "full-separation" && !formula_bounded(phi))
      rep.detail += "; unbounded quantifiers relativized to V_" +
                    std::to_string(n);
    return rep;
  }

  if (name == "strong-collection") {
    const Formula& phi = need_formula(params, name);
    HF a = need_set(params, 0, name);
    std::vector<HF> chosen;
    for (HF x : ext(a)) {
      std::optional<HF> least;
      for (HF y : v)
        if (holds(phi, {{"x", x}, {"y", y}}, n)) {
          least = y;
          break;
        }
      if (!least) {
        rep.detail = "vacuous: no witness below rank " + std::to_string(n) +
                     " for " + x.str();
        rep.witnesses = {x};
        return rep;
      }
      chosen.push_back(*least);
    }
    HF b = int_of(chosen);
    for (HF x : ext(a)) {
      bool ok = false;
      for (HF y : ext(b))
        if (holds(phi, {{"x", x}, {"y", y}}, n)) ok = true;
      if (!ok) {
        rep.status = Status::Fail;
        rep.witnesses = {b, x};
        return rep;
      }
    }
    for (HF y : ext(b)) {
      bool ok = false;
      for (HF x : ext(a))
        if (holds(phi, {{"x", x}, {"y", y}}, n)) ok = true;
      if (!ok) {
        rep.status = Status::Fail;
        rep.witnesses = {b, y};
        return rep;
      }
    }
    rep.witnesses = {b};
    rep.detail = "bounding set chosen by least witnesses";
    return rep;
  }

  if (name == "infinity") {
    rep.status = Status::Fail;
    HF chain = hf_empty();
    rep.witnesses = {chain};
    while (hf_succ(chain).rank() < n) {
      chain = hf_succ(chain);
      rep.witnesses.push_back(chain);
    }
    rep.detail = "holds in no finite truncation: every member of V_" +
                 std::to_string(n) +
                 " is finite; the longest successor chain has " +
                 std::to_string(rep.witnesses.size()) + " stages";
    return rep;
  }

  if (name == "power-set") {
    HF x = need_set(params, 0, name);
    std::vector<HF> cs = ext(x);
    std::vector<HF> subsets;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cs.size()); ++mask) {
      std::vector<HF> members;
      for (std::size_t i = 0; i < cs.size(); ++i)
        if (mask & (std::size_t{1} << i)) members.push_back(cs[i]);
      subsets.push_back(int_of(std::move(members)));
    }
    HF p = int_of(std::move(subsets));
    if (p.rank() >= n) {
      rep.status = Status::Fail;
      rep.witnesses = {x};
      rep.detail = "the power set escapes V_" + std::to_string(n);
      return rep;
    }
    for (HF z : v)
      if (eps(z, p) != hf_subset(z, x)) {
        rep.status = Status::Fail;
        rep.witnesses = {z};
        return rep;
      }
    rep.witnesses = {p};
    rep.detail = "full power set of " + x.str() + " of cardinality " +
                 std::to_string(p.children().size());
    return rep;
  }

  if (name == "fullness") {
    HF f = need_set(params, 0, name);
    HF z = fullness_set(f);
    std::vector<HF> domain, range;
    std::vector<HF> mvss = decode_mvss(f, domain, range);
    for (HF c : ext(z))
      if (std::find(mvss.begin(), mvss.end(), c) == mvss.end()) {
        rep.status = Status::Fail;
        rep.witnesses = {c};
        rep.detail = "a member of the full set is not a multi-valued section";
        return rep;
      }
    for (HF m : mvss) {
      bool refined = false;
      for (HF c : ext(z))
        if (hf_subset(c, m)) refined = true;
      if (!refined) {
        rep.status = Status::Fail;
        rep.witnesses = {m};
        rep.detail = "a multi-valued section misses the full set";
        return rep;
      }
    }
    rep.witnesses = {z};
    rep.detail = "full set of " + std::to_string(z.children().size()) +
                 " minimal multi-valued sections";
    return rep;
  }

  throw CategoryError("unknown axiom '" + name + "'");
}

namespace {

// decodes a Kuratowski-encoded function and lists all multi-valued sections
std::vector<HF> decode_mvss(HF f, std::vector<HF>& domain,
                            std::vector<HF>& range) {
  std::map<HF, HF> fn;  // uses operator<
  std::map<std::size_t, HF> by_id;
  for (HF w : ext(f)) {
    const auto& cs = w.children();
    HF x, y;
    if (cs.size() == 1 && cs[0].children().size() == 1) {
      x = y = cs[0].children()[0];
    } else if (cs.size() == 2) {
      HF small = cs[0].children().size() == 1 ? cs[0] : cs[1];
      HF big = cs[0].children().size() == 2 ? cs[0] : cs[1];
      if (small.children().size() != 1 || big.children().size() != 2 ||
          !eps(small.children()[0], big))
        throw CategoryError("not a function encoding: " + w.str());
      x = small.children()[0];
      y = big.children()[0] == x ? big.children()[1] : big.children()[0];
    } else {
      throw CategoryError("not a function encoding: " + w.str());
    }
    auto it = fn.find(x);
    if (it != fn.end() && !(it->second == y))
      throw CategoryError("not a function encoding: duplicate argument " +
                          x.str());
    fn.emplace(x, y);
  }
  domain.clear();
  std::set<HF> rng;
  for (const auto& [x, y] : fn) {
    domain.push_back(x);
    rng.insert(y);
  }
  range.assign(rng.begin(), rng.end());

  std::vector<HF> mvss;
  for (std::size_t mask = 0; mask < (std::size_t{1} << domain.size()); ++mask) {
    std::set<HF> image;
    std::vector<HF> members;
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (mask & (std::size_t{1} << i)) {
        members.push_back(domain[i]);
        image.insert(fn.at(domain[i]));
      }
    if (image == rng) mvss.push_back(int_of(std::move(members)));
  }
  return mvss;
}

}  // namespace

HF fullness_set(HF f) {
  std::vector<HF> domain, range;
  std::vector<HF> mvss = decode_mvss(f, domain, range);
  std::vector<HF> minimal;
  for (HF m : mvss) {
    bool is_min = true;
    for (HF other : mvss)
      if (!(other == m) && hf_subset(other, m)) is_min = false;
    if (is_min) minimal.push_back(m);
  }
  return int_of(std::move(minimal));
}

}  // namespace setcat
