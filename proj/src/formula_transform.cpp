#include <cctype>
#include <functional>
#include <limits>
#include <sstream>

#include "esym/errors.hpp"
#include "esym/formula.hpp"

namespace esym {

namespace {

constexpr NodeId kZero = std::numeric_limits<NodeId>::max();

NodeId combine(GraphBuilder& b, NodeKind kind, std::vector<NodeId> children) {
  return kind == NodeKind::sum ? b.sum(std::move(children)) : b.product(std::move(children));
}

NodeId copy_leaf(GraphBuilder& b, const Graph& g, NodeId id) {
  return g.kind(id) == NodeKind::variable ? b.variable(g.variable(id)) : b.constant(g.constant(id));
}

// Rebuilds `g` node by node; `leaf` decides what each leaf becomes and
// `inner` combines mapped children.
template <class Leaf, class Inner>
NodeId rebuild(const Graph& g, Leaf&& leaf, Inner&& inner) {
  std::vector<NodeId> mapped(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) {
    if (g.is_leaf(id)) {
      mapped[id] = leaf(id);
      continue;
    }
    std::vector<NodeId> kids;
    for (NodeId c : g.children(id)) kids.push_back(mapped[c]);
    mapped[id] = inner(id, std::move(kids));
  }
  return mapped[g.output()];
}

NodeId binarize_into(GraphBuilder& b, const Graph& g) {
  return rebuild(
      g, [&](NodeId id) { return copy_leaf(b, g, id); },
      [&](NodeId id, std::vector<NodeId> kids) {
        NodeId acc = kids[0];
        for (std::size_t i = 1; i < kids.size(); ++i) acc = combine(b, g.kind(id), {acc, kids[i]});
        return acc;
      });
}

}  // namespace

Formula binarize(const Formula& f) {
  GraphBuilder b;
  return b.formula(binarize_into(b, f));
}

Circuit binarize(const Circuit& c) {
  GraphBuilder b;
  return b.circuit(binarize_into(b, c));
}

Formula substitute(const Formula& f, const std::map<VarId, Formula>& substitutes) {
  GraphBuilder b;
  const NodeId root = rebuild(
      f,
      [&](NodeId id) {
        if (f.kind(id) == NodeKind::constant) return b.constant(f.constant(id));
        auto it = substitutes.find(f.variable(id));
        if (it == substitutes.end()) throw MissingVariableError("no substitute for variable", f.variable(id));
        return b.graft(it->second);
      },
      [&](NodeId id, std::vector<NodeId> kids) { return combine(b, f.kind(id), std::move(kids)); });
  return b.formula(root);
}

Formula subformula(const Formula& f, NodeId node) {
  if (node >= f.node_count()) throw PreconditionError("node " + std::to_string(node) + " is not in the formula");
  GraphBuilder b;
  return b.formula(b.graft(f, node));
}

Formula restrict(const Formula& f, NodeId node, const Rational& alpha) {
  if (node >= f.node_count()) throw PreconditionError("node " + std::to_string(node) + " is not in the formula");
  GraphBuilder b;
  std::vector<NodeId> mapped(f.node_count());
  for (NodeId id = 0; id <= f.output(); ++id) {
    if (id == node) {
      mapped[id] = b.constant(alpha);
    } else if (f.is_leaf(id)) {
      mapped[id] = copy_leaf(b, f, id);
    } else {
      std::vector<NodeId> kids;
      for (NodeId c : f.children(id)) kids.push_back(mapped[c]);
      mapped[id] = combine(b, f.kind(id), std::move(kids));
    }
  }
  return b.formula(mapped[f.output()]);
}

Formula prune_zeros(const Formula& f) {
  GraphBuilder b;
  const NodeId root = rebuild(
      f,
      [&](NodeId id) {
        if (f.kind(id) == NodeKind::constant && f.constant(id) == 0) return kZero;
        return copy_leaf(b, f, id);
      },
      [&](NodeId id, std::vector<NodeId> kids) {
        std::vector<NodeId> live;
        for (NodeId c : kids) {
          if (c == kZero) {
            if (f.kind(id) == NodeKind::product) return kZero;
          } else {
            live.push_back(c);
          }
        }
        return live.empty() ? kZero : combine(b, f.kind(id), std::move(live));
      });
  return root == kZero ? constant_formula(Rational(0)) : b.formula(root);
}

bool is_zero_leaf(const Formula& f) {
  return f.node_count() == 1 && f.kind(0) == NodeKind::constant && f.constant(0) == 0;
}

Formula abs_constants(const Formula& f) {
  GraphBuilder b;
  const NodeId root = rebuild(
      f,
      [&](NodeId id) {
        if (f.kind(id) == NodeKind::constant) return b.constant(abs(f.constant(id)));
        return b.variable(f.variable(id));
      },
      [&](NodeId id, std::vector<NodeId> kids) { return combine(b, f.kind(id), std::move(kids)); });
  return b.formula(root);
}

Formula unfold(const Circuit& c) {
  GraphBuilder b;
  std::function<NodeId(NodeId)> copy = [&](NodeId id) -> NodeId {
    if (c.is_leaf(id)) return copy_leaf(b, c, id);
    std::vector<NodeId> kids;
    for (NodeId k : c.children(id)) kids.push_back(copy(k));
    return combine(b, c.kind(id), std::move(kids));
  };
  return b.formula(copy(c.output()));
}

bool structurally_equal(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count()) return false;
  for (NodeId id = 0; id < a.node_count(); ++id) {
    if (a.kind(id) != b.kind(id)) return false;
    switch (a.kind(id)) {
      case NodeKind::variable:
        if (a.variable(id) != b.variable(id)) return false;
        break;
      case NodeKind::constant:
        if (a.constant(id) != b.constant(id)) return false;
        break;
      default: {
        const auto ka = a.children(id);
        const auto kb = b.children(id);
        if (!std::equal(ka.begin(), ka.end(), kb.begin(), kb.end())) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// S-expressions

std::string serialize(const Graph& g) {
  std::string out;
  std::vector<std::pair<NodeId, std::size_t>> stack{{g.output(), 0}};
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    if (g.is_leaf(u)) {
      out += g.kind(u) == NodeKind::variable ? "x" + std::to_string(g.variable(u)) : to_string(g.constant(u));
      stack.pop_back();
      continue;
    }
    const auto kids = g.children(u);
    if (next == 0) out += g.kind(u) == NodeKind::sum ? "(+" : "(*";
    if (next < kids.size()) {
      out += ' ';
      const NodeId c = kids[next++];
      stack.emplace_back(c, 0);
      continue;
    }
    out += ')';
    stack.pop_back();
  }
  return out;
}

namespace {

class SexprLexer {
 public:
  explicit SexprLexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  // An atom runs until whitespace or a parenthesis.
  std::string_view atom() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      advance();
    }
    return text_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& expected) {
    const std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw ParseError(line_, column_, expected, found);
  }
  [[noreturn]] void fail_at(std::size_t line, std::size_t column, const std::string& expected,
                            const std::string& found) {
    throw ParseError(line, column, expected, found);
  }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Formula parse_formula(std::string_view text) {
  SexprLexer lex(text);
  GraphBuilder b;
  struct Frame {
    NodeKind kind;
    std::vector<NodeId> children;
    std::size_t line, column;
  };
  std::vector<Frame> stack;
  std::optional<NodeId> root;

  auto attach = [&](NodeId id) {
    if (stack.empty()) {
      root = id;
    } else {
      stack.back().children.push_back(id);
    }
  };

  do {
    const char c = lex.peek();
    if (c == '\0') lex.fail(stack.empty() ? "formula" : "formula or ')'");
    const std::size_t line = lex.line(), column = lex.column();
    if (c == '(') {
      lex.advance();
      const char op = lex.peek();
      if (op != '+' && op != '*') lex.fail("'+' or '*'");
      lex.advance();
      stack.push_back({op == '+' ? NodeKind::sum : NodeKind::product, {}, line, column});
    } else if (c == ')') {
      if (stack.empty()) lex.fail("formula");
      Frame frame = std::move(stack.back());
      if (frame.children.size() < 2) lex.fail("at least two operands before ')'");
      lex.advance();
      stack.pop_back();
      attach(frame.kind == NodeKind::sum ? b.sum(std::move(frame.children)) : b.product(std::move(frame.children)));
    } else {
      const std::string_view tok = lex.atom();
      if (tok.size() > 1 && tok[0] == 'x' && is_digits(tok.substr(1))) {
        const unsigned long long v = std::stoull(std::string(tok.substr(1)));
        if (v > std::numeric_limits<VarId>::max()) lex.fail_at(line, column, "variable index in range", std::string(tok));
        attach(b.variable(static_cast<VarId>(v)));
      } else {
        std::string_view body = tok;
        if (!body.empty() && body[0] == '-') body.remove_prefix(1);
        const auto slash = body.find('/');
        const bool ok = is_digits(body.substr(0, slash)) &&
                        (slash == std::string_view::npos || is_digits(body.substr(slash + 1)));
        if (!ok) lex.fail_at(line, column, "variable 'x<digits>' or rational", "'" + std::string(tok) + "'");
        try {
          attach(b.constant(parse_rational(tok)));
        } catch (const PreconditionError&) {
          lex.fail_at(line, column, "nonzero denominator", "'" + std::string(tok) + "'");
        }
      }
    }
  } while (!stack.empty());

  if (!lex.at_end()) lex.fail("end of input");
  return b.formula(*root);
}

}  // namespace esym
