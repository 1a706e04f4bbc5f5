#include "galoispts/function.h"

#include <stdexcept>
#include <unordered_map>

namespace galoispts::algebra {

struct Function::Node {
  enum class Op { kPoly, kConst, kAdd, kSub, kNeg, kMul, kDiv, kPow };
  Op op;
  std::shared_ptr<const Node> a, b;
  std::optional<MultiPoly> poly;
  std::string label;
  const Field* field = nullptr;
  Elem value = 0;
  int64_t exponent = 0;
};

namespace {

using Node = Function::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr a, NodePtr b = nullptr, int64_t e = 0) {
  if (!a || (op != Node::Op::kNeg && op != Node::Op::kPow && !b)) {
    throw std::invalid_argument("operation on an empty function");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->exponent = e;
  return n;
}

template <typename V, typename Leaf, typename Ops>
struct Evaluator {
  Leaf leaf;
  Ops ops;
  std::unordered_map<const Node*, V> memo;

  V run(const Node* n) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    V r = compute(n);
    memo.emplace(n, r);
    return r;
  }

  V compute(const Node* n) {
    switch (n->op) {
      case Node::Op::kPoly: return leaf.poly(*n->poly);
      case Node::Op::kConst: return leaf.constant(n->value);
      case Node::Op::kAdd: return ops.add(run(n->a.get()), run(n->b.get()));
      case Node::Op::kSub: return ops.sub(run(n->a.get()), run(n->b.get()));
      case Node::Op::kNeg: return ops.neg(run(n->a.get()));
      case Node::Op::kMul: return ops.mul(run(n->a.get()), run(n->b.get()));
      case Node::Op::kDiv: return ops.div(run(n->a.get()), run(n->b.get()));
      case Node::Op::kPow: return ops.pow(run(n->a.get()), n->exponent);
    }
    throw std::logic_error("unknown node");
  }
};

using OptFelt = std::optional<Felt>;

struct FeltLeaf {
  const std::vector<Felt>* point;
  const Field* target;
  OptFelt poly(const MultiPoly& p) const { return p.eval(*point); }
  OptFelt constant(Elem c) const { return Felt(target, c); }
};

struct FeltOps {
  static OptFelt add(const OptFelt& x, const OptFelt& y) { return x && y ? OptFelt(*x + *y) : std::nullopt; }
  static OptFelt sub(const OptFelt& x, const OptFelt& y) { return x && y ? OptFelt(*x - *y) : std::nullopt; }
  static OptFelt neg(const OptFelt& x) { return x ? OptFelt(-*x) : std::nullopt; }
  static OptFelt mul(const OptFelt& x, const OptFelt& y) { return x && y ? OptFelt(*x * *y) : std::nullopt; }
  static OptFelt div(const OptFelt& x, const OptFelt& y) {
    if (!x || !y || y->is_zero()) return std::nullopt;
    return *x / *y;
  }
  static OptFelt pow(const OptFelt& x, int64_t e) {
    if (!x || (e < 0 && x->is_zero())) return std::nullopt;
    return x->pow(e);
  }
};

struct SeriesLeaf {
  const std::vector<Series>* coords;
  const Field* target;
  Series poly(const MultiPoly& p) const { return p.eval(*coords); }
  Series constant(Elem c) const { return Series::constant(target, c); }
};

struct SeriesOps {
  static Series add(const Series& x, const Series& y) { return x + y; }
  static Series sub(const Series& x, const Series& y) { return x - y; }
  static Series neg(const Series& x) { return -x; }
  static Series mul(const Series& x, const Series& y) { return x * y; }
  static Series div(const Series& x, const Series& y) { return x / y; }
  static Series pow(const Series& x, int64_t e) { return x.pow(e); }
};

std::string render(const Node* n) {
  switch (n->op) {
    case Node::Op::kPoly: return n->label.empty() ? "(" + n->poly->str() + ")" : n->label;
    case Node::Op::kConst: return n->field->format(n->value);
    case Node::Op::kAdd: return "(" + render(n->a.get()) + " + " + render(n->b.get()) + ")";
    case Node::Op::kSub: return "(" + render(n->a.get()) + " - " + render(n->b.get()) + ")";
    case Node::Op::kNeg: return "-" + render(n->a.get());
    case Node::Op::kMul: return render(n->a.get()) + "*" + render(n->b.get());
    case Node::Op::kDiv: return render(n->a.get()) + "/" + render(n->b.get());
    case Node::Op::kPow: return render(n->a.get()) + "^" + std::to_string(n->exponent);
  }
  return "?";
}

}  // namespace

Function Function::poly(MultiPoly p, std::string label) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::kPoly;
  n->field = p.field();
  n->poly = std::move(p);
  n->label = std::move(label);
  return Function(n);
}

Function Function::constant(const Field* f, Elem c) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::kConst;
  n->field = f;
  n->value = c;
  return Function(n);
}

Function Function::operator+(const Function& o) const { return Function(make(Node::Op::kAdd, node_, o.node_)); }
Function Function::operator-(const Function& o) const { return Function(make(Node::Op::kSub, node_, o.node_)); }
Function Function::operator-() const { return Function(make(Node::Op::kNeg, node_)); }
Function Function::operator*(const Function& o) const { return Function(make(Node::Op::kMul, node_, o.node_)); }
Function Function::operator/(const Function& o) const { return Function(make(Node::Op::kDiv, node_, o.node_)); }
Function Function::pow(int64_t e) const { return Function(make(Node::Op::kPow, node_, nullptr, e)); }

Function Function::artin_schreier(uint64_t q, ff::Sign sign) const {
  const Function raised = pow(static_cast<int64_t>(q));
  return sign == ff::Sign::kPlus ? raised + *this : raised - *this;
}

std::optional<Felt> Function::value_at(const std::vector<Felt>& point) const {
  if (!node_) throw std::invalid_argument("empty function");
  if (point.empty()) throw std::invalid_argument("empty evaluation point");
  Evaluator<OptFelt, FeltLeaf, FeltOps> ev{FeltLeaf{&point, point.front().field()}, FeltOps{}, {}};
  return ev.run(node_.get());
}

Series Function::series_at(const std::vector<Series>& coords) const {
  if (!node_) throw std::invalid_argument("empty function");
  if (coords.empty()) throw std::invalid_argument("empty expansion point");
  Evaluator<Series, SeriesLeaf, SeriesOps> ev{SeriesLeaf{&coords, coords.front().field()}, SeriesOps{}, {}};
  return ev.run(node_.get());
}

std::string Function::str() const { return node_ ? render(node_.get()) : "<empty>"; }

}  // namespace galoispts::algebra
