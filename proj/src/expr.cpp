#include "ringlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "ringlab/util.hpp"

namespace ringlab {

namespace {

enum class Tok { Int, Word, LParen, RParen, Comma, Eq, Plus, Times, Hash, At, End };

struct Token {
  Tok kind;
  int64_t value = 0;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      bump(s_[pos_]);
      ++pos_;
    }
    tok_ = Token{Tok::End, 0, "", line_, col_};
    if (pos_ >= s_.size()) return;
    char c = s_[pos_];
    tok_.line = line_;
    tok_.col = col_;
    // UTF-8 multiplication sign
    if (static_cast<unsigned char>(c) == 0xC3 && pos_ + 1 < s_.size() &&
        static_cast<unsigned char>(s_[pos_ + 1]) == 0x97) {
      pos_ += 2;
      col_ += 1;
      tok_.kind = Tok::Times;
      tok_.text = "x";
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = v * 10 + (s_[pos_] - '0');
        bump(s_[pos_]);
        ++pos_;
      }
      tok_.kind = Tok::Int;
      tok_.value = v;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string w;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        w += s_[pos_];
        bump(s_[pos_]);
        ++pos_;
      }
      tok_.kind = w == "x" ? Tok::Times : Tok::Word;
      tok_.text = w;
      return;
    }
    bump(c);
    ++pos_;
    switch (c) {
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      case ',': tok_.kind = Tok::Comma; break;
      case '=': tok_.kind = Tok::Eq; break;
      case '+': tok_.kind = Tok::Plus; break;
      case '#': tok_.kind = Tok::Hash; break;
      case '@': {
        // a file path: everything up to the closing parenthesis
        tok_.kind = Tok::At;
        std::string path;
        while (pos_ < s_.size() && s_[pos_] != ')') {
          path += s_[pos_];
          bump(s_[pos_]);
          ++pos_;
        }
        while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) {
          path.pop_back();
        }
        tok_.text = path;
        return;
      }
      case '*': tok_.kind = Tok::Times; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_ - 1);
    }
    tok_.text = std::string(1, c);
  }

  void bump(char c) {
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (lex_.peek().kind != Tok::End) fail("trailing input after expression");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex_.peek().line, lex_.peek().col);
  }

  [[noreturn]] void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.col);
  }

  void expect(Tok t, const char* what) {
    if (lex_.peek().kind != t) fail(std::string("expected ") + what);
    lex_.take();
  }

  int64_t integer() {
    if (lex_.peek().kind != Tok::Int) fail("expected an integer");
    return lex_.take().value;
  }

  std::vector<int64_t> int_list() {
    std::vector<int64_t> out{integer()};
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      out.push_back(integer());
    }
    return out;
  }

  ExprPtr expr() {
    ExprPtr first = term();
    if (lex_.peek().kind != Tok::Times) return first;
    auto prod = std::make_shared<RingExpr>();
    prod->kind = RingExpr::Kind::Product;
    prod->children.push_back(first);
    while (lex_.peek().kind == Tok::Times) {
      lex_.take();
      prod->children.push_back(term());
    }
    return prod;
  }

  void twist(RingExpr& e) {
    if (lex_.peek().kind != Tok::Word || lex_.peek().text != "s") fail("expected s=");
    lex_.take();
    expect(Tok::Eq, "'='");
    if (lex_.peek().kind == Tok::Hash) {
      lex_.take();
      e.s_is_index = true;
    }
    e.s = integer();
  }

  GroupExpr group_term() {
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      GroupExpr g = group();
      expect(Tok::RParen, "')'");
      return g;
    }
    if (lex_.peek().kind != Tok::Word) fail("expected a group constructor");
    Token t = lex_.take();
    GroupExpr g;
    if (t.text == "C" || t.text == "D") {
      g.kind = t.text == "C" ? GroupExpr::Kind::Cyclic : GroupExpr::Kind::Dihedral;
      expect(Tok::LParen, "'('");
      g.n = integer();
      expect(Tok::RParen, "')'");
    } else if (t.text == "S3") {
      g.kind = GroupExpr::Kind::Sym3;
    } else {
      fail_at(t, "unknown group constructor '" + t.text + "'");
    }
    return g;
  }

  GroupExpr group() {
    GroupExpr first = group_term();
    if (lex_.peek().kind != Tok::Times) return first;
    GroupExpr prod;
    prod.kind = GroupExpr::Kind::Product;
    prod.factors.push_back(first);
    while (lex_.peek().kind == Tok::Times) {
      lex_.take();
      prod.factors.push_back(group_term());
    }
    return prod;
  }

  AlgExpr alg() {
    if (lex_.peek().kind != Tok::Word) fail("expected an algebra constructor");
    Token t = lex_.take();
    AlgExpr a;
    if (t.text == "Z" || t.text == "DN" || t.text == "UT2") {
      a.kind = t.text == "Z" ? AlgExpr::Kind::Z
                             : (t.text == "DN" ? AlgExpr::Kind::DN : AlgExpr::Kind::UT2);
      expect(Tok::LParen, "'('");
      a.a = integer();
      expect(Tok::RParen, "')'");
    } else if (t.text == "GF") {
      a.kind = AlgExpr::Kind::GF;
      expect(Tok::LParen, "'('");
      a.a = integer();
      expect(Tok::Comma, "','");
      a.b = integer();
      expect(Tok::RParen, "')'");
    } else if (t.text == "ALG") {
      a.kind = AlgExpr::Kind::File;
      expect(Tok::LParen, "'('");
      if (lex_.peek().kind != Tok::At) fail("expected '@path'");
      a.path = lex_.take().text;
      expect(Tok::RParen, "')'");
    } else {
      fail_at(t, "unknown algebra constructor '" + t.text + "'");
    }
    return a;
  }

  ExprPtr term() {
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      ExprPtr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (lex_.peek().kind != Tok::Word) fail("expected a ring constructor");
    Token t = lex_.take();
    auto e = std::make_shared<RingExpr>();
    const std::string& w = t.text;

    if (w == "Z") {
      e->kind = RingExpr::Kind::Z;
      expect(Tok::LParen, "'('");
      e->n = integer();
      expect(Tok::RParen, "')'");
    } else if (w == "GF") {
      e->kind = RingExpr::Kind::GF;
      expect(Tok::LParen, "'('");
      e->n = integer();
      expect(Tok::Comma, "','");
      e->k = integer();
      expect(Tok::RParen, "')'");
    } else if (w == "M" || w == "T") {
      e->kind = w == "M" ? RingExpr::Kind::Matrix : RingExpr::Kind::Tri;
      expect(Tok::LParen, "'('");
      e->n = integer();
      expect(Tok::Comma, "','");
      e->children.push_back(expr());
      expect(Tok::RParen, "')'");
    } else if (w == "K") {
      e->kind = RingExpr::Kind::K;
      expect(Tok::LParen, "'('");
      e->children.push_back(expr());
      expect(Tok::Comma, "','");
      twist(*e);
      expect(Tok::RParen, "')'");
    } else if (w == "MS") {
      e->kind = RingExpr::Kind::MS;
      expect(Tok::LParen, "'('");
      e->n = integer();
      expect(Tok::Comma, "','");
      e->children.push_back(expr());
      expect(Tok::Comma, "','");
      twist(*e);
      expect(Tok::RParen, "')'");
    } else if (w == "GR") {
      e->kind = RingExpr::Kind::GR;
      expect(Tok::LParen, "'('");
      e->children.push_back(expr());
      expect(Tok::Comma, "','");
      e->group = group();
      expect(Tok::RParen, "')'");
    } else if (w == "END") {
      e->kind = RingExpr::Kind::END;
      expect(Tok::LParen, "'('");
      while (true) {
        if (lex_.peek().kind != Tok::Word || lex_.peek().text != "C") {
          fail("END expects a sum of cyclic groups C(d)");
        }
        lex_.take();
        expect(Tok::LParen, "'('");
        e->dlist.push_back(integer());
        expect(Tok::RParen, "')'");
        if (lex_.peek().kind != Tok::Plus) break;
        lex_.take();
      }
      expect(Tok::RParen, "')'");
    } else if (w == "IDZ" || w == "QUO") {
      e->kind = w == "IDZ" ? RingExpr::Kind::IDZ : RingExpr::Kind::QUO;
      expect(Tok::LParen, "'('");
      e->children.push_back(expr());
      expect(Tok::Comma, "','");
      e->gens = int_list();
      expect(Tok::RParen, "')'");
    } else if (w == "TEN") {
      e->kind = RingExpr::Kind::TEN;
      expect(Tok::LParen, "'('");
      e->alg1 = alg();
      expect(Tok::Comma, "','");
      e->alg2 = alg();
      expect(Tok::RParen, "')'");
    } else if (w == "MOR") {
      e->kind = RingExpr::Kind::MOR;
      expect(Tok::LParen, "'('");
      if (lex_.peek().kind != Tok::At) fail("MOR expects '@path'");
      e->path = lex_.take().text;
      expect(Tok::RParen, "')'");
    } else {
      fail_at(t, "unknown ring constructor '" + w + "'");
    }
    return e;
  }

  Lexer lex_;
};

std::string print_alg(const AlgExpr& a) {
  switch (a.kind) {
    case AlgExpr::Kind::Z: return "Z(" + std::to_string(a.a) + ")";
    case AlgExpr::Kind::GF:
      return "GF(" + std::to_string(a.a) + "," + std::to_string(a.b) + ")";
    case AlgExpr::Kind::DN: return "DN(" + std::to_string(a.a) + ")";
    case AlgExpr::Kind::UT2: return "UT2(" + std::to_string(a.a) + ")";
    case AlgExpr::Kind::File: return "ALG(@" + a.path + ")";
  }
  return "?";
}

bool alg_equal(const AlgExpr& a, const AlgExpr& b) {
  return a.kind == b.kind && a.a == b.a && a.b == b.b && a.path == b.path;
}

int64_t group_order_of(const GroupExpr& g) {
  switch (g.kind) {
    case GroupExpr::Kind::Cyclic: return g.n;
    case GroupExpr::Kind::Dihedral: return 2 * g.n;
    case GroupExpr::Kind::Sym3: return 6;
    case GroupExpr::Kind::Product: {
      int64_t o = 1;
      for (const auto& f : g.factors) o *= group_order_of(f);
      return o;
    }
  }
  return 1;
}

int alg_rank_of(const AlgExpr& a) {
  switch (a.kind) {
    case AlgExpr::Kind::Z: return 1;
    case AlgExpr::Kind::GF: return static_cast<int>(a.b);
    case AlgExpr::Kind::DN: return 2;
    case AlgExpr::Kind::UT2: return 3;
    case AlgExpr::Kind::File: return build_algebra(a).rank;
  }
  return 1;
}

int64_t alg_modulus_of(const AlgExpr& a) {
  switch (a.kind) {
    case AlgExpr::Kind::Z:
    case AlgExpr::Kind::DN:
    case AlgExpr::Kind::UT2:
    case AlgExpr::Kind::GF: return a.a;
    case AlgExpr::Kind::File: return build_algebra(a).modulus;
  }
  return 0;
}

}  // namespace

bool group_equal(const GroupExpr& a, const GroupExpr& b) {
  if (a.kind != b.kind || a.n != b.n || a.factors.size() != b.factors.size()) return false;
  for (size_t i = 0; i < a.factors.size(); ++i) {
    if (!group_equal(a.factors[i], b.factors[i])) return false;
  }
  return true;
}

bool expr_equal(const RingExpr& a, const RingExpr& b) {
  if (a.kind != b.kind || a.n != b.n || a.k != b.k || a.s != b.s ||
      a.s_is_index != b.s_is_index || a.dlist != b.dlist || a.gens != b.gens ||
      a.path != b.path || a.children.size() != b.children.size()) {
    return false;
  }
  if (!group_equal(a.group, b.group)) return false;
  if (!alg_equal(a.alg1, b.alg1) || !alg_equal(a.alg2, b.alg2)) return false;
  for (size_t i = 0; i < a.children.size(); ++i) {
    if (!expr_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_group(const GroupExpr& g) {
  switch (g.kind) {
    case GroupExpr::Kind::Cyclic: return "C(" + std::to_string(g.n) + ")";
    case GroupExpr::Kind::Dihedral: return "D(" + std::to_string(g.n) + ")";
    case GroupExpr::Kind::Sym3: return "S3";
    case GroupExpr::Kind::Product: {
      std::vector<std::string> parts;
      for (const auto& f : g.factors) parts.push_back(print_group(f));
      return join(parts, " x ");
    }
  }
  return "?";
}

std::string print_expr(const RingExpr& e) {
  using K = RingExpr::Kind;
  auto child = [&](size_t i) {
    const RingExpr& c = *e.children[i];
    std::string s = print_expr(c);
    return c.kind == K::Product ? "(" + s + ")" : s;
  };
  auto twist_str = [&] {
    return std::string(", s=") + (e.s_is_index ? "#" : "") + std::to_string(e.s);
  };
  switch (e.kind) {
    case K::Z: return "Z(" + std::to_string(e.n) + ")";
    case K::GF: return "GF(" + std::to_string(e.n) + "," + std::to_string(e.k) + ")";
    case K::Product: {
      std::vector<std::string> parts;
      for (size_t i = 0; i < e.children.size(); ++i) parts.push_back(child(i));
      return join(parts, " x ");
    }
    case K::Matrix: return "M(" + std::to_string(e.n) + ", " + child(0) + ")";
    case K::Tri: return "T(" + std::to_string(e.n) + ", " + child(0) + ")";
    case K::K: return "K(" + child(0) + twist_str() + ")";
    case K::MS: return "MS(" + std::to_string(e.n) + ", " + child(0) + twist_str() + ")";
    case K::GR: return "GR(" + child(0) + ", " + print_group(e.group) + ")";
    case K::END: {
      std::vector<std::string> parts;
      for (int64_t d : e.dlist) parts.push_back("C(" + std::to_string(d) + ")");
      return "END(" + join(parts, "+") + ")";
    }
    case K::IDZ:
    case K::QUO: {
      std::vector<std::string> parts;
      for (int64_t g : e.gens) parts.push_back(std::to_string(g));
      return std::string(e.kind == K::IDZ ? "IDZ(" : "QUO(") + child(0) + ", " +
             join(parts, ", ") + ")";
    }
    case K::TEN: return "TEN(" + print_alg(e.alg1) + ", " + print_alg(e.alg2) + ")";
    case K::MOR: return "MOR(@" + e.path + ")";
  }
  return "?";
}

uint64_t estimate_order(const RingExpr& e) {
  using K = RingExpr::Kind;
  switch (e.kind) {
    case K::Z: return static_cast<uint64_t>(e.n);
    case K::GF: return sat_pow(static_cast<uint64_t>(e.n), static_cast<uint64_t>(e.k));
    case K::Product: {
      uint64_t o = 1;
      for (const auto& c : e.children) o = sat_mul(o, estimate_order(*c));
      return o;
    }
    case K::Matrix:
      return sat_pow(estimate_order(*e.children[0]), static_cast<uint64_t>(e.n * e.n));
    case K::Tri:
      return sat_pow(estimate_order(*e.children[0]),
                     static_cast<uint64_t>(e.n * (e.n + 1) / 2));
    case K::K: return sat_pow(estimate_order(*e.children[0]), 4);
    case K::MS:
      return sat_pow(estimate_order(*e.children[0]), static_cast<uint64_t>(e.n * e.n));
    case K::GR:
      return sat_pow(estimate_order(*e.children[0]),
                     static_cast<uint64_t>(group_order_of(e.group)));
    case K::END: {
      uint64_t o = 1;
      for (int64_t di : e.dlist) {
        for (int64_t dj : e.dlist) o = sat_mul(o, static_cast<uint64_t>(std::gcd(di, dj)));
      }
      return o;
    }
    case K::IDZ: {
      // the closed ideal is at worst the whole base ring
      uint64_t b = estimate_order(*e.children[0]);
      return sat_mul(b, b);
    }
    case K::QUO: return estimate_order(*e.children[0]);
    case K::TEN: {
      uint64_t c = static_cast<uint64_t>(alg_modulus_of(e.alg1));
      uint64_t rank = static_cast<uint64_t>(alg_rank_of(e.alg1)) *
                      static_cast<uint64_t>(alg_rank_of(e.alg2));
      return sat_pow(c, rank);
    }
    case K::MOR: {
      MoritaData d = morita_from_file(e.path);
      return sat_mul(sat_mul(static_cast<uint64_t>(d.A->order()),
                             static_cast<uint64_t>(d.M.order)),
                     sat_mul(static_cast<uint64_t>(d.N.order),
                             static_cast<uint64_t>(d.B->order())));
    }
  }
  return kOrderSaturated;
}

GroupTable build_group(const GroupExpr& g) {
  switch (g.kind) {
    case GroupExpr::Kind::Cyclic: return group_cyclic(g.n);
    case GroupExpr::Kind::Dihedral: return group_dihedral(g.n);
    case GroupExpr::Kind::Sym3: return group_s3();
    case GroupExpr::Kind::Product: {
      GroupTable acc = build_group(g.factors[0]);
      for (size_t i = 1; i < g.factors.size(); ++i) {
        acc = group_product(acc, build_group(g.factors[i]));
      }
      return acc;
    }
  }
  throw RingError("unreachable group kind");
}

AlgebraPresentation build_algebra(const AlgExpr& a) {
  switch (a.kind) {
    case AlgExpr::Kind::Z: return alg_cyclic(a.a);
    case AlgExpr::Kind::GF: return alg_galois(a.a, static_cast<int>(a.b));
    case AlgExpr::Kind::DN: return alg_dual_numbers(a.a);
    case AlgExpr::Kind::UT2: return alg_upper_tri2(a.a);
    case AlgExpr::Kind::File: return alg_from_file(a.path);
  }
  throw RingError("unreachable algebra kind");
}

RingPtr build_ring(const RingExpr& e, const Limits& lim) {
  uint64_t est = estimate_order(e);
  if (est > static_cast<uint64_t>(lim.construct_cap)) {
    throw CapError("size estimate " +
                   (est == kOrderSaturated ? std::string("overflow") : std::to_string(est)) +
                   " for subexpression '" + print_expr(e) + "' exceeds cap " +
                   std::to_string(lim.construct_cap));
  }
  using K = RingExpr::Kind;
  switch (e.kind) {
    case K::Z: return cyclic_ring(e.n);
    case K::GF: return galois_field(e.n, static_cast<int>(e.k));
    case K::Product: {
      std::vector<RingPtr> factors;
      for (const auto& c : e.children) factors.push_back(build_ring(*c, lim));
      return direct_product(factors, lim);
    }
    case K::Matrix:
      return matrix_ring(static_cast<int>(e.n), build_ring(*e.children[0], lim),
                         MatrixShape::Full, lim);
    case K::Tri:
      return matrix_ring(static_cast<int>(e.n), build_ring(*e.children[0], lim),
                         MatrixShape::UpperTriangular, lim);
    case K::K:
    case K::MS: {
      RingPtr base = build_ring(*e.children[0], lim);
      Index s = e.s_is_index ? static_cast<Index>(e.s) : ring_int(*base, e.s);
      return formal_matrix_s(base, s, static_cast<int>(e.kind == K::K ? 2 : e.n),
                             e.kind == K::K ? FormalVariant::K : FormalVariant::Mn, lim);
    }
    case K::GR:
      return group_ring(build_ring(*e.children[0], lim), build_group(e.group), lim).ring;
    case K::END: return endo_ring(AbelianGroupSpec{e.dlist}, lim);
    case K::IDZ: {
      RingPtr base = build_ring(*e.children[0], lim);
      std::vector<Index> gens(e.gens.begin(), e.gens.end());
      return idealization(base, ideal_closure(*base, gens), lim);
    }
    case K::QUO: {
      RingPtr base = build_ring(*e.children[0], lim);
      std::vector<Index> gens(e.gens.begin(), e.gens.end());
      return quotient_ring(base, ideal_closure(*base, gens)).ring;
    }
    case K::TEN:
      return tensor_product_algebra(build_algebra(e.alg1), build_algebra(e.alg2), lim);
    case K::MOR: return morita_ring(morita_from_file(e.path, lim), lim).ring;
  }
  throw RingError("unreachable ring kind");
}

}  // namespace ringlab
