#pragma once

// Small arithmetic grammar for user-supplied Young functions:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
//   func    := 'ln' | 'abs' | 'exp'

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "hyperorlicz/error.hpp"

namespace hyperorlicz {

class Expression {
 public:
  static Expression parse(std::string_view source) {
    Expression e;
    e.source_ = std::string(source);
    Parser p{source, 0, e.code_};
    p.parse_expr();
    p.skip_ws();
    if (p.pos != source.size()) {
      p.fail("unexpected trailing input");
    }
    return e;
  }

  double operator()(double x) const {
    // Stack depth is bounded by the code length.
    thread_local std::vector<double> stack;
    stack.clear();
    for (const Instr& in : code_) {
      switch (in.op) {
        case Op::push: stack.push_back(in.value); break;
        case Op::var: stack.push_back(x); break;
        case Op::neg: stack.back() = -stack.back(); break;
        case Op::ln: stack.back() = std::log(stack.back()); break;
        case Op::abs: stack.back() = std::abs(stack.back()); break;
        case Op::exp: stack.back() = std::exp(stack.back()); break;
        default: {
          const double rhs = stack.back();
          stack.pop_back();
          double& lhs = stack.back();
          switch (in.op) {
            case Op::add: lhs += rhs; break;
            case Op::sub: lhs -= rhs; break;
            case Op::mul: lhs *= rhs; break;
            case Op::div: lhs /= rhs; break;
            case Op::pow: lhs = std::pow(lhs, rhs); break;
            default: break;
          }
        }
      }
    }
    return stack.back();
  }

  const std::string& source() const { return source_; }

 private:
  enum class Op { push, var, neg, add, sub, mul, div, pow, ln, abs, exp };
  struct Instr {
    Op op;
    double value = 0.0;
  };

  struct Parser {
    std::string_view s;
    std::size_t pos;
    std::vector<Instr>& out;

    [[noreturn]] void fail(const std::string& what) const {
      throw Error(ErrorCode::parse_error,
                  what + " at offset " + std::to_string(pos) + " in '" +
                      std::string(s) + "'");
    }
    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
    }
    bool accept(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    void expect(char c) {
      if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void parse_expr() {
      parse_term();
      for (;;) {
        if (accept('+')) {
          parse_term();
          out.push_back({Op::add});
        } else if (accept('-')) {
          parse_term();
          out.push_back({Op::sub});
        } else {
          return;
        }
      }
    }
    void parse_term() {
      parse_unary();
      for (;;) {
        if (accept('*')) {
          parse_unary();
          out.push_back({Op::mul});
        } else if (accept('/')) {
          parse_unary();
          out.push_back({Op::div});
        } else {
          return;
        }
      }
    }
    void parse_unary() {
      if (accept('-')) {
        parse_unary();
        out.push_back({Op::neg});
      } else if (accept('+')) {
        parse_unary();
      } else {
        parse_power();
      }
    }
    void parse_power() {
      parse_primary();
      if (accept('^')) {
        parse_unary();
        out.push_back({Op::pow});
      }
    }
    void parse_primary() {
      skip_ws();
      if (pos >= s.size()) fail("unexpected end of input");
      const char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        const std::string rest(s.substr(pos));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) fail("malformed number");
        pos += static_cast<std::size_t>(end - rest.c_str());
        out.push_back({Op::push, v});
        return;
      }
      if (accept('(')) {
        parse_expr();
        expect(')');
        return;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t end = pos;
        while (end < s.size() && std::isalpha(static_cast<unsigned char>(s[end])))
          ++end;
        const std::string_view name = s.substr(pos, end - pos);
        pos = end;
        if (name == "x") {
          out.push_back({Op::var});
          return;
        }
        Op op;
        if (name == "ln") {
          op = Op::ln;
        } else if (name == "abs") {
          op = Op::abs;
        } else if (name == "exp") {
          op = Op::exp;
        } else {
          pos -= name.size();
          fail("unknown identifier '" + std::string(name) + "'");
        }
        expect('(');
        parse_expr();
        expect(')');
        out.push_back({op});
        return;
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  };

  std::string source_;
  std::vector<Instr> code_;
};

}  // namespace hyperorlicz
