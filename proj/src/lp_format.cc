// Copyright 2026 The Rankopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rankopt/lp_format.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "rankopt/error.h"

namespace rankopt {

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

const char* SenseText(RowSense s) {
  switch (s) {
    case RowSense::kLessEqual:
      return "<=";
    case RowSense::kGreaterEqual:
      return ">=";
    case RowSense::kEqual:
      return "=";
  }
  return "?";
}

void WriteTerms(std::ostringstream& out,
                const std::vector<std::pair<double, std::string>>& terms) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  bool first = true;
  for (const auto& [c, name] : terms) {
    const double mag = std::abs(c);
    if (c < 0) {
      out << " -";
    } else if (!first) {
      out << " +";
    }
    if (mag != 1.0) out << ' ' << FormatNumber(mag);
    out << ' ' << name;
    first = false;
  }
}

}  // namespace

std::string WriteLpFormat(const MathProgram& p) {
  std::ostringstream out;
  const auto& vars = p.variables();
  if (!p.name().empty()) out << "\\ " << p.name() << '\n';
  out << "Maximize\n obj:";
  std::vector<std::pair<double, std::string>> terms;
  for (const Variable& v : vars) {
    if (v.objective != 0.0) terms.emplace_back(v.objective, v.name);
  }
  WriteTerms(out, terms);
  out << "\nSubject To\n";
  for (int r = 0; r < p.num_rows(); ++r) {
    const Row& row = p.rows()[r];
    terms.clear();
    for (const LinearTerm& t : row.terms) {
      terms.emplace_back(t.coef, vars[t.var].name);
    }
    out << ' ' << (row.name.empty() ? "c" + std::to_string(r) : row.name)
        << ':';
    WriteTerms(out, terms);
    out << ' ' << SenseText(row.sense) << ' ' << FormatNumber(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : vars) {
    if (v.lower == v.upper) {
      out << ' ' << v.name << " = " << FormatNumber(v.lower) << '\n';
    } else {
      out << ' ' << FormatNumber(v.lower) << " <= " << v.name
          << " <= " << FormatNumber(v.upper) << '\n';
    }
  }
  if (p.has_integers()) {
    out << "Generals\n";
    for (const Variable& v : vars) {
      if (v.integer) out << ' ' << v.name << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

namespace {

enum class Section { kNone, kObjective, kConstraints, kBounds, kGenerals,
                     kBinaries, kEnd };

struct Token {
  enum Kind { kName, kNumber, kSign, kSense, kColon } kind;
  std::string text;
  double value = 0.0;
};

[[noreturn]] void Fail(const std::string& what) {
  throw InvalidInput("LP format: " + what);
}

bool IsInfWord(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), ::tolower);
  return l == "inf" || l == "infinity";
}

std::vector<Token> Tokenize(std::string_view s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\\') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '+' || c == '-') {
      out.push_back({Token::kSign, std::string(1, c)});
      ++i;
    } else if (c == ':') {
      out.push_back({Token::kColon, ":"});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      ++i;
      if (i < s.size() && (s[i] == '=' || s[i] == '<' || s[i] == '>')) {
        op += s[i++];
      }
      if (op == "<" || op == "<=" || op == "=<") {
        op = "<=";
      } else if (op == ">" || op == ">=" || op == "=>") {
        op = ">=";
      } else if (op != "=") {
        Fail("bad operator " + op);
      }
      out.push_back({Token::kSense, op});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(s.substr(i, std::min<size_t>(64, s.size() - i)));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) Fail("bad number");
      out.push_back({Token::kNumber, rest.substr(0, end - rest.c_str()), v});
      i += end - rest.c_str();
    } else {
      const size_t start = i;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
             std::string_view("+-<>=:\\").find(s[i]) == std::string_view::npos) {
        ++i;
      }
      std::string word(s.substr(start, i - start));
      if (IsInfWord(word)) {
        out.push_back({Token::kNumber, word, kInf});
      } else {
        out.push_back({Token::kName, std::move(word)});
      }
    }
  }
  return out;
}

struct ParsedRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

class Cursor {
 public:
  explicit Cursor(std::vector<Token> t) : t_(std::move(t)) {}
  bool done() const { return pos_ >= t_.size(); }
  const Token& peek(size_t ahead = 0) const {
    if (pos_ + ahead >= t_.size()) Fail("unexpected end of section");
    return t_[pos_ + ahead];
  }
  bool has(size_t ahead) const { return pos_ + ahead < t_.size(); }
  Token next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  std::string Label() {
    if (has(1) && peek().kind == Token::kName &&
        peek(1).kind == Token::kColon) {
      std::string name = next().text;
      next();
      return name;
    }
    return {};
  }

  // Terms until a sense token or the end of input.
  std::vector<std::pair<std::string, double>> Expression() {
    std::vector<std::pair<std::string, double>> terms;
    while (!done() && peek().kind != Token::kSense) {
      double sign = 1.0;
      while (!done() && peek().kind == Token::kSign) {
        if (next().text == "-") sign = -sign;
      }
      double coef = 1.0;
      bool has_coef = false;
      if (!done() && peek().kind == Token::kNumber) {
        coef = next().value;
        has_coef = true;
      }
      if (!done() && peek().kind == Token::kName) {
        // A name followed by ':' starts the next row.
        if (has(1) && peek(1).kind == Token::kColon) {
          if (has_coef) Fail("dangling coefficient");
          break;
        }
        terms.emplace_back(next().text, sign * coef);
      } else if (has_coef) {
        if (coef != 0.0) Fail("constant terms are not supported");
      } else {
        Fail("expected a term");
      }
    }
    return terms;
  }

  double SignedNumber() {
    double sign = 1.0;
    while (peek().kind == Token::kSign) {
      if (next().text == "-") sign = -sign;
    }
    const Token t = next();
    if (t.kind != Token::kNumber) Fail("expected a number, got " + t.text);
    return sign * t.value;
  }

  bool AtNumber() const {
    size_t a = 0;
    while (has(a) && peek(a).kind == Token::kSign) ++a;
    return has(a) && peek(a).kind == Token::kNumber;
  }

 private:
  std::vector<Token> t_;
  size_t pos_ = 0;
};

RowSense ToSense(const std::string& s) {
  if (s == "<=") return RowSense::kLessEqual;
  if (s == ">=") return RowSense::kGreaterEqual;
  return RowSense::kEqual;
}

Section SectionOf(const std::string& line, bool* minimize) {
  std::string l;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (l == "maximize" || l == "maximise" || l == "maximum" || l == "max") {
    *minimize = false;
    return Section::kObjective;
  }
  if (l == "minimize" || l == "minimise" || l == "minimum" || l == "min") {
    *minimize = true;
    return Section::kObjective;
  }
  if (l == "subjectto" || l == "suchthat" || l == "st" || l == "s.t.") {
    return Section::kConstraints;
  }
  if (l == "bounds" || l == "bound") return Section::kBounds;
  if (l == "generals" || l == "general" || l == "gen" || l == "integers") {
    return Section::kGenerals;
  }
  if (l == "binaries" || l == "binary" || l == "bin") return Section::kBinaries;
  if (l == "end") return Section::kEnd;
  return Section::kNone;
}

VarTag TagOf(const std::string& name) {
  auto num = [](std::string_view s, int* out) {
    if (s.empty()) return false;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), *out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size();
  };
  if (name.size() < 3 || name[1] != '_') return {};
  const std::string_view rest = std::string_view(name).substr(2);
  int a = 0, b = 0;
  switch (name[0]) {
    case 'x':
      if (num(rest, &a)) return {VarKind::kX, a};
      break;
    case 'z':
      if (num(rest, &a)) return {VarKind::kZ, a};
      break;
    case 'q':
      if (num(rest, &a)) return {VarKind::kQ, a};
      break;
    case 'y': {
      const size_t u = rest.find('_');
      if (u != std::string_view::npos && num(rest.substr(0, u), &a) &&
          num(rest.substr(u + 1), &b)) {
        return {VarKind::kY, a, b};
      }
      break;
    }
    default:
      break;
  }
  return {};
}

}  // namespace

MathProgram ParseLpFormat(std::string_view text) {
  std::map<Section, std::string> body;
  Section current = Section::kNone;
  bool minimize = false;
  bool seen_objective = false;
  std::string name;
  bool first_line = true;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (first_line && line.rfind("\\ ", 0) == 0) name = line.substr(2);
    first_line = false;
    const Section s = SectionOf(line, &minimize);
    if (s == Section::kEnd) break;
    if (s != Section::kNone) {
      current = s;
      seen_objective = seen_objective || s == Section::kObjective;
      continue;
    }
    if (current == Section::kNone) {
      const bool blank = std::all_of(line.begin(), line.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c));
      });
      if (!blank && line[line.find_first_not_of(" \t")] != '\\') {
        Fail("text before the objective section");
      }
      continue;
    }
    body[current] += line;
    body[current] += '\n';
  }
  if (!seen_objective) Fail("missing objective section");

  std::vector<std::string> order;
  std::map<std::string, int> index;
  struct Info {
    double lower = 0.0, upper = kInf, objective = 0.0;
    bool integer = false;
  };
  std::vector<Info> info;
  auto var = [&](const std::string& n) {
    auto [it, fresh] = index.emplace(n, static_cast<int>(order.size()));
    if (fresh) {
      order.push_back(n);
      info.emplace_back();
    }
    return it->second;
  };

  // Bounds first so that their order fixes variable ids.
  {
    std::istringstream lines(body[Section::kBounds]);
    for (std::string line; std::getline(lines, line);) {
      Cursor c(Tokenize(line));
      if (c.done()) continue;
      if (c.AtNumber()) {
        const double lo = c.SignedNumber();
        const Token s1 = c.next();
        const Token v = c.next();
        if (s1.kind != Token::kSense || v.kind != Token::kName) {
          Fail("bad bound: " + line);
        }
        Info& f = info[var(v.text)];
        if (s1.text == "<=") {
          f.lower = lo;
        } else if (s1.text == ">=") {
          f.upper = lo;
        } else {
          f.lower = f.upper = lo;
        }
        if (!c.done()) {
          const Token s2 = c.next();
          if (s2.kind != Token::kSense || s2.text != s1.text) {
            Fail("bad bound: " + line);
          }
          const double hi = c.SignedNumber();
          if (s2.text == "<=") {
            f.upper = hi;
          } else {
            f.lower = hi;
          }
        }
      } else {
        const Token v = c.next();
        if (v.kind != Token::kName) Fail("bad bound: " + line);
        Info& f = info[var(v.text)];
        const Token s = c.next();
        if (s.kind == Token::kName) {
          std::string l = s.text;
          std::transform(l.begin(), l.end(), l.begin(), ::tolower);
          if (l != "free") Fail("bad bound: " + line);
          f.lower = -kInf;
          f.upper = kInf;
        } else if (s.kind == Token::kSense) {
          const double val = c.SignedNumber();
          if (s.text == "<=") {
            f.upper = val;
          } else if (s.text == ">=") {
            f.lower = val;
          } else {
            f.lower = f.upper = val;
          }
        } else {
          Fail("bad bound: " + line);
        }
      }
      if (!c.done()) Fail("trailing tokens in bound: " + line);
    }
  }

  {
    Cursor c(Tokenize(body[Section::kObjective]));
    if (!c.done()) {
      c.Label();
      for (const auto& [n, coef] : c.Expression()) {
        info[var(n)].objective += minimize ? -coef : coef;
      }
      if (!c.done()) Fail("unexpected tokens after the objective");
    }
  }

  std::vector<ParsedRow> rows;
  {
    Cursor c(Tokenize(body[Section::kConstraints]));
    while (!c.done()) {
      ParsedRow row;
      row.name = c.Label();
      if (row.name.empty()) row.name = "c" + std::to_string(rows.size());
      row.terms = c.Expression();
      const Token s = c.next();
      if (s.kind != Token::kSense) Fail("expected a comparison");
      row.sense = ToSense(s.text);
      row.rhs = c.SignedNumber();
      for (const auto& term : row.terms) var(term.first);
      rows.push_back(std::move(row));
    }
  }

  for (Section s : {Section::kGenerals, Section::kBinaries}) {
    Cursor c(Tokenize(body[s]));
    while (!c.done()) {
      const Token t = c.next();
      if (t.kind != Token::kName) Fail("expected a variable name");
      Info& f = info[var(t.text)];
      f.integer = true;
      if (s == Section::kBinaries) {
        f.lower = 0.0;
        f.upper = 1.0;
      }
    }
  }

  MathProgram p(name);
  for (size_t j = 0; j < order.size(); ++j) {
    const Info& f = info[j];
    p.AddVariable({.name = order[j],
                   .lower = f.lower,
                   .upper = f.upper,
                   .integer = f.integer,
                   .objective = f.objective,
                   .tag = TagOf(order[j])});
  }
  for (ParsedRow& r : rows) {
    Row row{.terms = {}, .sense = r.sense, .rhs = r.rhs, .name = std::move(r.name)};
    for (const auto& [n, coef] : r.terms) {
      row.terms.push_back({index.at(n), coef});
    }
    p.AddRow(std::move(row));
  }
  return p;
}

}  // namespace rankopt
