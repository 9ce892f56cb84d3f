#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "socpart/errors.hpp"
#include "socpart/io.hpp"

namespace socpart {

namespace {

struct Token {
  std::string_view text;
  int column = 0;
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

enum class Section { kNone, kCones, kA, kB, kC, kCbar, kDomain };

Section keyword(std::string_view t) {
  if (t == "CONES") return Section::kCones;
  if (t == "A") return Section::kA;
  if (t == "b") return Section::kB;
  if (t == "c") return Section::kC;
  if (t == "cbar") return Section::kCbar;
  if (t == "DOMAIN") return Section::kDomain;
  return Section::kNone;
}

double parse_number(const Token& tok, int line, bool allow_inf) {
  std::string_view t = tok.text;
  if (t == "inf" || t == "+inf" || t == "-inf") {
    if (!allow_inf) throw ParseError(line, tok.column, "infinite value outside DOMAIN");
    return t[0] == '-' ? -INFINITY : INFINITY;
  }
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  double v = 0;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw ParseError(line, tok.column, "expected a number, got '" + std::string(t) + "'");
  if (std::isnan(v)) throw ParseError(line, tok.column, "NaN is not allowed");
  if (std::isinf(v) && !allow_inf) throw ParseError(line, tok.column, "infinite value outside DOMAIN");
  return v;
}

}  // namespace

std::string format_shortest(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

ParametricInstance parse_instance(std::string_view text) {
  Section cur = Section::kNone;
  std::string name;
  std::vector<int> dims;
  std::vector<std::vector<double>> rows;
  std::vector<double> b, c, cbar, domain;
  bool seen[7] = {false, false, false, false, false, false, false};

  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split(line);
    if (toks.empty()) {
      if (nl == text.size()) break;
      continue;
    }

    if (toks[0].text == "NAME") {
      if (toks.size() != 2) throw ParseError(lineno, toks[0].column, "NAME takes exactly one word");
      name = std::string(toks[1].text);
      continue;
    }
    if (Section k = keyword(toks[0].text); k != Section::kNone) {
      if (seen[static_cast<int>(k)])
        throw ParseError(lineno, toks[0].column, "duplicate section '" + std::string(toks[0].text) + "'");
      seen[static_cast<int>(k)] = true;
      cur = k;
      toks.erase(toks.begin());
      if (toks.empty()) continue;
    }

    switch (cur) {
      case Section::kNone:
        throw ParseError(lineno, toks[0].column, "data before any section keyword");
      case Section::kCones:
        for (const auto& t : toks) {
          int v = 0;
          auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
          if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v < 1)
            throw ParseError(lineno, t.column, "cone dimensions must be positive integers");
          dims.push_back(v);
        }
        break;
      case Section::kA: {
        std::vector<double> row;
        for (const auto& t : toks) row.push_back(parse_number(t, lineno, false));
        if (!rows.empty() && row.size() != rows.front().size())
          throw ParseError(lineno, toks.front().column, "row of A has " + std::to_string(row.size()) +
                                                             " entries, expected " +
                                                             std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
        break;
      }
      case Section::kB:
        for (const auto& t : toks) b.push_back(parse_number(t, lineno, false));
        break;
      case Section::kC:
        for (const auto& t : toks) c.push_back(parse_number(t, lineno, false));
        break;
      case Section::kCbar:
        for (const auto& t : toks) cbar.push_back(parse_number(t, lineno, false));
        break;
      case Section::kDomain:
        for (const auto& t : toks) domain.push_back(parse_number(t, lineno, true));
        if (domain.size() > 2) throw ParseError(lineno, toks.back().column, "DOMAIN takes two values");
        break;
    }
    if (nl == text.size()) break;
  }

  if (dims.empty()) throw ParseError(lineno, 1, "missing or empty CONES section");
  for (Section s : {Section::kA, Section::kB, Section::kC, Section::kCbar})
    if (!seen[static_cast<int>(s)]) {
      static const char* names[] = {"", "CONES", "A", "b", "c", "cbar", "DOMAIN"};
      throw ParseError(lineno, 1, std::string("missing section '") + names[static_cast<int>(s)] + "'");
    }

  ParametricInstance inst;
  inst.name = name;
  inst.structure = ConeStructure(dims);
  const int n = inst.structure.total_dim();
  const int m = static_cast<int>(rows.size());
  if (m > 0 && static_cast<int>(rows.front().size()) != n)
    throw Error(ErrorCode::kDimensionMismatch, "A has " + std::to_string(rows.front().size()) +
                                                   " columns but the cones have total dimension " +
                                                   std::to_string(n));
  inst.A.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) inst.A(i, j) = rows[i][j];
  auto to_vec = [](const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())).eval();
  };
  inst.b = to_vec(b);
  inst.c = to_vec(c);
  inst.cbar = to_vec(cbar);
  if (static_cast<int>(b.size()) != m)
    throw Error(ErrorCode::kDimensionMismatch, "b has " + std::to_string(b.size()) + " entries, A has " +
                                                   std::to_string(m) + " rows");
  if (static_cast<int>(c.size()) != n) throw Error(ErrorCode::kDimensionMismatch, "c length differs from cone dimension");
  if (static_cast<int>(cbar.size()) != n)
    throw Error(ErrorCode::kDimensionMismatch, "cbar length differs from cone dimension");
  if (seen[static_cast<int>(Section::kDomain)]) {
    if (domain.size() != 2) throw Error(ErrorCode::kParseError, "DOMAIN takes two values");
    inst.domain = DomainBounds{domain[0], domain[1]};
  }
  inst.validate();
  return inst;
}

std::string write_instance(const ParametricInstance& inst) {
  std::ostringstream out;
  auto row = [&](const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_shortest(v(i));
    out << '\n';
  };
  if (!inst.name.empty()) out << "NAME " << inst.name << '\n';
  out << "CONES\n";
  for (int i = 0; i < inst.structure.num_blocks(); ++i) out << (i ? " " : "") << inst.structure.dim(i);
  out << "\nA\n";
  for (int i = 0; i < inst.m(); ++i) row(inst.A.row(i).transpose());
  out << "b\n";
  row(inst.b);
  out << "c\n";
  row(inst.c);
  out << "cbar\n";
  row(inst.cbar);
  if (inst.domain) out << "DOMAIN " << format_shortest(inst.domain->lo) << ' ' << format_shortest(inst.domain->hi) << '\n';
  return out.str();
}

ParametricInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace socpart
