#ifndef TORFLAT_REPORT_HPP
#define TORFLAT_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jacobian.hpp"
#include "text.hpp"
#include "toric.hpp"
#include "unfolding.hpp"
#include "verify.hpp"

namespace torflat {

inline constexpr std::string_view tool_version = "1.0.0";

inline std::string render_provenance(const CayleyRing &R) {
  std::ostringstream o;
  const std::int64_t n = static_cast<std::int64_t>(R.n()), k = static_cast<std::int64_t>(R.k());
  o << "[provenance]\n";
  o << "tool = torflat " << tool_version << '\n';
  o << "monomial_order = grevlex (higher total degree first, then smaller exponent in the last differing variable; variables y1..yk, x1..xr)\n";
  o << "basis_rule = standard monomials: non-pivot columns of the echelonized ideal piece\n";
  o << "lambda_rule = basic solution on the leftmost independent unknowns; unknowns ordered weight-w basis, x-partial generators, y-partial generators\n";
  o << "table_convention = tables keyed by sorted multi-index, shown as t-monomials; Gamma coefficient = u / prod(k!)\n";
  Rational c(-(n + k + 1), 2);
  c.canonicalize();
  o << "primitive_form_type = (" << to_string(c) << ", " << (2 - n + k) << ")\n";
  return o.str();
}

inline std::string render_grading(const CayleyRing &R) {
  std::ostringstream o;
  o << "[grading]\n";
  o << "r = " << R.r() << '\n';
  o << "n = " << R.n() << '\n';
  o << "k = " << R.k() << '\n';
  o << "charge_rank = " << R.charge_rank() << '\n';
  for (std::size_t i = 0; i < R.nvars(); ++i)
    o << "deg[" << R.names().names[i] << "] = " << render_degree(R.degree_of(i)) << '\n';
  o << "c_B = " << render_charge(R.background_charge()) << '\n';
  o << "calabi_yau = " << (is_calabi_yau(R) ? "yes" : "no") << '\n';
  return o.str();
}

inline std::string render_basis(const JacobianBasis &B, const CayleyRing &R) {
  std::ostringstream o;
  o << "[basis]\n";
  o << "charge = " << render_charge(B.charge) << '\n';
  o << "dims =";
  for (auto d : B.dims_by_weight())
    o << ' ' << d;
  o << '\n';
  for (std::size_t a = 0; a < B.size(); ++a)
    o << "u[t" << a << "] = " << R.render(B.elements[a]) << " ; wt(u) = " << B.weights[a]
      << " ; wt(t) = " << 1 - B.weights[a] << '\n';
  return o.str();
}

inline std::string render_a_entry(const std::map<std::size_t, Rational> &a) {
  std::string s = "{";
  bool first = true;
  for (const auto &[rho, c] : a) {
    if (!first)
      s += ", ";
    first = false;
    s += std::to_string(rho) + ": " + to_string(c);
  }
  return s + "}";
}

inline std::string render_unfolding(const UnfoldingState &s) {
  std::ostringstream o;
  const auto &R = s.ring();
  o << "[unfolding]\n";
  o << "order = " << s.order() << '\n';
  o << "truncation = Gamma to t-degree " << s.order() << "; A and Lambda to t-degree "
    << static_cast<std::int64_t>(s.order()) - 2 << '\n';
  for (std::size_t size = 2; size <= s.order(); ++size)
    for (const auto &m : multi_indices(s.dim(), size)) {
      const std::string key = "[" + render_t_monomial(t_monomial(m, s.dim())) + "]";
      o << "u" << key << " = " << R.render(s.u(m)) << '\n';
      auto it = s.a_table().find(m);
      o << "a" << key << " = " << render_a_entry(it == s.a_table().end() ? std::map<std::size_t, Rational>{} : it->second) << '\n';
      o << "lambda" << key << " = " << render(s.lambda(m), R.names()) << '\n';
    }
  return o.str();
}

inline std::string render_verification(const VerificationReport &rep) {
  std::ostringstream o;
  o << "[verification]\n";
  for (const auto &c : rep.checks) {
    o << c.name << " = " << (c.passed ? "pass" : "FAIL") << " (" << c.scope << ")";
    if (!c.passed)
      o << ": " << c.failure;
    o << '\n';
  }
  o << "overall = " << (rep.passed() ? "pass" : "FAIL") << '\n';
  return o.str();
}

inline std::string render_report(const UnfoldingState &s, const VerificationReport &rep) {
  return render_provenance(s.ring()) + '\n' + render_grading(s.ring()) + '\n' +
         render_basis(s.basis(), s.ring()) + '\n' + render_unfolding(s) + '\n' +
         render_verification(rep);
}

/// Tables read back from a report's [basis] and [unfolding] sections.
struct ReportTables {
  std::size_t order = 0;
  std::vector<std::int64_t> basis_weights;
  std::map<MultiIndex, Poly> u;
  std::map<MultiIndex, std::map<std::size_t, Rational>> a;
  std::map<MultiIndex, SuperElement> lambda;
};

namespace detail {

inline MultiIndex parse_t_key(std::string_view key) {
  std::vector<std::size_t> idx;
  if (key == "1")
    return MultiIndex{};
  std::size_t pos = 0;
  while (pos <= key.size()) {
    std::size_t end = key.find('*', pos);
    if (end == std::string_view::npos)
      end = key.size();
    std::string_view f = key.substr(pos, end - pos);
    if (f.size() < 2 || f[0] != 't')
      throw std::invalid_argument("bad t-monomial '" + std::string(key) + "'");
    std::size_t caret = f.find('^');
    std::size_t a = std::stoul(std::string(f.substr(1, caret - 1)));
    std::size_t e = caret == std::string_view::npos ? 1 : std::stoul(std::string(f.substr(caret + 1)));
    idx.insert(idx.end(), e, a);
    pos = end + 1;
  }
  return MultiIndex(std::move(idx));
}

inline std::map<std::size_t, Rational> parse_a_entry(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw std::invalid_argument("bad structure-constant entry '" + std::string(s) + "'");
  s = s.substr(1, s.size() - 2);
  std::map<std::size_t, Rational> out;
  std::size_t pos = 0;
  while (!trim(s.substr(pos)).empty()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string_view::npos)
      end = s.size();
    std::string_view item = s.substr(pos, end - pos);
    std::size_t colon = item.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("bad structure-constant item '" + std::string(item) + "'");
    out[std::stoul(std::string(trim(item.substr(0, colon))))] =
        parse_rational(trim(item.substr(colon + 1)));
    pos = end + 1;
    if (pos > s.size())
      break;
  }
  return out;
}

} // namespace detail

inline ReportTables parse_report_tables(std::string_view text, const VariableNames &names) {
  ReportTables t;
  std::istringstream in{std::string(text)};
  std::string line, section;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    if (line.front() == '[') {
      section = line;
      continue;
    }
    if (section != "[basis]" && section != "[unfolding]")
      continue;
    std::size_t eq = line.find(" = ");
    if (eq == std::string::npos)
      continue;
    std::string lhs = line.substr(0, eq), rhs = line.substr(eq + 3);
    if (lhs == "order") {
      t.order = std::stoul(rhs);
      continue;
    }
    std::size_t br = lhs.find('[');
    if (br == std::string::npos || lhs.back() != ']')
      continue;
    std::string kind = lhs.substr(0, br);
    MultiIndex key = detail::parse_t_key(std::string_view(lhs).substr(br + 1, lhs.size() - br - 2));
    if (kind == "u" && section == "[basis]") {
      std::size_t semi = rhs.find(" ; ");
      t.u[key] = parse_poly(rhs.substr(0, semi), names);
      std::size_t w = rhs.find("wt(u) = ");
      t.basis_weights.push_back(std::stoll(rhs.substr(w + 8)));
    } else if (kind == "u") {
      t.u[key] = parse_poly(rhs, names);
    } else if (kind == "a") {
      t.a[key] = detail::parse_a_entry(rhs);
    } else if (kind == "lambda") {
      t.lambda.insert_or_assign(key, parse_super(rhs, names));
    }
  }
  return t;
}

} // namespace torflat

#endif // TORFLAT_REPORT_HPP
