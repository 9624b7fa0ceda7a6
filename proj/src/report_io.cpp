#include <charconv>
#include <sstream>
#include <string>

#include "json.hpp"

#include "kronq/axioms.hpp"
#include "kronq/matrix_io.hpp"

namespace kronq {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string one_line(const Matrix& M) {
  std::string text = format_matrix(M);
  if (!text.empty() && text.back() == '\n') text.pop_back();
  for (char& ch : text) {
    if (ch == '\n') ch = ';';
  }
  return text;
}

Matrix from_one_line(std::string text) {
  for (char& ch : text) {
    if (ch == ';') ch = '\n';
  }
  return parse_matrix(text);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid number '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid integer '" + std::string(text) + "'");
  }
  return value;
}

Verdict parse_verdict(std::string_view text) {
  if (text == "holds") return Verdict::holds;
  if (text == "fails") return Verdict::fails;
  throw ParseError("invalid verdict '" + std::string(text) + "'");
}

bool parse_bool(std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ParseError("invalid boolean '" + std::string(text) + "'");
}

Axiom parse_axiom_or_throw(std::string_view text) {
  auto axiom = parse_axiom(text);
  if (!axiom) throw ParseError("unknown axiom '" + std::string(text) + "'");
  return *axiom;
}

Counterexample& ensure_counterexample(AxiomReport& r) {
  if (!r.counterexample) r.counterexample.emplace();
  return *r.counterexample;
}

}  // namespace

std::string to_text(const AxiomReport& r) {
  std::ostringstream out;
  out << "axiom=" << axiom_name(r.axiom) << '\n';
  out << "scheme=" << r.scheme << '\n';
  out << "trials=" << r.trials << '\n';
  out << "seed=" << r.seed << '\n';
  out << "max_residual=" << format_real(r.max_residual) << '\n';
  out << "verdict=" << verdict_name(r.verdict) << '\n';
  for (const SubCheck& c : r.checks) {
    out << "check." << c.name << '=' << format_real(c.max_residual) << ' '
        << verdict_name(c.verdict) << '\n';
  }
  if (r.iff_consistent) out << "iff_consistent=" << (*r.iff_consistent ? "true" : "false") << '\n';
  for (const std::string& note : r.notes) out << "note=" << note << '\n';
  if (r.counterexample) {
    const Counterexample& ce = *r.counterexample;
    out << "counterexample.check=" << ce.check << '\n';
    for (const auto& [name, M] : ce.matrices) {
      out << "counterexample.matrix." << name << '=' << one_line(M) << '\n';
    }
    for (const auto& [name, k] : ce.scalars) {
      out << "counterexample.scalar." << name << '=' << format_complex(k) << '\n';
    }
  }
  return out.str();
}

AxiomReport report_from_text(std::string_view text) {
  AxiomReport r;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "axiom") {
      r.axiom = parse_axiom_or_throw(value);
    } else if (key == "scheme") {
      r.scheme = value;
    } else if (key == "trials") {
      r.trials = parse_unsigned(value);
    } else if (key == "seed") {
      r.seed = parse_unsigned(value);
    } else if (key == "max_residual") {
      r.max_residual = parse_double(value);
    } else if (key == "verdict") {
      r.verdict = parse_verdict(value);
    } else if (key.starts_with("check.")) {
      const std::size_t space = value.find(' ');
      if (space == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected '<residual> <verdict>'");
      }
      r.checks.push_back(SubCheck{key.substr(6), parse_double(value.substr(0, space)),
                                  parse_verdict(value.substr(space + 1))});
    } else if (key == "iff_consistent") {
      r.iff_consistent = parse_bool(value);
    } else if (key == "note") {
      r.notes.push_back(value);
    } else if (key == "counterexample.check") {
      ensure_counterexample(r).check = value;
    } else if (key.starts_with("counterexample.matrix.")) {
      ensure_counterexample(r).matrices.emplace_back(key.substr(22), from_one_line(value));
    } else if (key.starts_with("counterexample.scalar.")) {
      ensure_counterexample(r).scalars.emplace_back(key.substr(22), parse_complex(value));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return r;
}

std::string to_json(const AxiomReport& r) {
  ordered_json j;
  j["axiom"] = std::string(axiom_name(r.axiom));
  j["scheme"] = r.scheme;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["max_residual"] = r.max_residual;
  j["verdict"] = std::string(verdict_name(r.verdict));
  j["checks"] = ordered_json::array();
  for (const SubCheck& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"max_residual", c.max_residual},
                           {"verdict", std::string(verdict_name(c.verdict))}});
  }
  if (r.iff_consistent) j["iff_consistent"] = *r.iff_consistent;
  j["notes"] = r.notes;
  if (r.counterexample) {
    const Counterexample& ce = *r.counterexample;
    ordered_json c;
    c["check"] = ce.check;
    c["matrices"] = ordered_json::object();
    for (const auto& [name, M] : ce.matrices) c["matrices"][name] = format_matrix(M);
    c["scalars"] = ordered_json::object();
    for (const auto& [name, k] : ce.scalars) c["scalars"][name] = format_complex(k);
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  return j.dump(2);
}

AxiomReport report_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
  try {
    AxiomReport r;
    r.axiom = parse_axiom_or_throw(j.at("axiom").get<std::string>());
    r.scheme = j.at("scheme").get<std::string>();
    r.trials = j.at("trials").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.max_residual = j.at("max_residual").get<double>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    for (const auto& c : j.value("checks", ordered_json::array())) {
      r.checks.push_back(SubCheck{c.at("name").get<std::string>(),
                                  c.at("max_residual").get<double>(),
                                  parse_verdict(c.at("verdict").get<std::string>())});
    }
    if (j.contains("iff_consistent")) r.iff_consistent = j.at("iff_consistent").get<bool>();
    for (const auto& note : j.value("notes", ordered_json::array())) {
      r.notes.push_back(note.get<std::string>());
    }
    if (j.contains("counterexample") && !j.at("counterexample").is_null()) {
      const auto& c = j.at("counterexample");
      Counterexample ce;
      ce.check = c.at("check").get<std::string>();
      for (const auto& [name, m] : c.at("matrices").items()) {
        ce.matrices.emplace_back(name, parse_matrix(m.get<std::string>()));
      }
      for (const auto& [name, k] : c.at("scalars").items()) {
        ce.scalars.emplace_back(name, parse_complex(k.get<std::string>()));
      }
      r.counterexample = std::move(ce);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace kronq
