#include "kronq/cli.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "kronq/axioms.hpp"
#include "kronq/errors.hpp"
#include "kronq/matrix_io.hpp"
#include "kronq/partial_frobenius.hpp"
#include "kronq/quotients.hpp"

namespace kronq::cli {

namespace {

struct Options {
  std::string first;
  std::string second;
  std::string output;
  std::string scheme;
  std::string shape;

  std::string axiom;
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  std::size_t max_dim = 0;
  bool square = false;
  bool kron_rhs = false;
  bool json = false;
  std::string basis = "unit";
};

FactorShape parse_shape(const std::string& text) {
  std::size_t dims[4] = {};
  std::string_view rest = text;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t comma = rest.find(',');
    const std::string_view field = rest.substr(0, comma);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), dims[k]);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
      throw ParseError("--shape expects m,n,s,t, got '" + text + "'");
    }
    if ((k < 3) != (comma != std::string_view::npos)) {
      throw ParseError("--shape expects m,n,s,t, got '" + text + "'");
    }
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return FactorShape(dims[0], dims[1], dims[2], dims[3]);
}

QuotientScheme scheme_named(const std::string& name) {
  auto scheme = builtin_scheme(name);
  if (!scheme) throw ConfigurationError("unknown scheme '" + name + "'");
  return *scheme;
}

void emit(const Options& o, const Matrix& M, std::ostream& out) {
  if (o.output.empty()) {
    write_matrix(out, M);
  } else {
    write_matrix_file(o.output, M);
  }
}

int cmd_kron(const Options& o, std::ostream& out) {
  emit(o, kron(read_matrix_file(o.first), read_matrix_file(o.second)), out);
  return 0;
}

int cmd_pfp(const Options& o, std::ostream& out) {
  emit(o, pfp(read_matrix_file(o.first), read_matrix_file(o.second)), out);
  return 0;
}

int cmd_quot(const Options& o, std::ostream& out) {
  const QuotientScheme scheme = scheme_named(o.scheme);
  const FactorShape shape = parse_shape(o.shape);
  emit(o, left_quotient(scheme, read_matrix_file(o.first), read_matrix_file(o.second), shape),
       out);
  return 0;
}

int cmd_rquot(const Options& o, std::ostream& out) {
  const QuotientScheme scheme = scheme_named(o.scheme);
  const FactorShape shape = parse_shape(o.shape);
  emit(o, right_quotient(scheme, read_matrix_file(o.first), read_matrix_file(o.second), shape),
       out);
  return 0;
}

int cmd_rem(const Options& o, std::ostream& out) {
  const QuotientScheme scheme = scheme_named(o.scheme);
  const FactorShape shape = parse_shape(o.shape);
  const Matrix A = read_matrix_file(o.first);
  const Matrix M = read_matrix_file(o.second);
  const Matrix R = remainder(scheme, A, M, shape);
  const bool divides = is_divisor(scheme, A, M, shape);
  const std::string status = "divisor=" + std::string(divides ? "true" : "false") +
                             " residual=" + format_real(frobenius_norm(R));
  if (o.output.empty()) {
    write_matrix(out, R);
    out << "# " << status << '\n';
  } else {
    write_matrix_file(o.output, R);
    out << status << '\n';
  }
  return 0;
}

std::vector<Matrix> projection_basis(const std::string& name) {
  if (name == "unit") {
    return {Matrix::unit(2, 2, 1, 1), Matrix::unit(2, 2, 1, 2), Matrix::unit(2, 2, 2, 1),
            Matrix::unit(2, 2, 2, 2)};
  }
  if (name == "overlap") {
    return {Matrix::unit(2, 2, 1, 1), Matrix::unit(2, 2, 1, 2), Matrix::unit(2, 2, 2, 1),
            Matrix::identity(2)};
  }
  throw ConfigurationError("unknown basis '" + name + "' (expected unit or overlap)");
}

void print_report(const AxiomReport& r, bool json, std::ostream& out) {
  if (json) {
    out << to_json(r) << '\n';
  } else {
    out << to_text(r);
  }
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto axiom = parse_axiom(o.axiom);
  if (!axiom) throw ConfigurationError("unknown axiom '" + o.axiom + "'");

  CheckConfig config;
  config.trials = o.trials;
  config.seed = o.seed;
  config.rhs = o.kron_rhs ? RhsMode::kronecker : RhsMode::free;
  config.dims.max_dim = o.max_dim != 0 ? o.max_dim : (*axiom == Axiom::Q3 ? 3 : 4);
  config.dims.square = o.square || *axiom == Axiom::Q5 || *axiom == Axiom::Q5R ||
                       o.scheme == "trace";

  AxiomReport report;
  switch (*axiom) {
    case Axiom::WeightConditions:
      if (o.scheme == "leopardi") {
        report = check_weight_conditions(weights::leopardi, "W_L", config);
      } else if (o.scheme == "frobenius") {
        report = check_weight_conditions(weights::frobenius, "W_F", config);
      } else {
        throw ConfigurationError("Wcond applies to the weighted schemes leopardi and frobenius");
      }
      break;
    case Axiom::RealizationConditions: {
      const QuotientScheme scheme = scheme_named(o.scheme);
      report = check_realization_conditions(*scheme.realization(), config);
      break;
    }
    case Axiom::Projection: {
      const std::vector<Matrix> basis = projection_basis(o.basis);
      CheckConfig proj = config;
      proj.dims.max_dim = o.max_dim != 0 ? o.max_dim : 3;
      proj.dims.square = true;
      report = check_projection(basis, scheme_named(o.scheme), proj);
      break;
    }
    case Axiom::TraceVersusQ3:
      throw ConfigurationError("TR-Q3 is reported by the demo subcommand");
    default:
      report = check_axiom(*axiom, scheme_named(o.scheme), config);
      break;
  }
  print_report(report, o.json, out);
  return report.verdict == Verdict::holds ? 0 : 1;
}

int cmd_demo(const Options& o, std::ostream& out) {
  const std::vector<AxiomReport> reports = demo_counterexamples();
  if (o.json) {
    out << "[\n";
    for (std::size_t k = 0; k < reports.size(); ++k) {
      out << to_json(reports[k]) << (k + 1 < reports.size() ? ",\n" : "\n");
    }
    out << "]\n";
  } else {
    for (std::size_t k = 0; k < reports.size(); ++k) {
      if (k > 0) out << '\n';
      out << to_text(reports[k]);
    }
  }
  return 0;
}

std::string first_line(const std::string& text) {
  const std::size_t nl = text.find('\n');
  return nl == std::string::npos ? text : text.substr(0, nl);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kronecker products and quotients", "kronq"};
  app.require_subcommand(1);
  Options o;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "output matrix file (default: stdout)");
  };
  auto add_quotient_options = [&](CLI::App* sub) {
    sub->add_option("--scheme", o.scheme, "leopardi | frobenius | operator | trace")->required();
    sub->add_option("--shape", o.shape, "m,n,s,t")->required();
  };

  CLI::App* kron_cmd = app.add_subcommand("kron", "Kronecker product A ⊗ B");
  kron_cmd->add_option("A", o.first)->required();
  kron_cmd->add_option("B", o.second)->required();
  add_output(kron_cmd);

  CLI::App* quot_cmd = app.add_subcommand("quot", "left quotient A ⊘ M");
  add_quotient_options(quot_cmd);
  quot_cmd->add_option("A", o.first)->required();
  quot_cmd->add_option("M", o.second)->required();
  add_output(quot_cmd);

  CLI::App* rquot_cmd = app.add_subcommand("rquot", "right quotient M ⊘ B");
  add_quotient_options(rquot_cmd);
  rquot_cmd->add_option("M", o.first)->required();
  rquot_cmd->add_option("B", o.second)->required();
  add_output(rquot_cmd);

  CLI::App* rem_cmd = app.add_subcommand("rem", "remainder M - A ⊗ (A ⊘ M)");
  add_quotient_options(rem_cmd);
  rem_cmd->add_option("A", o.first)->required();
  rem_cmd->add_option("M", o.second)->required();
  add_output(rem_cmd);

  CLI::App* pfp_cmd = app.add_subcommand("pfp", "partial Frobenius product");
  pfp_cmd->add_option("A", o.first)->required();
  pfp_cmd->add_option("M", o.second)->required();
  add_output(pfp_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "randomized axiom check");
  check_cmd->add_option("--axiom", o.axiom, "Q1 | Q2a | Q2b | Q3 | Q4 | Q5 | Q5R | Wcond | Rcond | Proj")
      ->required();
  check_cmd->add_option("--scheme", o.scheme, "leopardi | frobenius | operator | trace")
      ->required();
  check_cmd->add_option("--trials", o.trials)->capture_default_str();
  check_cmd->add_option("--seed", o.seed)->capture_default_str();
  check_cmd->add_option("--max-dim", o.max_dim, "largest drawn dimension (1..6)");
  check_cmd->add_flag("--square", o.square, "draw square divisors");
  check_cmd->add_flag("--kron-rhs", o.kron_rhs, "draw M as a Kronecker product");
  check_cmd->add_option("--basis", o.basis, "unit | overlap (Proj only)")->capture_default_str();
  check_cmd->add_flag("--json", o.json);

  CLI::App* demo_cmd = app.add_subcommand("demo", "print the impossibility witnesses");
  demo_cmd->add_flag("--json", o.json);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("kronq");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "kronq: " << first_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (kron_cmd->parsed()) return cmd_kron(o, out);
    if (quot_cmd->parsed()) return cmd_quot(o, out);
    if (rquot_cmd->parsed()) return cmd_rquot(o, out);
    if (rem_cmd->parsed()) return cmd_rem(o, out);
    if (pfp_cmd->parsed()) return cmd_pfp(o, out);
    if (check_cmd->parsed()) return cmd_check(o, out);
    if (demo_cmd->parsed()) return cmd_demo(o, out);
  } catch (const ConvergenceError& e) {
    err << "kronq: " << first_line(e.what()) << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "kronq: " << first_line(e.what()) << '\n';
    return 2;
  }
  err << "kronq: no subcommand\n";
  return 2;
}

}  // namespace kronq::cli
